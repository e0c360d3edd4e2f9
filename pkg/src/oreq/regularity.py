"""Left/right regularity in the integro-differential operator algebra.

An operator a is *left regular* when right multiplication by a is injective,
which (because the factor by the matrix-unit ideal F is a domain) happens
exactly when the right action of a on the dual polynomial module P' = Q[v]
(basis v_0, v_1, ... with v_k*D = v_{k+1}, v_k*I = v_{k-1}, v_0*I = 0,
v_k*H = (k+1) v_k, v_k*e[i,j] = delta_ki v_j) has zero kernel.

Every element outside F with a D or constant component factors exactly as
D^m * gamma where gamma has no D-part and a nonzero H-polynomial a_0
(peeling uses D^m I^m = 1).  For such gamma, the kernel of the right action
is finite dimensional and confined to a slice v_0..v_B computable from the
natural roots of a_0(H+1) and the size of the F-component; the *regularity
degree* d(gamma) is the least i with kernel ∩ span(v_i, v_{i+1}, ...) = 0,
and D^m * gamma is left regular iff m >= d(gamma).  Right regularity is left
regularity of the starred element.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import Falsification, InputError
from .exact import PolyH, natural_roots, nullspace, poly_lcm, POLY_ONE
from .i1 import I1Element, ZERO, d_power, int_power, lift
from .skewpoly import SkewLaurentRF, lclm_gcrd
from .exact import RatFuncH

PPrimeVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class InF:
    """The element lies in the matrix-unit ideal; never left regular."""

    element: I1Element


@dataclass(frozen=True)
class PureIntegral:
    """Nonzero I-part only (plus F); maps each slice strictly down, so the
    right-action kernel is nonzero and the element is never left regular."""

    element: I1Element


@dataclass(frozen=True)
class GammaForm:
    """Exact factorization a = D^m * gamma with gamma = a_0 + sum I^i a_i + f,
    a_0 != 0, together with the kernel data that decides regularity."""

    m: int
    gamma: I1Element
    leading: PolyH            # a_0
    size: int                 # least bound on F indices, -1 if none
    roots: frozenset[int]     # { i in N : a_0(i+1) == 0 }
    r: int | None             # max root above the size, None if there is none
    d: int                    # regularity degree of gamma

    @property
    def bound(self) -> int:
        """Kernel of the right action of gamma lives in span(v_0..v_bound)."""
        return self.r if self.r is not None else self.size


@dataclass(frozen=True)
class RegularityVerdict:
    side: str                      # "left" | "right"
    regular: bool
    reason: str                    # "Regular" | "InF" | "PureIntegral" | "DegreeShortfall"
    decomposition: GammaForm | None = None
    kernel_witness: PPrimeVector | None = None


def _require_gamma(gamma: I1Element) -> None:
    if gamma.dpart:
        raise InputError("not a Gamma element: it has a D component")
    if gamma.zpart.is_zero:
        raise InputError("not a Gamma element: constant H-polynomial part is zero")


def _gamma_stats(gamma: I1Element):
    leading = gamma.zpart
    size = gamma.fpart_size
    roots = natural_roots(leading)
    above = {i for i in roots if i > size}
    r = max(above) if above else None
    return leading, size, roots, r


def pprime_apply(w: PPrimeVector, a: I1Element) -> dict[int, Fraction]:
    """Right action of a on the vector w = sum w_k v_k, as index -> coordinate.

    Valid for arbitrary a (the D component raises indices)."""
    out: dict[int, Fraction] = {}

    def put(k: int, c: Fraction) -> None:
        if c:
            out[k] = out.get(k, Fraction(0)) + c
            if not out[k]:
                del out[k]

    for k, wk in enumerate(w):
        if wk == 0:
            continue
        for i, p in a.dpart:
            put(k + i, wk * p(k + 1))
        if not a.zpart.is_zero:
            put(k, wk * a.zpart(k + 1))
        for i, q in a.ipart:
            if k >= i:
                put(k - i, wk * q(k - i + 1))
        for i, j, lam in a.fpart:
            if i == k:
                put(j, wk * lam)
    return out


def kernel_basis(gamma: I1Element) -> list[PPrimeVector]:
    """Exact basis of the right-action kernel of gamma (a Gamma element).

    Computed on the invariant slice v_0..v_{B+1} where B is the kernel
    confinement bound; vectors are returned in slice coordinates.
    """
    _require_gamma(gamma)
    _, size, _, r = _gamma_stats(gamma)
    bound = r if r is not None else size
    n_max = max(bound + 1, 0)
    rows = gamma.pprime_matrix(n_max)
    transposed = [[rows[k][j] for k in range(len(rows))] for j in range(len(rows))]
    return nullspace(transposed)


def _degree_from_basis(basis: list[PPrimeVector]) -> int:
    """Least i with (span of basis) ∩ span(v_i, v_{i+1}, ...) = 0."""
    k = len(basis)
    if k == 0:
        return 0
    width = len(basis[0])
    for i in range(width + 1):
        prefix = [[basis[t][j] for t in range(k)] for j in range(i)]
        if i == 0:
            continue  # the full kernel is nonzero
        if not nullspace(prefix):
            return i
    raise Falsification("kernel basis not linearly independent")


def _tail_combination(basis: list[PPrimeVector], m: int) -> PPrimeVector | None:
    """A nonzero kernel vector supported on v_m, v_{m+1}, ... if one exists,
    returned with the leading m zero coordinates dropped."""
    k = len(basis)
    if k == 0:
        return None
    if m == 0:
        return basis[0]
    prefix = [[basis[t][j] for t in range(k)] for j in range(m)]
    combos = nullspace(prefix)
    if not combos:
        return None
    c = combos[0]
    width = len(basis[0])
    u = tuple(
        sum((c[t] * basis[t][j] for t in range(k)), Fraction(0)) for j in range(width)
    )
    if any(u[j] != 0 for j in range(min(m, width))):
        raise Falsification("tail combination has support below the cut")
    return u[m:]


def regularity_degree(gamma: I1Element) -> int:
    """The least i such that D^i * gamma is left regular, from the kernel."""
    _require_gamma(gamma)
    basis = kernel_basis(gamma)
    d = _degree_from_basis(basis)
    _, size, _, r = _gamma_stats(gamma)
    bound = r if r is not None else size
    if d > bound + 1:
        raise Falsification("regularity degree exceeded its proven bound")
    return d


def gamma_decompose(a: I1Element) -> InF | PureIntegral | GammaForm:
    """Classify a as InF, PureIntegral, or peel the maximal D power."""
    if a.is_in_f:
        return InF(a)
    if not a.dpart and a.zpart.is_zero:
        return PureIntegral(a)
    m = a.dpart_max
    gamma = int_power(m) * a if m else a
    if gamma.dpart or gamma.zpart.is_zero:
        raise Falsification("peeled element is not in Gamma")
    if m and d_power(m) * gamma != a:
        raise Falsification("D-power peeling failed to reproduce the element")
    leading, size, roots, r = _gamma_stats(gamma)
    d = regularity_degree(gamma)
    return GammaForm(m=m, gamma=gamma, leading=leading, size=size, roots=roots, r=r, d=d)


def _verify_witness(w: PPrimeVector, a: I1Element) -> PPrimeVector:
    if all(c == 0 for c in w):
        raise Falsification("zero kernel witness")
    if pprime_apply(w, a):
        raise Falsification("kernel witness does not annihilate the element")
    return w


def regularity(a: I1Element, side: str = "left") -> RegularityVerdict:
    """Classify a as left/right regular with decomposition and, when not
    regular, an exact kernel witness w (w * a = 0 under the right action)."""
    if side == "right":
        verdict = regularity(a.star(), "left")
        return replace(verdict, side="right")
    if side != "left":
        raise InputError(f"unknown side {side!r}")

    decomp = gamma_decompose(a)
    if isinstance(decomp, InF):
        w = tuple([Fraction(0)] * (a.fpart_max_row + 1) + [Fraction(1)])
        return RegularityVerdict("left", False, "InF", None, _verify_witness(w, a))
    if isinstance(decomp, PureIntegral):
        n_max = a.fpart_size + 1
        rows = a.pprime_matrix(n_max)
        transposed = [[rows[k][j] for k in range(len(rows))] for j in range(len(rows))]
        basis = nullspace(transposed)
        if not basis:
            raise Falsification("pure-integral element with trivial slice kernel")
        return RegularityVerdict(
            "left", False, "PureIntegral", None, _verify_witness(basis[0], a)
        )

    if decomp.m >= decomp.d:
        return RegularityVerdict("left", True, "Regular", decomp, None)
    w = _tail_combination(kernel_basis(decomp.gamma), decomp.m)
    if w is None:
        raise Falsification("degree shortfall without a kernel witness")
    return RegularityVerdict(
        "left", False, "DegreeShortfall", decomp, _verify_witness(w, a)
    )


def regularize(a: I1Element) -> int:
    """The least i with D^i * a left regular; defined for a outside F."""
    if a.is_in_f:
        raise InputError("elements of the ideal F are annihilated by every D power")
    if a.dpart or not a.zpart.is_zero:
        head = 0
        b = a
    else:
        head = min(i for i, _ in a.ipart)
        b = d_power(head) * a
    form = gamma_decompose(b)
    if not isinstance(form, GammaForm):
        raise Falsification("regularize: expected a Gamma decomposition")
    need = head + max(0, form.d - form.m)
    cap = a.ipart_max + a.fpart_max_row + 1 + form.d + 8
    if need > cap:
        raise Falsification(f"regularize exceeded its termination cap {cap}")
    if not regularity(d_power(need) * a).regular:
        raise Falsification("regularize postcondition failed")
    return need


def ass_f_witness(f: I1Element) -> I1Element:
    """A left-regular c with c * f = 0, for nonzero f in F.

    D^(max row + 1) works because D lowers matrix-unit rows off the bottom.
    """
    if not f.is_in_f:
        raise InputError("witness is defined only for elements of F")
    if f.is_zero:
        raise InputError("witness is defined only for nonzero elements")
    c = d_power(f.fpart_max_row + 1)
    if not (c * f).is_zero:
        raise Falsification("annihilation witness failed")
    return c


def ore_solve(c: I1Element, r: I1Element) -> tuple[I1Element, I1Element]:
    """Solve the left Ore condition: c' * r = r' * c with c' left regular.

    Solves r * c^-1 = s^-1 * w in the quotient division ring (common left
    multiple of the projections), lifts the cofactors, then left-multiplies
    by a D power large enough to kill the F-discrepancy of the lift and to
    make the new denominator left regular.
    """
    if not regularity(c).regular:
        raise InputError("ore_solve requires a left-regular first argument")
    if r.is_in_f:
        return d_power(r.fpart_max_row + 1), ZERO

    rho = r.project().to_ratfunc()
    chi = c.project().to_ratfunc()
    _, _, u, v = lclm_gcrd(rho, chi)
    g = POLY_ONE
    for _, coeff in u.terms + v.terms:
        g = poly_lcm(g, coeff.den)
    u = RatFuncH(g) * u
    v = RatFuncH(g) * v
    s0 = lift(u.to_poly())
    w0 = lift(v.to_poly())

    disc = s0 * r - w0 * c
    if not disc.is_in_f:
        raise Falsification("Ore discrepancy left the ideal F")
    n = max(disc.fpart_max_row + 1, regularize(s0))
    c_out = d_power(n) * s0
    r_out = d_power(n) * w0
    if c_out * r != r_out * c:
        raise Falsification("ore_solve postcondition c'r = r'c failed")
    if not regularity(c_out).regular:
        raise Falsification("ore_solve produced a non-regular denominator")
    return c_out, r_out
