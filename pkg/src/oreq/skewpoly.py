"""Skew Laurent polynomials in D over H-coefficients.

Two coefficient domains share one commutation law D^k * f(H) = f(H+k) * D^k
(valid for all integers k):

* ``SkewLaurentPolyH``  — coefficients in Q[H]; this is the image of the
  operator algebra modulo its socle ideal, i.e. the Laurent localization of
  the subalgebra generated by H and D at the powers of D.
* ``SkewLaurentRF``     — coefficients in Q(H); the ambient left-Euclidean
  ring used for GCRD/LCLM and for fraction arithmetic.

Elements are sparse maps exponent -> nonzero coefficient, stored with the
coefficient on the LEFT of the D power.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import Falsification, InputError
from .exact import (
    PolyH,
    POLY_ONE,
    RatFuncH,
    RF_ONE,
    _as_poly,
    _as_ratfunc,
    poly_lcm,
    poly_str,
)


class _SkewBase:
    """Shared sparse-term mechanics; subclasses fix the coefficient ring."""

    __slots__ = ("terms",)

    _coerce_coeff = None  # set by subclass

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        cleaned = {}
        for k, c in items:
            c = type(self)._coerce_coeff(c)
            if c:
                cleaned[int(k)] = cleaned.get(int(k), type(self)._coerce_coeff(0)) + c
        object.__setattr__(
            self,
            "terms",
            tuple(sorted((k, c) for k, c in cleaned.items() if c)),
        )

    # -- structure ----------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return not self.is_zero

    @property
    def min_deg(self):
        if self.is_zero:
            raise InputError("degree of zero element")
        return self.terms[0][0]

    @property
    def max_deg(self):
        if self.is_zero:
            raise InputError("degree of zero element")
        return self.terms[-1][0]

    @property
    def lead(self):
        return self.terms[-1][1]

    def coeff(self, k: int):
        for kk, c in self.terms:
            if kk == k:
                return c
        return type(self)._coerce_coeff(0)

    def __eq__(self, other):
        if isinstance(other, type(self)):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((type(self).__name__, self.terms))

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return type(self)(list(self.terms) + list(other.terms))

    def __neg__(self):
        return type(self)((k, -c) for k, c in self.terms)

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return type(self)((k, c * other) for k, c in self.terms)
        if not isinstance(other, type(self)):
            return NotImplemented
        acc: dict = {}
        for i, f in self.terms:
            for j, g in other.terms:
                k = i + j
                c = f * g.shift(i)
                acc[k] = acc.get(k, type(self)._coerce_coeff(0)) + c
        return type(self)(acc)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative power of a skew polynomial")
        result = type(self).one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def d_shift(self, m: int):
        """Left-multiply by D^m (m may be negative): coefficients get
        shifted by m and exponents raised by m."""
        return type(self)((k + m, c.shift(m)) for k, c in self.terms)

    def d_shift_right(self, m: int):
        """Right-multiply by D^m: exponents raised, coefficients unchanged."""
        return type(self)((k + m, c) for k, c in self.terms)

    @classmethod
    def one(cls):
        return cls([(0, cls._coerce_coeff(1))])

    @classmethod
    def gen(cls, k: int = 1):
        """D^k."""
        return cls([(k, cls._coerce_coeff(1))])

    def __repr__(self):
        return f"{type(self).__name__}({skew_str(self)})"


class SkewLaurentPolyH(_SkewBase):
    """Sum of p_k(H) D^k with polynomial coefficients, k in Z."""

    __slots__ = ()
    _coerce_coeff = staticmethod(_as_poly)

    def to_ratfunc(self) -> "SkewLaurentRF":
        return SkewLaurentRF((k, RatFuncH(c)) for k, c in self.terms)


class SkewLaurentRF(_SkewBase):
    """Sum of f_k(H) D^k with rational-function coefficients, k in Z."""

    __slots__ = ()
    _coerce_coeff = staticmethod(_as_ratfunc)

    @property
    def is_polynomial(self) -> bool:
        return all(c.is_polynomial for _, c in self.terms)

    def to_poly(self) -> SkewLaurentPolyH:
        if not self.is_polynomial:
            raise InputError("coefficients are not polynomials")
        return SkewLaurentPolyH((k, c.num) for k, c in self.terms)

    def clear_denominators(self) -> tuple[PolyH, "SkewLaurentRF"]:
        """Return (g, g*self) with g in Q[H] monic such that g*self has
        polynomial coefficients.  Left multiplication by g(H) multiplies each
        coefficient by g."""
        g = POLY_ONE
        for _, c in self.terms:
            g = poly_lcm(g, c.den)
        return g, RatFuncH(g) * self

    def __mul__(self, other):
        if isinstance(other, RatFuncH):
            return SkewLaurentRF((k, c * other) for k, c in self.terms)
        return super().__mul__(other)

    def __rmul__(self, other):
        if isinstance(other, RatFuncH):
            # left factor of D-degree 0 multiplies coefficients directly
            return SkewLaurentRF((k, other * c) for k, c in self.terms)
        return super().__rmul__(other)


def divmod_right(a: SkewLaurentRF, b: SkewLaurentRF) -> tuple[SkewLaurentRF, SkewLaurentRF]:
    """Right division a = q*b + r with deg r < deg b.

    Defined for ordinary skew polynomials (no negative D powers); Laurent
    callers normalize by a left D-power first.
    """
    if b.is_zero:
        raise InputError("skew division by zero")
    if (not a.is_zero and a.min_deg < 0) or b.min_deg < 0:
        raise InputError("divmod_right requires nonnegative D powers")
    q = SkewLaurentRF()
    r = a
    db = b.max_deg
    lb = b.lead
    while not r.is_zero and r.max_deg >= db:
        m = r.max_deg - db
        c = r.lead / lb.shift(m)
        t = SkewLaurentRF([(m, c)])
        r = r - t * b
        q = q + t
    return q, r


def lclm_gcrd(a: SkewLaurentRF, b: SkewLaurentRF):
    """Least common left multiple and greatest common right divisor.

    Returns (lclm, gcrd, u, v) with u*a = v*b = lclm (cofactors may be
    Laurent when the inputs are), gcrd monic right-dividing both, and the
    degree identity deg lclm + deg gcrd = deg a + deg b on the D-normalized
    inputs.  Extended right-Euclidean algorithm over Q(H).
    """
    if a.is_zero or b.is_zero:
        raise InputError("lclm/gcrd of zero")
    # clear negative D powers only; ordinary inputs keep their degrees
    va = min(a.min_deg, 0)
    vb = min(b.min_deg, 0)
    an = a.d_shift(-va)
    bn = b.d_shift(-vb)

    # rows (r, u, v) with r = u*an + v*bn
    r0, u0, v0 = an, SkewLaurentRF.one(), SkewLaurentRF()
    r1, u1, v1 = bn, SkewLaurentRF(), SkewLaurentRF.one()
    while not r1.is_zero:
        q, rem = divmod_right(r0, r1)
        r0, u0, v0, r1, u1, v1 = r1, u1, v1, rem, u0 - q * u1, v0 - q * v1
    gcrd = r0
    # r1 = 0 = u1*an + v1*bn, so u1*an = (-v1)*bn is a common left multiple
    # of minimal degree.
    lclm = u1 * an
    u, v = u1, -v1

    # monic normalizations (left units)
    lc = lclm.lead
    unit = lc.inv()
    lclm = unit * lclm
    u = unit * u
    v = unit * v
    gcrd = gcrd.lead.inv() * gcrd

    # undo the input normalization: an = D^{-va} a
    u = u.d_shift_right(-va)
    v = v.d_shift_right(-vb)

    if u * a != lclm or v * b != lclm:
        raise Falsification("lclm cofactor postcondition failed")
    return lclm, gcrd, u, v


def skew_str(s: _SkewBase, var: str = "d") -> str:
    if s.is_zero:
        return "0"
    parts = []
    for k, c in reversed(s.terms):
        if isinstance(c, RatFuncH):
            cs = poly_str(c.num) if c.is_polynomial else f"({poly_str(c.num)})/({poly_str(c.den)})"
            trivial = c == RF_ONE
        else:
            cs = poly_str(c)
            trivial = c == POLY_ONE
        if k == 0:
            body = cs if "+" not in cs and "- " not in cs else f"({cs})"
        else:
            dpow = var if k == 1 else f"{var}^{k}"
            body = dpow if trivial else f"({cs})*{dpow}"
        parts.append(body)
    return " + ".join(parts)
