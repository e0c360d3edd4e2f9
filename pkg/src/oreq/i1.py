"""Canonical forms and exact arithmetic in the algebra of polynomial
integro-differential operators.

The algebra acts faithfully on Q[x] and is generated by x, the derivative d
and the integration operator int (written D and I below).  With H := D*x it
is generated by D, I, H subject to

    D*I = 1,   [H, I] = I,   [H, D] = -D,   H*(1 - I*D) = (1 - I*D)*H = 1 - I*D.

The elements e[i,j] := I^i D^j - I^(i+1) D^(j+1) multiply like matrix units
and span the unique proper ideal F.  Every element is a *unique* sum

    sum_{i>0} a_{-i}(H) D^i  +  a_0(H)  +  sum_{i>0} I^i a_i(H)  +  sum l_ij e[i,j]

with a_k in Q[H], l_ij in Q; ``I1Element`` stores exactly these four
components (sparse, no zero entries), so structural equality is algebra
equality.  Products are computed component-by-component from the derived
commutation rules

    D^k p(H) = p(H+k) D^k,      p(H) I^k = I^k p(H+k),
    H e[i,j] = (i+1) e[i,j],    e[i,j] H = (j+1) e[i,j],
    D e[i,j] = e[i-1,j],  e[i,j] D = e[i,j+1],  I e[i,j] = e[i+1,j],
    e[i,j] I = e[i,j-1],  e[i,j] e[k,l] = delta_jk e[i,l],
    I^k D^k = 1 - sum_{m<k} e[m,m],

each of which is unit-tested against the Q[x] action before anything relies
on it.  All values are immutable; every operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import guards
from .errors import GuardExceeded, InputError
from .exact import PolyH, POLY_ONE, POLY_ZERO, Rational, _as_poly, frac_str, poly_str
from .skewpoly import SkewLaurentPolyH

KxPoly = tuple[Fraction, ...]  # polynomial in x, index = degree

DTerm = tuple[int, PolyH]      # (i, p): p(H) * D^i
ITerm = tuple[int, PolyH]      # (i, q): I^i * q(H)
FTerm = tuple[int, int, Fraction]


def _check_findex(i: int, j: int) -> None:
    cap = guards.DEFAULT.fpart_index
    if i > cap or j > cap:
        raise GuardExceeded(f"matrix-unit index ({i},{j}) exceeds guard {cap}")


class _Builder:
    """Accumulates canonical components during a product/sum."""

    __slots__ = ("d", "z", "i", "f")

    def __init__(self):
        self.d: dict[int, PolyH] = {}
        self.z: PolyH = POLY_ZERO
        self.i: dict[int, PolyH] = {}
        self.f: dict[tuple[int, int], Fraction] = {}

    def add_d(self, i: int, p: PolyH) -> None:
        if p.is_zero:
            return
        if i == 0:
            self.z = self.z + p
        else:
            self.d[i] = self.d.get(i, POLY_ZERO) + p

    def add_i(self, i: int, q: PolyH) -> None:
        if q.is_zero:
            return
        if i == 0:
            self.z = self.z + q
        else:
            self.i[i] = self.i.get(i, POLY_ZERO) + q

    def add_f(self, i: int, j: int, lam: Fraction) -> None:
        if lam == 0 or i < 0 or j < 0:
            return
        _check_findex(i, j)
        self.f[(i, j)] = self.f.get((i, j), Fraction(0)) + lam

    def build(self) -> "I1Element":
        return I1Element(
            dpart=tuple(sorted((i, p) for i, p in self.d.items() if not p.is_zero)),
            zpart=self.z,
            ipart=tuple(sorted((i, q) for i, q in self.i.items() if not q.is_zero)),
            fpart=tuple(
                sorted((i, j, lam) for (i, j), lam in self.f.items() if lam != 0)
            ),
        )


@dataclass(frozen=True)
class I1Element:
    """An operator in canonical form; see the module docstring."""

    dpart: tuple[DTerm, ...] = ()
    zpart: PolyH = POLY_ZERO
    ipart: tuple[ITerm, ...] = ()
    fpart: tuple[FTerm, ...] = ()

    # -- structure -----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not (self.dpart or self.ipart or self.fpart) and self.zpart.is_zero

    def __bool__(self):
        return not self.is_zero

    @property
    def is_in_f(self) -> bool:
        """True iff the element lies in the matrix-unit ideal F."""
        return not self.dpart and self.zpart.is_zero and not self.ipart

    @property
    def fpart_max_row(self) -> int:
        return max((i for i, _, _ in self.fpart), default=-1)

    @property
    def fpart_size(self) -> int:
        """-1 for no F component, else the least m with all indices <= m."""
        return max((max(i, j) for i, j, _ in self.fpart), default=-1)

    @property
    def dpart_max(self) -> int:
        return max((i for i, _ in self.dpart), default=0)

    @property
    def ipart_max(self) -> int:
        return max((i for i, _ in self.ipart), default=0)

    # -- additive ring structure ----------------------------------------------

    def __add__(self, other):
        other = as_element(other)
        b = _Builder()
        for i, p in self.dpart + other.dpart:
            b.add_d(i, p)
        b.z = self.zpart + other.zpart
        for i, q in self.ipart + other.ipart:
            b.add_i(i, q)
        for i, j, lam in self.fpart + other.fpart:
            b.add_f(i, j, lam)
        return b.build()

    __radd__ = __add__

    def __neg__(self):
        return I1Element(
            dpart=tuple((i, -p) for i, p in self.dpart),
            zpart=-self.zpart,
            ipart=tuple((i, -q) for i, q in self.ipart),
            fpart=tuple((i, j, -lam) for i, j, lam in self.fpart),
        )

    def __sub__(self, other):
        return self + (-as_element(other))

    def __rsub__(self, other):
        return as_element(other) + (-self)

    # -- multiplication --------------------------------------------------------

    def _dterms(self) -> list[DTerm]:
        terms = list(self.dpart)
        if not self.zpart.is_zero:
            terms.append((0, self.zpart))
        return terms

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return ZERO
            return I1Element(
                dpart=tuple((i, p * other) for i, p in self.dpart),
                zpart=self.zpart * other,
                ipart=tuple((i, q * other) for i, q in self.ipart),
                fpart=tuple((i, j, lam * other) for i, j, lam in self.fpart),
            )
        if not isinstance(other, I1Element):
            return NotImplemented
        b = _Builder()
        a_d, a_i, a_f = self._dterms(), self.ipart, self.fpart
        c_d, c_i, c_f = other._dterms(), other.ipart, other.fpart

        for i, p in a_d:
            for j, q in c_d:                       # p D^i * q D^j
                b.add_d(i + j, p * q.shift(i))
            for j, q in c_i:                       # p D^i * I^j q
                if i >= j:
                    b.add_d(i - j, p * q.shift(i - j))
                else:
                    b.add_i(j - i, p.shift(j - i) * q)
            for k, l, lam in c_f:                  # p D^i * lam e[k,l]
                if k >= i:
                    b.add_f(k - i, l, lam * p(k - i + 1))

        for i, q in a_i:
            for j, p in c_d:                       # I^i q * p D^j
                self._reduce_mixed(b, i, q * p, j)
            for j, w in c_i:                       # I^i q * I^j w
                b.add_i(i + j, q.shift(j) * w)
            for k, l, lam in c_f:                  # I^i q * lam e[k,l]
                b.add_f(k + i, l, lam * q(k + 1))

        for i, j, lam in a_f:
            for k, p in c_d:                       # lam e[i,j] * p D^k
                b.add_f(i, j + k, lam * p(j + 1))
            for k, q in c_i:                       # lam e[i,j] * I^k q
                if j >= k:
                    b.add_f(i, j - k, lam * q(j - k + 1))
            for k, l, mu in c_f:                   # matrix units
                if j == k:
                    b.add_f(i, l, lam * mu)
        return b.build()

    @staticmethod
    def _reduce_mixed(b: _Builder, i: int, r: PolyH, j: int) -> None:
        """Fold the mixed monomial I^i r(H) D^j (i >= 1) into canonical parts
        using I^k D^k = 1 - sum_{m<k} e[m,m]."""
        if r.is_zero:
            return
        if j == 0:
            b.add_i(i, r)
            return
        w = r.shift(-j)  # I^i r(H) D^j = I^i D^j w(H)
        if i >= j:
            b.add_i(i - j, w)
            for m in range(j):
                b.add_f(m + i - j, m, -w(m + 1))
        else:
            b.add_d(j - i, w.shift(j - i))
            for m in range(i):
                b.add_f(m, m + j - i, -w(m + j - i + 1))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative operator power")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- involution and projection ----------------------------------------------

    def star(self) -> "I1Element":
        """The involution fixing H, swapping D <-> I and e[i,j] -> e[j,i].

        Additive and anti-multiplicative; on canonical components it swaps
        the D-part and the I-part verbatim (the stored polynomials transfer
        unchanged because (p(H) D^i)* = I^i p(H))."""
        return I1Element(
            dpart=self.ipart,
            zpart=self.zpart,
            ipart=self.dpart,
            fpart=tuple(sorted((j, i, lam) for i, j, lam in self.fpart)),
        )

    def project(self) -> SkewLaurentPolyH:
        """Image in the factor by F: the skew Laurent ring in D over Q[H],
        with I mapping to D^-1.  A ring morphism; zero exactly on F."""
        terms: list[tuple[int, PolyH]] = list(self.dpart)
        if not self.zpart.is_zero:
            terms.append((0, self.zpart))
        for i, q in self.ipart:
            terms.append((-i, q.shift(-i)))  # I^i q(H) = q(H-i) D^-i mod F
        return SkewLaurentPolyH(terms)

    # -- actions -------------------------------------------------------------------

    def act_kx(self, p: Sequence) -> KxPoly:
        """Left action on a polynomial in x (coefficient tuple, index = degree)."""
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in p]
        out: dict[int, Fraction] = {}

        def put(k: int, c: Fraction) -> None:
            if c:
                acc = out.get(k, Fraction(0)) + c
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)

        for n, c in enumerate(coeffs):
            if c == 0:
                continue
            for i, pol in self._dterms():    # pol(H) D^i x^n
                if n >= i:
                    fall = Fraction(math.factorial(n), math.factorial(n - i))
                    put(n - i, c * fall * pol(n - i + 1))
            for i, q in self.ipart:          # I^i q(H) x^n
                rise = Fraction(math.factorial(n), math.factorial(n + i))
                put(n + i, c * rise * q(n + 1))
            for i, j, lam in self.fpart:     # e[i,j] x^n = delta_jn (j!/i!) x^i
                if j == n:
                    put(i, c * lam * Fraction(math.factorial(j), math.factorial(i)))
        deg = max(out, default=-1)
        return tuple(out.get(k, Fraction(0)) for k in range(deg + 1))

    def pprime_matrix(self, n_max: int) -> list[list[Fraction]]:
        """Matrix of the right action on the dual-basis slice span(v_0..v_N).

        Row k holds the coordinates of v_k * self.  Requires the slice to be
        invariant: no D-part (v_k * D^i raises the index) and no matrix unit
        e[i,j] with row i <= N but column j > N.
        """
        if self.dpart:
            raise InputError("slice not invariant: element has a D component")
        for i, j, _ in self.fpart:
            if i <= n_max < j:
                raise InputError(
                    f"slice not invariant: e[{i},{j}] leaves span(v_0..v_{n_max})"
                )
        rows = []
        for k in range(n_max + 1):
            row = [Fraction(0)] * (n_max + 1)
            if not self.zpart.is_zero:
                row[k] += self.zpart(k + 1)
            for i, q in self.ipart:          # v_k * I^i q = q(k-i+1) v_{k-i}
                if k >= i:
                    row[k - i] += q(k - i + 1)
            for i, j, lam in self.fpart:     # v_k * e[i,j] = delta_ki v_j
                if i == k:
                    row[j] += lam
            rows.append(row)
        return rows

    def __repr__(self):
        return f"I1Element({element_str(self)})"


def as_element(x) -> I1Element:
    if isinstance(x, I1Element):
        return x
    if isinstance(x, (int, Fraction)):
        return I1Element(zpart=_as_poly(x))
    if isinstance(x, PolyH):
        return I1Element(zpart=x)
    raise TypeError(f"cannot coerce {type(x).__name__} to I1Element")


# -- generators ----------------------------------------------------------------

ZERO = I1Element()
ONE = I1Element(zpart=POLY_ONE)
H = I1Element(zpart=PolyH([0, 1]))
D = I1Element(dpart=((1, POLY_ONE),))
INT = I1Element(ipart=((1, POLY_ONE),))
X = I1Element(ipart=((1, PolyH([0, 1])),))  # x = int * H


def d_power(i: int) -> I1Element:
    return I1Element(dpart=((i, POLY_ONE),)) if i > 0 else ONE


def int_power(i: int) -> I1Element:
    return I1Element(ipart=((i, POLY_ONE),)) if i > 0 else ONE


def e(i: int, j: int) -> I1Element:
    if i < 0 or j < 0:
        raise InputError("matrix-unit indices must be nonnegative")
    _check_findex(i, j)
    return I1Element(fpart=((i, j, Fraction(1)),))


def from_h_poly(p) -> I1Element:
    return I1Element(zpart=_as_poly(p))


def lift(s: SkewLaurentPolyH) -> I1Element:
    """Section of ``project``: D^k keeps its coefficient on the left,
    D^-i q(H) lifts to I^i q(H+i).  Satisfies project(lift(s)) == s."""
    b = _Builder()
    for k, p in s.terms:
        if k >= 0:
            b.add_d(k, p)
        else:
            b.add_i(-k, p.shift(-k))
    return b.build()


# -- printing -------------------------------------------------------------------


def _poly_factor(p: PolyH) -> str:
    s = poly_str(p)
    if p.degree == 0:
        return s if p.coeffs[0] > 0 else f"({s})"
    if len([c for c in p.coeffs if c != 0]) == 1 and p.coeffs[-1] == 1:
        return s  # single monic monomial like H^2
    return f"({s})"


def element_str(a: I1Element) -> str:
    """Canonical text form; ``parser.normalize`` inverts it exactly."""
    parts: list[str] = []
    for i, p in sorted(a.dpart, reverse=True):
        dpow = "d" if i == 1 else f"d^{i}"
        parts.append(dpow if p == POLY_ONE else f"{_poly_factor(p)}*{dpow}")
    if not a.zpart.is_zero:
        parts.append(poly_str(a.zpart))
    for i, q in a.ipart:
        ipow = "int" if i == 1 else f"int^{i}"
        parts.append(ipow if q == POLY_ONE else f"{ipow}*{_poly_factor(q)}")
    for i, j, lam in a.fpart:
        unit = f"e[{i},{j}]"
        if lam == 1:
            parts.append(unit)
        elif lam == -1:
            parts.append(f"-{unit}")
        else:
            parts.append(f"{frac_str(lam)}*{unit}")
    if not parts:
        return "0"
    text = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            text += " - " + part[1:]
        else:
            text += " + " + part
    return text


def kx_str(p: KxPoly) -> str:
    q = PolyH(p)
    return poly_str(q, var="x")
