"""Exact scalars, polynomials in H over Q, reduced rational functions in H,
and exact nullspace computation.

Scalars are ``fractions.Fraction`` (arbitrary precision, always reduced,
positive denominator), re-exported as ``Rational``.  Polynomials are dense
coefficient tuples indexed by degree; the zero polynomial is the empty tuple.
All values are immutable and every operation is a pure function, so the module
is safe for concurrent use.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GuardExceeded, InputError
from . import guards

Rational = Fraction


def _coerce(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"rational scalar expected, got {type(x).__name__}")


class PolyH:
    """Univariate polynomial in the commuting generator H over Q.

    ``coeffs[k]`` is the coefficient of H^k; the top coefficient is nonzero
    unless the polynomial is zero (empty tuple).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if self.is_zero:
            raise InputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        if isinstance(other, PolyH):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == PolyH([other])
        return NotImplemented

    def __hash__(self):
        return hash(("PolyH", self.coeffs))

    def __bool__(self):
        return not self.is_zero

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (PolyH, int, Fraction)):
            return NotImplemented
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return PolyH(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return PolyH(-c for c in self.coeffs)

    def __sub__(self, other):
        if not isinstance(other, (PolyH, int, Fraction)):
            return NotImplemented
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        if not isinstance(other, (PolyH, int, Fraction)):
            return NotImplemented
        return _as_poly(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PolyH(c * other for c in self.coeffs)
        if not isinstance(other, PolyH):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return PolyH()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return PolyH(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InputError("negative polynomial power")
        result = PolyH([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, point) -> Fraction:
        """Evaluate at a rational point (Horner)."""
        point = _coerce(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    def shift(self, k: int) -> "PolyH":
        """p(H) -> p(H + k); same degree, exact."""
        if k == 0 or self.is_zero:
            return self
        # Horner in (H + k)
        acc = PolyH()
        hk = PolyH([k, 1])
        for c in reversed(self.coeffs):
            acc = acc * hk + PolyH([c])
        return acc

    def monic(self) -> "PolyH":
        if self.is_zero:
            raise InputError("zero polynomial cannot be made monic")
        lead = self.lead
        return PolyH(c / lead for c in self.coeffs)

    def __repr__(self):
        return f"PolyH({poly_str(self)})"


def _as_poly(x) -> PolyH:
    if isinstance(x, PolyH):
        return x
    if isinstance(x, (int, Fraction)):
        return PolyH([x])
    raise TypeError(f"cannot coerce {type(x).__name__} to PolyH")


POLY_ZERO = PolyH()
POLY_ONE = PolyH([1])
POLY_H = PolyH([0, 1])


def poly_divmod(a: PolyH, b: PolyH) -> tuple[PolyH, PolyH]:
    """Division with remainder over Q; deg(rem) < deg(b)."""
    if b.is_zero:
        raise InputError("polynomial division by zero")
    quo = [Fraction(0)] * max(0, a.degree - b.degree + 1)
    rem = list(a.coeffs)
    db, lb = b.degree, b.lead
    while len(rem) - 1 >= db and rem:
        k = len(rem) - 1 - db
        c = rem[-1] / lb
        quo[k] = c
        for j, bc in enumerate(b.coeffs):
            rem[k + j] -= c * bc
        while rem and rem[-1] == 0:
            rem.pop()
    return PolyH(quo), PolyH(rem)


def poly_gcd(a: PolyH, b: PolyH) -> PolyH:
    """Monic gcd; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, poly_divmod(a, b)[1]
    return a.monic() if not a.is_zero else a


def poly_lcm(a: PolyH, b: PolyH) -> PolyH:
    if a.is_zero or b.is_zero:
        return POLY_ZERO
    g = poly_gcd(a, b)
    return (a * poly_divmod(b, g)[0]).monic()


def _integer_cleared(p: PolyH) -> list[int]:
    den = math.lcm(*(c.denominator for c in p.coeffs)) if p.coeffs else 1
    return [int(c * den) for c in p.coeffs]


def natural_roots(p: PolyH) -> frozenset[int]:
    """The set { i in N : p(i + 1) == 0 }, found exactly.

    Clears denominators of p(H + 1) and applies the rational-root theorem:
    every integer root of an integer polynomial divides its trailing nonzero
    coefficient.
    """
    if p.is_zero:
        raise InputError("natural_roots of the zero polynomial")
    q = p.shift(1)
    coeffs = _integer_cleared(q)
    roots = set()
    v = 0
    while coeffs[v] == 0:
        v += 1
    if v > 0:
        roots.add(0)
    trailing = abs(coeffs[v])
    for d in range(1, trailing + 1):
        if trailing % d == 0 and q(d) == 0:
            roots.add(d)
    return frozenset(roots)


# -- exact nullspace -------------------------------------------------------


def nullspace(rows: Sequence[Sequence], g: guards.Guards = guards.DEFAULT) -> list[tuple[Fraction, ...]]:
    """Exact basis of { v : M v = 0 } for a rectangular rational matrix.

    Elimination is fraction-free (Bareiss) on the integer-cleared matrix to
    control coefficient growth; back-substitution reconstructs rational basis
    vectors, one per free column.  Empty list iff M is injective.
    """
    m = len(rows)
    if m == 0:
        raise InputError("nullspace of an empty matrix (no columns known)")
    n = len(rows[0])
    mat: list[list[int]] = []
    for row in rows:
        if len(row) != n:
            raise InputError("ragged matrix")
        fr = [_coerce(x) for x in row]
        den = math.lcm(*(x.denominator for x in fr)) if fr else 1
        mat.append([int(x * den) for x in fr])

    pivot_cols: list[int] = []
    prev = 1
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        p = mat[r][c]
        for i in range(r + 1, m):
            head = mat[i][c]
            for j in range(c, n):
                mat[i][j] = (p * mat[i][j] - head * mat[r][j]) // prev
        prev = p
        pivot_cols.append(c)
        r += 1
        if r == m:
            break

    free_cols = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for f in free_cols:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i in range(len(pivot_cols) - 1, -1, -1):
            c = pivot_cols[i]
            s = sum((Fraction(mat[i][j]) * v[j] for j in range(c + 1, n)), Fraction(0))
            v[c] = -s / mat[i][c]
        basis.append(tuple(v))
    return basis


# -- rational functions in H ----------------------------------------------


class RatFuncH:
    """Reduced rational function num/den in H: den monic, gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=POLY_ONE, g: guards.Guards = guards.DEFAULT):
        num = _as_poly(num)
        den = _as_poly(den)
        if den.is_zero:
            raise InputError("rational function with zero denominator")
        if num.is_zero:
            num, den = POLY_ZERO, POLY_ONE
        else:
            common = poly_gcd(num, den)
            if common.degree > 0:
                num = poly_divmod(num, common)[0]
                den = poly_divmod(den, common)[0]
            lead = den.lead
            if lead != 1:
                num = num * (1 / lead)
                den = den.monic()
        if max(num.degree, den.degree) > g.ratfunc_degree:
            raise GuardExceeded(
                f"rational-function degree {max(num.degree, den.degree)} "
                f"exceeds guard {g.ratfunc_degree}"
            )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.is_zero

    def __eq__(self, other):
        if isinstance(other, RatFuncH):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, PolyH)):
            return self == RatFuncH(other)
        return NotImplemented

    def __hash__(self):
        return hash(("RatFuncH", self.num.coeffs, self.den.coeffs))

    def __add__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        other = _as_ratfunc(other)
        return RatFuncH(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncH(-self.num, self.den)

    def __sub__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        return self + (-_as_ratfunc(other))

    def __rsub__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        return _as_ratfunc(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        other = _as_ratfunc(other)
        return RatFuncH(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        other = _as_ratfunc(other)
        if other.is_zero:
            raise InputError("division by zero rational function")
        return RatFuncH(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if not isinstance(other, (RatFuncH, PolyH, int, Fraction)):
            return NotImplemented
        return _as_ratfunc(other) / self

    def inv(self) -> "RatFuncH":
        if self.is_zero:
            raise InputError("inverse of zero rational function")
        return RatFuncH(self.den, self.num)

    def shift(self, k: int) -> "RatFuncH":
        """f(H) -> f(H + k)."""
        return RatFuncH(self.num.shift(k), self.den.shift(k))

    @property
    def is_polynomial(self) -> bool:
        return self.den == POLY_ONE

    def __repr__(self):
        if self.is_polynomial:
            return f"RatFuncH({poly_str(self.num)})"
        return f"RatFuncH(({poly_str(self.num)})/({poly_str(self.den)}))"


def _as_ratfunc(x) -> RatFuncH:
    if isinstance(x, RatFuncH):
        return x
    if isinstance(x, (int, Fraction, PolyH)):
        return RatFuncH(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to RatFuncH")


RF_ZERO = RatFuncH(0)
RF_ONE = RatFuncH(1)


# -- printing ---------------------------------------------------------------


def frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def poly_str(p: PolyH, var: str = "H") -> str:
    if p.is_zero:
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = frac_str(mag)
        else:
            head = var if k == 1 else f"{var}^{k}"
            body = head if mag == 1 else f"{frac_str(mag)}*{head}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)
