"""Exact arithmetic in the quotient division ring of the Weyl algebra,
realized as left fractions den^-1 * num over the skew Laurent ring in D with
Q(H) coefficients, plus the localization map from the operator algebra.

A fraction is normalized so that its denominator is a monic ordinary skew
polynomial (the Laurent shift is absorbed into the numerator); equality is
the Ore equivalence through common left multiples, not component equality.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import Falsification, InputError
from .exact import POLY_ONE, RatFuncH, poly_lcm
from .i1 import I1Element, lift
from .skewpoly import SkewLaurentPolyH, SkewLaurentRF, lclm_gcrd, skew_str
from .regularity import regularize
from . import i1 as i1mod


@dataclass(frozen=True)
class SkewFraction:
    """den^-1 * num with den a monic ordinary skew polynomial, num Laurent."""

    den: SkewLaurentRF
    num: SkewLaurentRF

    @staticmethod
    def make(den: SkewLaurentRF, num: SkewLaurentRF) -> "SkewFraction":
        if den.is_zero:
            raise InputError("fraction with zero denominator")
        shift = -den.min_deg
        if shift:
            den = den.d_shift(shift)
            num = num.d_shift(shift)
        unit = den.lead.inv()
        den = unit * den
        num = unit * num
        return SkewFraction(den=den, num=num)

    @staticmethod
    def from_element(num: SkewLaurentRF) -> "SkewFraction":
        return SkewFraction.make(SkewLaurentRF.one(), num)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __bool__(self):
        return not self.is_zero

    # -- field operations ------------------------------------------------

    def __add__(self, other: "SkewFraction") -> "SkewFraction":
        if not isinstance(other, SkewFraction):
            return NotImplemented
        _, _, u1, u2 = lclm_gcrd(self.den, other.den)
        return SkewFraction.make(u1 * self.den, u1 * self.num + u2 * other.num)

    def __neg__(self):
        return SkewFraction(den=self.den, num=-self.num)

    def __sub__(self, other):
        if not isinstance(other, SkewFraction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "SkewFraction") -> "SkewFraction":
        if not isinstance(other, SkewFraction):
            return NotImplemented
        # (s1^-1 r1)(s2^-1 r2): swap r1 s2^-1 = t^-1 w via t r1 = w s2.
        if self.is_zero or other.is_zero:
            return ZERO_FRACTION
        if other.den == SkewLaurentRF.one():
            return SkewFraction.make(self.den, self.num * other.num)
        _, _, t, w = lclm_gcrd(self.num, other.den)
        return SkewFraction.make(t * self.den, w * other.num)

    def inv(self) -> "SkewFraction":
        if self.is_zero:
            raise InputError("inverse of the zero fraction")
        return SkewFraction.make(self.num, self.den)

    def __eq__(self, other):
        if not isinstance(other, SkewFraction):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.den == other.den:
            return self.num == other.num
        _, _, u1, u2 = lclm_gcrd(self.den, other.den)
        return u1 * self.num == u2 * other.num

    def __hash__(self):
        raise TypeError("SkewFraction is unhashable: equality is Ore equivalence")

    def __repr__(self):
        return f"SkewFraction(({skew_str(self.den)})^-1 * ({skew_str(self.num)}))"


ZERO_FRACTION = SkewFraction(den=SkewLaurentRF.one(), num=SkewLaurentRF())
ONE_FRACTION = SkewFraction(den=SkewLaurentRF.one(), num=SkewLaurentRF.one())


def localize_i1(a: I1Element) -> SkewFraction:
    """The localization map: project modulo the matrix-unit ideal and embed
    with denominator 1.  A ring morphism, zero exactly on the ideal, and a
    unit on every left-regular operator."""
    return SkewFraction.from_element(a.project().to_ratfunc())


def reexpress_with_regular_denominator(f: SkewFraction) -> tuple[I1Element, I1Element]:
    """Write f = psi(c)^-1 * psi(r) with c a left-regular operator.

    Clears rational-function denominators, lifts the fraction's denominator
    into the operator algebra, and left-multiplies by the D power that makes
    the lift left regular; the numerator follows.  Verified exactly before
    returning.
    """
    g = POLY_ONE
    for _, coeff in f.den.terms + f.num.terms:
        g = poly_lcm(g, coeff.den)
    den = RatFuncH(g) * f.den
    num = RatFuncH(g) * f.num

    m = max(0, -den.min_deg) if not den.is_zero else 0
    den_poly = den.d_shift(m).to_poly()
    c0 = lift(den_poly)
    i = regularize(c0)
    c = i1mod.d_power(i) * c0
    r = lift(num.d_shift(m + i).to_poly())

    if not (localize_i1(c) * f == localize_i1(r)):
        raise Falsification("reexpression failed verification")
    return c, r
