import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oreq.errors import InputError
from oreq.exact import (
    PolyH,
    RatFuncH,
    natural_roots,
    nullspace,
    poly_divmod,
    poly_gcd,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)


def _polys(rng, deg=4):
    return PolyH([Fraction(rng.randint(-6, 6), rng.randint(1, 3))
                  for _ in range(rng.randint(0, deg + 1))])


def test_poly_basics():
    h = PolyH([0, 1])
    assert (h - 1).shift(1) == h            # shift_1(H - 1) = H
    assert (h - 1)(1) == 0
    assert h * h == PolyH([0, 0, 1])
    assert PolyH([1, 2, 3]).degree == 2
    assert PolyH([0, 0]).is_zero
    assert (h + 1).shift(-1) == h
    assert PolyH([2, 4]).monic() == PolyH([Fraction(1, 2), 1])


def test_poly_ring_axioms_randomized():
    rng = random.Random(7)
    for _ in range(200):
        p, q, r = (_polys(rng) for _ in range(3))
        assert p + q == q + p
        assert (p + q) + r == p + (q + r)
        assert p * (q + r) == p * q + p * r
        assert (p * q) * r == p * (q * r)
        k = rng.randint(-4, 4)
        assert p.shift(k).shift(-k) == p
        x = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        assert p.shift(k)(x) == p(x + k)


def test_poly_divmod_and_gcd():
    rng = random.Random(11)
    for _ in range(100):
        a, b = _polys(rng), _polys(rng)
        if b.is_zero:
            continue
        q, r = poly_divmod(a, b)
        assert q * b + r == a
        assert r.is_zero or r.degree < b.degree
        g = poly_gcd(a, b)
        if not g.is_zero:
            assert poly_divmod(a, g)[1].is_zero
            assert poly_divmod(b, g)[1].is_zero


def test_natural_roots_examples():
    h = PolyH([0, 1])
    assert natural_roots(h - 1) == {0}
    assert natural_roots(PolyH([1])) == frozenset()
    assert natural_roots((h - 1) * (h - 3)) == {0, 2}
    assert natural_roots(h) == frozenset()          # root at H=0 means i=-1
    assert natural_roots((h - 5) ** 2) == {4}
    with pytest.raises(InputError):
        natural_roots(PolyH())


def test_natural_roots_against_scan():
    rng = random.Random(3)
    for _ in range(300):
        p = _polys(rng, deg=6)
        if p.is_zero:
            continue
        den = math.lcm(*(c.denominator for c in p.coeffs))
        ints = [abs(int(c * den)) for c in p.coeffs]
        bound = 1 + max(ints) // max(1, ints[-1]) + max(ints)
        scan = {i for i in range(bound + 2) if p(i + 1) == 0}
        assert natural_roots(p) == scan


def test_nullspace_examples():
    assert nullspace([[1, 0], [0, 1]]) == []
    assert len(nullspace([[0]])) == 1
    basis = nullspace([[1, 1], [1, 1]])
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + v[1] == 0


def _rank_oracle(rows):
    # plain fraction Gauss, independent of the Bareiss path
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(mat[0])
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        r += 1
        rank += 1
    return rank


def test_nullspace_randomized():
    rng = random.Random(5)
    for _ in range(150):
        m = rng.randint(1, 5)
        n = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                 for _ in range(n)] for _ in range(m)]
        basis = nullspace(rows)
        for v in basis:
            for row in rows:
                assert sum(a * b for a, b in zip(row, v)) == 0
        assert len(basis) + _rank_oracle(rows) == n


def test_ratfunc_reduction_and_field_ops():
    h = PolyH([0, 1])
    f = RatFuncH(h * h - 1, h - 1)         # reduces to H + 1
    assert f == RatFuncH(h + 1)
    assert f.den == PolyH([1])
    g = RatFuncH(PolyH([1]), h)
    assert (f * g) * g.inv() == f
    assert f - f == RatFuncH(0)
    assert g.shift(2) == RatFuncH(PolyH([1]), h + 2)
    assert (f + g) * h == f * h + PolyH([1])
    with pytest.raises(InputError):
        RatFuncH(PolyH([1]), PolyH())
    with pytest.raises(InputError):
        g.inv().inv().inv() / RatFuncH(0)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 10))
def test_ratfunc_matches_fraction_arithmetic(a, b, c):
    # degree-0 rational functions embed the rationals
    fa, fb = RatFuncH(PolyH([a])), RatFuncH(PolyH([Fraction(b, c)]))
    s = fa + fb
    assert s.num.is_zero or s.num.degree == 0
    got = s.num.coeffs[0] if not s.num.is_zero else Fraction(0)
    assert got == Fraction(a) + Fraction(b, c)
