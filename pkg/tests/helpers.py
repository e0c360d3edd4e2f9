"""Shared oracles and corpus generators for the test suite.

The regularity oracle here deliberately avoids the classifier's code path:
it builds the honest (rectangular) matrix of the right action on a slice of
the dual module straight from the canonical components and decides
injectivity by an exact nullspace, with the slice bound derived from raw
component data (Cauchy root bound, component indices) rather than from the
classifier's decomposition.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from oreq.exact import PolyH, nullspace
from oreq.i1 import I1Element, ZERO, d_power, e as eunit, from_h_poly, int_power
from oreq import i1


def cauchy_root_bound(p: PolyH) -> int:
    """Every integer root of p has absolute value < 1 + max |a_i| / |lead|."""
    den = math.lcm(*(c.denominator for c in p.coeffs))
    ints = [abs(int(c * den)) for c in p.coeffs]
    lead = ints[-1]
    return 1 + max(-(-m // lead) for m in ints)


def rect_action_matrix(a: I1Element, n_rows: int) -> list[list[Fraction]]:
    """Rows k = 0..n_rows: coordinates of v_k * a, width grown as needed."""
    width = n_rows + a.dpart_max + 1
    for _, j, _ in a.fpart:
        width = max(width, j + 1)
    rows = []
    for k in range(n_rows + 1):
        row = [Fraction(0)] * width
        for i, p in a.dpart:
            row[k + i] += p(k + 1)
        if not a.zpart.is_zero:
            row[k] += a.zpart(k + 1)
        for i, q in a.ipart:
            if k >= i:
                row[k - i] += q(k - i + 1)
        for i, j, lam in a.fpart:
            if i == k:
                row[j] += lam
        rows.append(row)
    return rows


def oracle_slice_bound(a: I1Element) -> int:
    """A slice provably containing the whole right-action kernel."""
    m = a.dpart_max
    if a.dpart:
        lead = dict(a.dpart)[m]
    elif not a.zpart.is_zero:
        lead = a.zpart
    else:
        lead = None
    root_bound = cauchy_root_bound(lead) if lead is not None else 0
    return m + root_bound + a.fpart_size + a.ipart_max + 3


def oracle_left_regular(a: I1Element) -> bool:
    """Kernel-free right action, decided on a provably sufficient slice."""
    if a.is_zero:
        return False
    n = oracle_slice_bound(a)
    rows = rect_action_matrix(a, n)
    transposed = [[rows[k][j] for k in range(len(rows))] for j in range(len(rows[0]))]
    return not nullspace(transposed)


def oracle_degree(gamma: I1Element, cap: int) -> int:
    """Brute-force least i with D^i * gamma left regular (oracle route)."""
    for i in range(cap + 1):
        if oracle_left_regular(d_power(i) * gamma):
            return i
    raise AssertionError("oracle degree exceeded cap")


# -- corpus generators -----------------------------------------------------------


_POLY_POOL = [
    PolyH([1]),
    PolyH([0, 1]),                # H
    PolyH([-1, 1]),               # H - 1
    PolyH([-2, 1]),               # H - 2
    PolyH([3, -4, 1]),            # (H-1)(H-3)
    PolyH([2, 1]),                # H + 2
    PolyH([1, 2]),                # 2H + 1
    PolyH([1, 0, 1]),             # H^2 + 1
    PolyH([4, -4, 1]),            # (H-2)^2
    PolyH([-4, 1]),               # H - 4
    PolyH([0, -5, 1]),            # H(H-5)
    PolyH([Fraction(1, 2), 1]),   # H + 1/2
]


def random_poly(rng: random.Random, max_deg: int = 2, allow_zero: bool = False) -> PolyH:
    if allow_zero and rng.random() < 0.2:
        return PolyH()
    if rng.random() < 0.5:
        return rng.choice(_POLY_POOL)
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(deg)] + [
        Fraction(rng.choice([1, -1, 2, 3]))
    ]
    return PolyH(coeffs)


def random_element(rng: random.Random, max_index: int = 6,
                   max_deg: int = 2) -> I1Element:
    out = ZERO
    for _ in range(rng.randint(0, 2)):
        out = out + from_h_poly(random_poly(rng, max_deg)) * d_power(
            rng.randint(1, max_index)
        )
    if rng.random() < 0.7:
        out = out + from_h_poly(random_poly(rng, max_deg))
    for _ in range(rng.randint(0, 2)):
        out = out + int_power(rng.randint(1, max_index)) * from_h_poly(
            random_poly(rng, max_deg)
        )
    for _ in range(rng.randint(0, 3)):
        lam = Fraction(rng.choice([1, -1, 2, -2])) / rng.choice([1, 1, 2])
        out = out + eunit(rng.randint(0, max_index), rng.randint(0, max_index)) * lam
    return out


def classifier_corpus(seed: int = 20240811) -> list[I1Element]:
    """Structured monomials, integral mixtures, matrix-unit perturbations
    (indices <= 6) plus 200 random elements; at least 500 in total."""
    rng = random.Random(seed)
    H = i1.H
    out: list[I1Element] = []
    polys = _POLY_POOL[:8]
    for i in range(4):
        for j in range(4):
            for p in polys[:5]:
                out.append(d_power(i) * from_h_poly(p) * int_power(j))
    for p in polys:
        for q in polys[:4]:
            out.append(from_h_poly(p) + int_power(1) * from_h_poly(q))
            out.append(from_h_poly(p) * d_power(2) + int_power(2) * from_h_poly(q))
    base = [d_power(1), int_power(1), H, H - 1, d_power(1) + int_power(1),
            from_h_poly(polys[4])]
    for b in base:
        for k in range(3):
            for l in range(3):
                out.append(b + eunit(2 * k, 2 * l))
                out.append(b - eunit(k, l) * Fraction(1, 2))
    out.extend(eunit(i, j) for i in range(3) for j in range(3))
    out.append(ZERO)
    for _ in range(200):
        out.append(random_element(rng))
    assert len(out) >= 500
    return out


def gamma_corpus(seed: int = 987) -> list[I1Element]:
    """At least 200 elements with nonzero constant H-polynomial part."""
    rng = random.Random(seed)
    out = []
    fparts = [ZERO, eunit(0, 0), eunit(2, 3) + eunit(0, 1), eunit(1, 1) * 2,
              eunit(4, 0) - eunit(0, 4), eunit(5, 5)]
    for p in _POLY_POOL[1:]:
        for f in fparts:
            out.append(from_h_poly(p) + f)
            out.append(from_h_poly(p) + int_power(1) * from_h_poly(PolyH([1, 1])) + f)
    while len(out) < 220:
        cand = random_element(rng, max_index=5)
        cand = I1Element(dpart=(), zpart=cand.zpart, ipart=cand.ipart,
                         fpart=cand.fpart)
        if not cand.zpart.is_zero:
            out.append(cand)
        else:
            out.append(cand + from_h_poly(random_poly(rng)) + 1)
    return [g for g in out if not g.zpart.is_zero]
