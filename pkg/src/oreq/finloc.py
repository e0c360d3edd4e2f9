"""Ore localization of finite table rings, by exhaustive search.

Multiplicative sets, left/right Ore and denominator conditions, the honest
pair construction S^-1 R = (S x R)/~ with its ring structure recovered by
searching the Ore condition, canonical maps between localizations, dense
subsets, regular-preimage sets of prime ideals, singular ideals, and the
maximal-denominator landscape (guarded by ring order).

The pair-construction carrier is always cross-checked against the quotient
by ass(S) through the explicit map r + ass(S) -> r/1; on finite rings
denominators become units in that quotient, so the map must be a ring
isomorphism and any failure is reported as a Falsification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import guards
from .errors import Falsification, GuardExceeded, InputError
from .finring import (
    Ideal,
    TableRing,
    all_left_ideals,
    annihilator,
    element_sets,
    is_essential,
    is_two_sided,
    quotient_ring,
    two_sided_ideals,
    _cached,
)


class ContainsZero(InputError):
    """The multiplicative closure of the generators reached 0."""


def mult_closure(ring: TableRing, gens) -> frozenset:
    """Multiplicative closure of {1} | gens; error if 0 enters."""
    cur = {ring.one} | {int(x) for x in gens}
    if 0 in cur:
        raise ContainsZero("generators contain 0")
    while True:
        arr = np.fromiter(sorted(cur), dtype=np.int64)
        nxt = set(ring.mul[np.ix_(arr, arr)].ravel().tolist()) | cur
        if 0 in nxt:
            raise ContainsZero("closure reached 0")
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def is_mult_set(ring: TableRing, s) -> bool:
    s = frozenset(s)
    if ring.one not in s or 0 in s or not s:
        return False
    arr = np.fromiter(sorted(s), dtype=np.int64)
    return set(ring.mul[np.ix_(arr, arr)].ravel().tolist()) <= s


@dataclass(frozen=True)
class OreFlags:
    left_ore: bool
    right_ore: bool
    left_reversible: bool
    left_denominator: bool
    right_denominator: bool
    ass_left: frozenset


def ore_denominator_check(ring: TableRing, s) -> OreFlags:
    """Exhaustive Ore/reversibility flags for a multiplicative set."""
    s = frozenset(s)
    if not is_mult_set(ring, s):
        raise InputError("not a multiplicative set")
    mul = ring.mul
    members = sorted(s)
    sm = np.fromiter(members, dtype=np.int64)

    left_ore = all(
        bool(np.intersect1d(mul[sm, r], mul[:, sv]).size)
        for sv in members
        for r in range(ring.order)
    )
    right_ore = all(
        bool(np.intersect1d(mul[r, sm], mul[sv, :]).size)
        for sv in members
        for r in range(ring.order)
    )
    left_reversible = all(
        any(mul[sp, r] == 0 for sp in members)
        for r in range(ring.order)
        for sv in members
        if mul[r, sv] == 0
    )
    right_reversible = all(
        any(mul[r, sp] == 0 for sp in members)
        for r in range(ring.order)
        for sv in members
        if mul[sv, r] == 0
    )
    ass_left = frozenset(
        r for r in range(ring.order) if any(mul[sv, r] == 0 for sv in members)
    )
    return OreFlags(
        left_ore=left_ore,
        right_ore=right_ore,
        left_reversible=left_reversible,
        left_denominator=left_ore and left_reversible,
        right_denominator=right_ore and right_reversible,
        ass_left=ass_left,
    )


# -- pair-construction localization ------------------------------------------


@dataclass(frozen=True)
class LocalizedRing:
    carrier: TableRing
    hom: tuple[int, ...]              # R -> carrier, r -> r/1
    source_ring: TableRing
    source_set: frozenset
    class_of: tuple[int, ...]         # flat index over (s, r) pairs
    ass: frozenset

    def pair_class(self, s: int, r: int) -> int:
        members = sorted(self.source_set)
        return self.class_of[members.index(s) * self.source_ring.order + r]


def ore_localize(ring: TableRing, s) -> LocalizedRing:
    """The ring of left fractions s^-1 r as equivalence classes of pairs.

    (s1,r1) ~ (s2,r2) iff u1 s1 = u2 s2 in S and u1 r1 = u2 r2 for some
    u1, u2 in R; sums and products are found by exhaustive Ore searches.
    """
    s = frozenset(s)
    flags = ore_denominator_check(ring, s)
    if not flags.left_denominator:
        raise InputError("not a left denominator set")
    n = ring.order
    mul, add = ring.mul, ring.add
    members = sorted(s)

    # solve[t][sv]: all u with u * sv == t
    solve: list[dict[int, list[int]]] = [dict() for _ in range(n)]
    for sv in members:
        for u in range(n):
            solve[int(mul[u, sv])].setdefault(sv, []).append(u)

    def equivalent(p1, p2) -> bool:
        s1, r1 = p1
        s2, r2 = p2
        for u1 in range(n):
            t = int(mul[u1, s1])
            if t not in s:
                continue
            for u2 in solve[t].get(s2, ()):
                if mul[u1, r1] == mul[u2, r2]:
                    return True
        return False

    pairs = [(sv, r) for sv in members for r in range(n)]
    reps: list[tuple[int, int]] = []
    class_of: list[int] = []
    for p in pairs:
        for ci, rep in enumerate(reps):
            if equivalent(p, rep):
                class_of.append(ci)
                break
        else:
            class_of.append(len(reps))
            reps.append(p)

    def class_index(p) -> int:
        return class_of[members.index(p[0]) * n + p[1]]

    def common_denominator(s1, s2):
        for u1 in range(n):
            t = int(mul[u1, s1])
            if t in s:
                for u2 in solve[t].get(s2, ()):
                    return u1, u2, t
        raise Falsification("left Ore search failed on a denominator pair")

    def add_pairs(p1, p2):
        (s1, r1), (s2, r2) = p1, p2
        u1, u2, t = common_denominator(s1, s2)
        return (t, int(add[mul[u1, r1], mul[u2, r2]]))

    def mul_pairs(p1, p2):
        (s1, r1), (s2, r2) = p1, p2
        for sp in members:                       # s' r1 = r' s2
            x = int(mul[sp, r1])
            for rp in solve[x].get(s2, ()):
                return (int(mul[sp, s1]), int(mul[rp, r2]))
        raise Falsification("left Ore search failed on a numerator pair")

    zero_class = class_index((ring.one, 0))
    # reorder classes so the zero class lands at index 0
    perm = {zero_class: 0, 0: zero_class} if zero_class else {}
    relabel = [perm.get(c, c) for c in range(len(reps))]
    class_of = [relabel[c] for c in class_of]
    new_reps = list(reps)
    if perm:
        new_reps[0], new_reps[zero_class] = reps[zero_class], reps[0]
    reps = new_reps

    k = len(reps)
    qadd = [[0] * k for _ in range(k)]
    qmul = [[0] * k for _ in range(k)]
    for i, p1 in enumerate(reps):
        for j, p2 in enumerate(reps):
            qadd[i][j] = class_index(add_pairs(p1, p2))
            qmul[i][j] = class_index(mul_pairs(p1, p2))
    one_class = class_index((ring.one, ring.one))
    labels = [f"{ring.labels[sv]}^-1*{ring.labels[r]}" for sv, r in reps]
    carrier = TableRing(qadd, qmul, one_class, labels=labels,
                        name=f"{ring.name}loc{len(s)}")

    hom = tuple(class_index((ring.one, r)) for r in range(n))
    loc = LocalizedRing(
        carrier=carrier, hom=hom, source_ring=ring, source_set=s,
        class_of=tuple(class_of), ass=flags.ass_left,
    )
    _verify_localization(loc)
    return loc


def _verify_localization(loc: LocalizedRing) -> None:
    """Invariants of the construction: the map r -> r/1 is a ring morphism
    with kernel ass(S), images of S are units, and the carrier is isomorphic
    to R/ass(S) through that map."""
    ring, carrier, hom = loc.source_ring, loc.carrier, loc.hom
    n = ring.order
    for x in range(n):
        for y in range(n):
            if hom[ring.add[x, y]] != carrier.add[hom[x], hom[y]]:
                raise Falsification("localization map not additive")
            if hom[ring.mul[x, y]] != carrier.mul[hom[x], hom[y]]:
                raise Falsification("localization map not multiplicative")
    kernel = frozenset(x for x in range(n) if hom[x] == 0)
    if kernel != loc.ass:
        raise Falsification("localization kernel differs from ass(S)")
    units = element_sets(carrier)["units"]
    if not all(hom[sv] in units for sv in loc.source_set):
        raise Falsification("a denominator fails to become a unit")
    quo, proj = quotient_ring(ring, loc.ass)
    # r + ass -> r/1 must be a bijective morphism
    image_of = {}
    for r in range(n):
        prev = image_of.setdefault(proj[r], hom[r])
        if prev != hom[r]:
            raise Falsification("carrier comparison map ill-defined")
    if len(image_of) != carrier.order or len(set(image_of.values())) != carrier.order:
        raise Falsification("carrier is not the quotient by ass(S)")


@dataclass(frozen=True)
class HomReport:
    map: tuple[int, ...]
    mono: bool
    epi: bool
    iso: bool
    mono_crit: bool
    epi_crit: bool
    iso_crit: bool


def localization_hom(ring: TableRing, s, t) -> HomReport:
    """Canonical map S^-1 R -> T^-1 R for denominator sets S <= T.

    The mono/epi/iso flags are computed twice: directly on the carriers and
    through the kernel/denominator criteria (equal annihilator ideals,
    r t in S + ass(T), r t in S); the two routes must agree.
    """
    s, t = frozenset(s), frozenset(t)
    if not s <= t:
        raise InputError("first set must be contained in the second")
    loc_s = ore_localize(ring, s)
    loc_t = ore_localize(ring, t)

    mapping = [-1] * loc_s.carrier.order
    members = sorted(s)
    for idx, (sv, r) in enumerate(
        (sv, r) for sv in members for r in range(ring.order)
    ):
        ci = loc_s.class_of[idx]
        cj = loc_t.pair_class(sv, r)
        if mapping[ci] == -1:
            mapping[ci] = cj
        elif mapping[ci] != cj:
            raise Falsification("canonical localization map ill-defined")
    mapping = tuple(mapping)
    for x in range(loc_s.carrier.order):
        for y in range(loc_s.carrier.order):
            if mapping[loc_s.carrier.add[x, y]] != loc_t.carrier.add[mapping[x], mapping[y]]:
                raise Falsification("canonical localization map not additive")
            if mapping[loc_s.carrier.mul[x, y]] != loc_t.carrier.mul[mapping[x], mapping[y]]:
                raise Falsification("canonical localization map not multiplicative")

    mono = len(set(mapping)) == loc_s.carrier.order
    epi = len(set(mapping)) == loc_t.carrier.order
    iso = mono and epi

    ass_t = loc_t.ass
    sum_set = {int(ring.add[x, a]) for x in s for a in ass_t}
    mono_crit = loc_s.ass == ass_t
    epi_crit = all(
        any(int(ring.mul[r, tv]) in sum_set for r in range(ring.order)) for tv in t
    )
    iso_crit = mono_crit and all(
        any(int(ring.mul[r, tv]) in s for r in range(ring.order)) for tv in t
    )
    report = HomReport(mapping, mono, epi, iso, mono_crit, epi_crit, iso_crit)
    if (mono, epi, iso) != (mono_crit, epi_crit, iso_crit):
        raise Falsification(
            f"{ring.name}: localization-map criteria disagree with carriers: {report}"
        )
    return report


def dense_check(ring: TableRing, s, t) -> bool:
    """S dense in T: every t in T has r with r t in S."""
    s, t = frozenset(s), frozenset(t)
    if not s <= t:
        raise InputError("dense_check needs S <= T")
    return all(
        any(int(ring.mul[r, tv]) in s for r in range(ring.order)) for tv in t
    )


def s_p_set(ring: TableRing, p: Ideal) -> frozenset:
    """Preimage of the regular elements of R/p; always a multiplicative set
    for proper two-sided p."""
    quo, proj = quotient_ring(ring, p)
    regular = element_sets(quo)["regular"]
    out = frozenset(c for c in range(ring.order) if proj[c] in regular)
    if not is_mult_set(ring, out):
        raise Falsification("regular preimage failed to be multiplicative")
    return out


def singular_ideal(ring: TableRing, a: Ideal) -> frozenset:
    """{ r : I r = 0 for some essential left ideal I containing a }.

    Asserted to be a two-sided ideal; a proper two-sided a is required.
    """
    if not is_two_sided(ring, a):
        raise InputError("singular ideal needs a two-sided ideal")
    if len(a) == ring.order:
        raise InputError("singular ideal needs a proper ideal")
    out = set()
    for ideal in all_left_ideals(ring):
        if a <= ideal and is_essential(ring, ideal):
            out |= annihilator(ring, ideal, "right")
    out = frozenset(out)
    if not is_two_sided(ring, out):
        raise Falsification(f"{ring.name}: singular ideal over {sorted(a)} is not two-sided")
    return out


# -- largest denominator landscape ---------------------------------------------


def _all_mult_sets(ring: TableRing) -> list[frozenset]:
    """Every multiplicative subset (submonoid containing 1, avoiding 0),
    by closure-extension search; complete because any submonoid is the
    closure of itself built one generator at a time."""
    start = frozenset({ring.one})
    seen = {start}
    work = [start]
    while work:
        cur = work.pop()
        for x in range(1, ring.order):
            if x in cur or x == ring.one:
                continue
            try:
                ext = mult_closure(ring, cur | {x})
            except ContainsZero:
                continue
            if ext not in seen:
                seen.add(ext)
                work.append(ext)
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


@dataclass(frozen=True)
class LargestSets:
    s_l: frozenset                      # largest left Ore set of regular elements
    ps_l: frozenset                     # largest left denominator set of left-regular elements
    max_den: tuple[frozenset, ...] | None
    ll_radical: frozenset | None
    max_den_skipped: bool


def largest_sets(ring: TableRing, g: guards.Guards = guards.DEFAULT) -> LargestSets:
    """The units give both largest sets on a finite ring (any multiplicative
    set of regular elements sits inside the units, and the units form a left
    denominator set); the maximal denominator sets are enumerated outright
    when the order is within the guard, else marked skipped."""

    def compute():
        units = element_sets(ring)["units"]
        flags = ore_denominator_check(ring, units)
        if not flags.left_denominator:
            raise Falsification(f"{ring.name}: units fail the denominator check")
        if ring.order > g.maxden_order:
            return LargestSets(units, units, None, None, True)
        candidates = [
            s for s in _all_mult_sets(ring)
            if ore_denominator_check(ring, s).left_denominator
        ]
        max_den = tuple(
            s for s in candidates if not any(s < other for other in candidates)
        )
        ll = frozenset(range(ring.order))
        for s in max_den:
            ll &= ore_denominator_check(ring, s).ass_left
        return LargestSets(units, units, max_den, ll, False)

    return _cached(ring, ("largest_sets", g.maxden_order), compute)


# -- ring isomorphism search -----------------------------------------------------


def _signature(ring: TableRing, x: int) -> tuple:
    order = 1
    acc = x
    while acc != 0:
        acc = int(ring.add[acc, x])
        order += 1
    sq = int(ring.mul[x, x])
    return (
        order,
        x == ring.one,
        x in element_sets(ring)["units"],
        sq == x,
        sq == 0,
        len(annihilator(ring, [x], "right")),
        len(annihilator(ring, [x], "left")),
    )


def _ring_span(ring: TableRing, gens) -> frozenset:
    cur = {0, ring.one} | set(gens)
    while True:
        arr = np.fromiter(sorted(cur), dtype=np.int64)
        nxt = set(ring.add[np.ix_(arr, arr)].ravel().tolist())
        nxt |= set(ring.mul[np.ix_(arr, arr)].ravel().tolist())
        nxt |= cur
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def ring_isomorphic(r1: TableRing, r2: TableRing,
                    g: guards.Guards = guards.DEFAULT) -> bool:
    """Backtracking isomorphism search with invariant pruning."""
    if r1.order != r2.order:
        return False
    sig1 = sorted(_signature(r1, x) for x in range(r1.order))
    sig2 = sorted(_signature(r2, x) for x in range(r2.order))
    if sig1 != sig2:
        return False

    gens: list[int] = []
    span = _ring_span(r1, [])
    while len(span) < r1.order:
        nxt = next(x for x in range(r1.order) if x not in span)
        gens.append(nxt)
        span = _ring_span(r1, gens)

    budget = [g.iso_nodes]

    def close(mapping: dict[int, int]) -> dict[int, int] | None:
        mapping = dict(mapping)
        work = list(mapping)
        used = set(mapping.values())
        if len(used) != len(mapping):
            return None
        while work:
            budget[0] -= 1
            if budget[0] < 0:
                raise GuardExceeded("isomorphism search budget exhausted")
            x = work.pop()
            for y in list(mapping):
                for tab1, tab2 in ((r1.add, r2.add), (r1.mul, r2.mul)):
                    for u, v in ((x, y), (y, x)):
                        src = int(tab1[u, v])
                        dst = int(tab2[mapping[u], mapping[v]])
                        if src in mapping:
                            if mapping[src] != dst:
                                return None
                        else:
                            if dst in used:
                                return None
                            mapping[src] = dst
                            used.add(dst)
                            work.append(src)
        return mapping

    def search(idx: int, mapping: dict[int, int]) -> bool:
        if len(mapping) == r1.order:
            return True
        if idx == len(gens):
            # generators exhausted but closure incomplete: cannot happen
            raise Falsification("generator span does not cover the ring")
        gen = gens[idx]
        if gen in mapping:
            return search(idx + 1, mapping)
        want = _signature(r1, gen)
        for cand in range(r2.order):
            if cand in mapping.values():
                continue
            if _signature(r2, cand) != want:
                continue
            extended = close({**mapping, gen: cand})
            if extended is not None:
                if search(idx + 1, extended):
                    return True
        return False

    base = close({0: 0, r1.one: r2.one})
    if base is None:
        return False
    return search(0, base)
