"""Finite rings presented by addition/multiplication tables.

A ``TableRing`` is a unital ring on indices 0..n-1 with zero fixed at index 0;
both tables are validated exhaustively on construction (abelian group axioms,
associativity, two-sided identity, two-sided distributivity), so downstream
code can trust the structure.  Everything is decided by exhaustive scans:
element classes, the left ideal lattice, uniform dimension, primes, radicals,
annihilators, quotients.  Scans iterate in index order, so all outputs are
deterministic.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from . import guards
from .errors import Falsification, GuardExceeded, InputError

Ideal = frozenset  # of element indices


class TableRing:
    __slots__ = ("order", "add", "mul", "one", "neg", "labels", "name", "_cache")

    def __init__(self, add, mul, one: int, labels=None, name: str | None = None,
                 g: guards.Guards = guards.DEFAULT):
        add = np.asarray(add, dtype=np.int64)
        mul = np.asarray(mul, dtype=np.int64)
        n = add.shape[0]
        if n == 0:
            raise InputError("empty ring")
        if n > g.ring_order:
            raise GuardExceeded(f"ring order {n} exceeds guard {g.ring_order}")
        if add.shape != (n, n) or mul.shape != (n, n):
            raise InputError("tables must be square and of equal size")
        for t, label in ((add, "add"), (mul, "mul")):
            if t.min() < 0 or t.max() >= n:
                raise InputError(f"{label} table entry out of range")
        if not (0 <= one < n):
            raise InputError("identity index out of range")
        if one == 0:
            raise InputError("ring must have 1 != 0")

        rng = np.arange(n)
        if not np.array_equal(add[0], rng):
            raise InputError("index 0 is not an additive identity")
        if not np.array_equal(add, add.T):
            raise InputError("addition is not commutative")
        if not np.all(np.any(add == 0, axis=1)):
            raise InputError("some element has no additive inverse")
        for a in range(n):
            if not np.array_equal(add[add[a]], add[a][add]):
                raise InputError("addition is not associative")
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise InputError("multiplication is not associative")
            if not np.array_equal(mul[a][add], add[np.ix_(mul[a], mul[a])]):
                raise InputError("left distributivity fails")
            col = mul[:, a]
            if not np.array_equal(col[add], add[np.ix_(col, col)]):
                raise InputError("right distributivity fails")
        if not np.array_equal(mul[one], rng) or not np.array_equal(mul[:, one], rng):
            raise InputError("identity element is not a two-sided identity")

        self.order = n
        self.add = add
        self.mul = mul
        self.one = int(one)
        self.neg = tuple(int(x) for x in np.argmax(add == 0, axis=1))
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        self.name = name or f"ring{n}"
        self._cache = {}

    def sub(self, a: int, b: int) -> int:
        return int(self.add[a, self.neg[b]])

    def label_set(self, xs) -> list[str]:
        return [self.labels[x] for x in sorted(xs)]

    def __repr__(self):
        return f"TableRing({self.name}, order={self.order})"

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "add": self.add.tolist(),
            "mul": self.mul.tolist(),
            "one": self.one,
            "labels": list(self.labels),
            "name": self.name,
        }


def from_dict(data: dict, g: guards.Guards = guards.DEFAULT) -> TableRing:
    try:
        return TableRing(
            data["add"], data["mul"], data["one"],
            labels=data.get("labels"), name=data.get("name"), g=g,
        )
    except KeyError as exc:
        raise InputError(f"ring file missing field {exc}") from exc


def load_ring(path, g: guards.Guards = guards.DEFAULT) -> TableRing:
    with open(path) as fh:
        data = json.load(fh)
    ring = from_dict(data, g=g)
    if not data.get("name"):
        ring.name = str(path)
    return ring


def _cached(ring: TableRing, key, fn):
    if key not in ring._cache:
        ring._cache[key] = fn()
    return ring._cache[key]


# -- builders -----------------------------------------------------------------


def cyclic(n: int) -> TableRing:
    if n < 2:
        raise InputError("cyclic ring needs order >= 2")
    idx = np.arange(n)
    return TableRing((idx[:, None] + idx) % n, (idx[:, None] * idx) % n,
                     one=1, name=f"Z/{n}")


def _gf_tables(p: int, k: int):
    """Field of order p^k via an irreducible monic polynomial over Z/p."""

    def pmul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return out

    def pmod(a, m):
        a = list(a)
        dm = len(m) - 1
        while len(a) > dm:
            lead = a[-1]
            if lead:
                shift = len(a) - 1 - dm
                for i, c in enumerate(m):
                    a[shift + i] = (a[shift + i] - lead * c) % p
            a.pop()
        while len(a) < dm:
            a.append(0)
        return a

    def monics(deg):
        for tail in itertools.product(range(p), repeat=deg):
            yield list(tail) + [1]

    def irreducible(m):
        deg = len(m) - 1
        for d in range(1, deg // 2 + 1):
            for cand in monics(d):
                if not any(pmod([0] * 0 + m, cand)[i] for i in range(len(cand) - 1)):
                    return False
        return True

    modulus = next(m for m in monics(k) if irreducible(m))
    elements = list(itertools.product(range(p), repeat=k))  # (c0..c_{k-1}), zero first
    index = {e: i for i, e in enumerate(elements)}
    n = p ** k
    add = [[index[tuple((x + y) % p for x, y in zip(a, b))] for b in elements] for a in elements]
    mul = [[index[tuple(pmod(pmul(list(a), list(b)), modulus))] for b in elements] for a in elements]
    one = index[(1,) + (0,) * (k - 1)]
    labels = ["+".join(f"{c}t^{i}" if i else str(c) for i, c in enumerate(e) if c) or "0"
              for e in elements]
    return add, mul, one, labels


def gf(q: int) -> TableRing:
    p = next((d for d in range(2, q + 1) if q % d == 0), q)
    k = 0
    m = q
    while m > 1:
        if m % p:
            raise InputError(f"{q} is not a prime power")
        m //= p
        k += 1
    if k == 0:
        raise InputError("field order must be at least 2")
    if k == 1:
        ring = cyclic(p)
        ring.name = f"F{p}"
        return ring
    add, mul, one, labels = _gf_tables(p, k)
    return TableRing(add, mul, one, labels=labels, name=f"F{q}")


def _tuple_ring(base: TableRing, coords, mul_rule, name: str,
                g: guards.Guards = guards.DEFAULT) -> TableRing:
    """Ring on tuples of base-ring indices with entrywise addition."""
    count = base.order ** len(coords)
    if count > g.ring_order:
        raise GuardExceeded(f"order {count} exceeds guard {g.ring_order}")
    elements = list(itertools.product(range(base.order), repeat=len(coords)))
    index = {e: i for i, e in enumerate(elements)}
    add = [[index[tuple(int(base.add[x, y]) for x, y in zip(a, b))] for b in elements]
           for a in elements]
    mul = [[index[mul_rule(a, b)] for b in elements] for a in elements]
    one = index[mul_rule(None, None)]  # mul_rule(None, None) returns the identity tuple
    labels = ["(" + ",".join(base.labels[x] for x in e) + ")" for e in elements]
    return TableRing(add, mul, one, labels=labels, name=name, g=g)


def matrix_ring(base: TableRing, k: int, g: guards.Guards = guards.DEFAULT) -> TableRing:
    """k x k matrices over the base ring, row-major tuples."""
    coords = [(i, j) for i in range(k) for j in range(k)]
    pos = {c: t for t, c in enumerate(coords)}

    def rule(a, b):
        if a is None:
            return tuple(base.one if i == j else 0 for i, j in coords)
        out = []
        for i, j in coords:
            acc = 0
            for t in range(k):
                acc = int(base.add[acc, base.mul[a[pos[(i, t)]], b[pos[(t, j)]]]])
            out.append(acc)
        return tuple(out)

    return _tuple_ring(base, coords, rule, f"M{k}({base.name})", g=g)


def triangular_ring(base: TableRing, k: int, g: guards.Guards = guards.DEFAULT) -> TableRing:
    """Upper triangular k x k matrices over the base ring."""
    coords = [(i, j) for i in range(k) for j in range(i, k)]
    pos = {c: t for t, c in enumerate(coords)}

    def rule(a, b):
        if a is None:
            return tuple(base.one if i == j else 0 for i, j in coords)
        out = []
        for i, j in coords:
            acc = 0
            for t in range(i, j + 1):
                acc = int(base.add[acc, base.mul[a[pos[(i, t)]], b[pos[(t, j)]]]])
            out.append(acc)
        return tuple(out)

    return _tuple_ring(base, coords, rule, f"T{k}({base.name})", g=g)


def product_ring(r1: TableRing, r2: TableRing, g: guards.Guards = guards.DEFAULT) -> TableRing:
    count = r1.order * r2.order
    if count > g.ring_order:
        raise GuardExceeded(f"order {count} exceeds guard {g.ring_order}")
    elements = list(itertools.product(range(r1.order), range(r2.order)))
    index = {e: i for i, e in enumerate(elements)}
    add = [[index[(int(r1.add[a[0], b[0]]), int(r2.add[a[1], b[1]]))] for b in elements]
           for a in elements]
    mul = [[index[(int(r1.mul[a[0], b[0]]), int(r2.mul[a[1], b[1]]))] for b in elements]
           for a in elements]
    one = index[(r1.one, r2.one)]
    labels = [f"({r1.labels[a]},{r2.labels[b]})" for a, b in elements]
    return TableRing(add, mul, one, labels=labels, name=f"{r1.name}x{r2.name}", g=g)


def opposite_ring(ring: TableRing) -> TableRing:
    return TableRing(ring.add, ring.mul.T, ring.one, labels=ring.labels,
                     name=f"{ring.name}^op")


# -- element classes ------------------------------------------------------------


def element_sets(ring: TableRing) -> dict[str, frozenset]:
    """Units and left/right/two-sided regular elements, by exhaustive scan.

    On a finite ring an injective self-map is bijective, so the four classes
    coincide; that collapse is asserted, not assumed.
    """

    def compute():
        n = ring.order
        mul = ring.mul
        unit_rows = mul == ring.one
        units = frozenset(
            a for a in range(n) if bool(np.any(unit_rows[a] & unit_rows[:, a]))
        )
        left_regular = frozenset(
            r for r in range(n) if np.unique(mul[:, r]).size == n
        )
        right_regular = frozenset(
            r for r in range(n) if np.unique(mul[r]).size == n
        )
        regular = left_regular & right_regular
        if not (units == left_regular == right_regular == regular):
            raise Falsification(
                f"{ring.name}: unit/regular element classes do not coincide"
            )
        return {
            "units": units,
            "left_regular": left_regular,
            "right_regular": right_regular,
            "regular": regular,
        }

    return _cached(ring, "element_sets", compute)


# -- ideal machinery ------------------------------------------------------------


def left_ideal_closure(ring: TableRing, gens) -> Ideal:
    """Smallest subset containing gens closed under + and left multiplication."""
    cur = {0} | {int(x) for x in gens}
    while True:
        arr = np.fromiter(sorted(cur), dtype=np.int64)
        nxt = set(ring.add[np.ix_(arr, arr)].ravel().tolist())
        nxt.update(ring.mul[:, arr].ravel().tolist())
        nxt.update(cur)
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def two_sided_closure(ring: TableRing, gens) -> Ideal:
    cur = {0} | {int(x) for x in gens}
    while True:
        arr = np.fromiter(sorted(cur), dtype=np.int64)
        nxt = set(ring.add[np.ix_(arr, arr)].ravel().tolist())
        nxt.update(ring.mul[:, arr].ravel().tolist())
        nxt.update(ring.mul[arr, :].ravel().tolist())
        nxt.update(cur)
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def _ideal_join(ring: TableRing, a: Ideal, b: Ideal) -> Ideal:
    xs = np.fromiter(sorted(a), dtype=np.int64)
    ys = np.fromiter(sorted(b), dtype=np.int64)
    return frozenset(ring.add[np.ix_(xs, ys)].ravel().tolist())


def _join_closure(ring: TableRing, seeds, g: guards.Guards) -> list[Ideal]:
    ideals = {frozenset({0})} | set(seeds)
    work = list(ideals)
    while work:
        cur = work.pop()
        for other in list(ideals):
            joined = _ideal_join(ring, cur, other)
            if joined not in ideals:
                ideals.add(joined)
                work.append(joined)
                if len(ideals) > g.ideal_count:
                    raise GuardExceeded(
                        f"{ring.name}: ideal count exceeds guard {g.ideal_count}"
                    )
    return sorted(ideals, key=lambda s: (len(s), sorted(s)))


def all_left_ideals(ring: TableRing, g: guards.Guards = guards.DEFAULT) -> list[Ideal]:
    """Every left ideal: join-closure of the cyclic left ideals."""
    return _cached(
        ring, "left_ideals",
        lambda: _join_closure(
            ring, {left_ideal_closure(ring, [x]) for x in range(ring.order)}, g
        ),
    )


def two_sided_ideals(ring: TableRing, g: guards.Guards = guards.DEFAULT) -> list[Ideal]:
    return _cached(
        ring, "two_sided_ideals",
        lambda: [
            i for i in _join_closure(
                ring, {two_sided_closure(ring, [x]) for x in range(ring.order)}, g
            )
            if is_two_sided(ring, i)
        ],
    )


def is_left_ideal(ring: TableRing, xs) -> bool:
    xs = frozenset(xs)
    return 0 in xs and left_ideal_closure(ring, xs) == xs


def is_two_sided(ring: TableRing, xs) -> bool:
    return two_sided_closure(ring, xs) == frozenset(set(xs) | {0})


def minimal_nonzero_subideals(ring: TableRing, ideal: Ideal) -> list[Ideal]:
    inside = [j for j in all_left_ideals(ring) if len(j) > 1 and j <= ideal]
    return [j for j in inside if not any(k < j for k in inside)]


def is_essential(ring: TableRing, ideal: Ideal) -> bool:
    """Meets every nonzero left ideal; equivalently contains every minimal one."""
    return all(v <= ideal for v in minimal_nonzero_subideals(ring, frozenset(range(ring.order))))


def is_uniform(ring: TableRing, ideal: Ideal) -> bool:
    """Nonzero, and every two nonzero cyclic subideals intersect nontrivially."""
    if len(ideal) <= 1:
        return False
    cyclics = {left_ideal_closure(ring, [x]) for x in ideal if x != 0}
    cyclics = [c for c in cyclics if len(c) > 1]
    return all(len(a & b) > 1 for a in cyclics for b in cyclics)


def udim(ring: TableRing, ideal: Ideal | None = None) -> int:
    """Left uniform dimension of an ideal (default: the whole ring).

    Any non-extendable independent family of minimal nonzero subideals has
    essential direct sum, so a deterministic greedy sweep is exact.
    """
    if ideal is None:
        ideal = frozenset(range(ring.order))
    count = 0
    total = frozenset({0})
    for v in minimal_nonzero_subideals(ring, ideal):
        if len(v & total) == 1:  # v minimal: meets total trivially iff not inside
            total = _ideal_join(ring, total, v)
            count += 1
    return count


@dataclass(frozen=True)
class IdealFacts:
    essential: bool
    uniform: bool
    udim: int


def ideal_predicates(ring: TableRing, ideal: Ideal) -> IdealFacts:
    return IdealFacts(
        essential=is_essential(ring, ideal),
        uniform=is_uniform(ring, ideal),
        udim=udim(ring, ideal),
    )


def regular_on_ideal(ring: TableRing, ideal: Ideal, ambient: bool = False) -> frozenset:
    """Without ``ambient``: elements OF the ideal acting injectively on it by
    right multiplication.  With ``ambient``: elements of the whole ring acting
    injectively on a two-sided ideal."""
    members = sorted(ideal)
    size = len(members)
    if ambient:
        if not is_two_sided(ring, ideal):
            raise InputError("ambient regularity needs a two-sided ideal")
        candidates = range(ring.order)
    else:
        candidates = members
    if size == 0:
        raise InputError("regularity on the empty set")
    out = set()
    for r in candidates:
        images = {int(ring.mul[x, r]) for x in members}
        if len(images) == size:
            out.add(r)
    return frozenset(out)


# -- primes, radicals, semisimplicity ------------------------------------------


def is_prime_ideal(ring: TableRing, p: Ideal) -> bool:
    if len(p) == ring.order:
        return False
    inp = np.zeros(ring.order, dtype=bool)
    inp[list(p)] = True
    for a in range(ring.order):
        if inp[a]:
            continue
        reach = ring.mul[ring.mul[a], :]  # [r, b] = (a r) b
        absorbed = inp[reach].all(axis=0)
        if np.any(absorbed & ~inp):
            return False
    return True


def is_semiprime_ideal(ring: TableRing, p: Ideal) -> bool:
    if len(p) == ring.order:
        return False
    inp = np.zeros(ring.order, dtype=bool)
    inp[list(p)] = True
    for a in range(ring.order):
        if inp[a]:
            continue
        if inp[ring.mul[ring.mul[a], a]].all():  # a r a in p for all r
            return False
    return True


def min_primes_over(ring: TableRing, ideal: Ideal) -> list[Ideal]:
    primes = [p for p in two_sided_ideals(ring) if ideal <= p and is_prime_ideal(ring, p)]
    return [p for p in primes if not any(q < p for q in primes)]


def _additive_span(ring: TableRing, xs) -> Ideal:
    cur = {0} | set(xs)
    while True:
        arr = np.fromiter(sorted(cur), dtype=np.int64)
        nxt = set(ring.add[np.ix_(arr, arr)].ravel().tolist()) | cur
        if nxt == cur:
            return frozenset(cur)
        cur = nxt


def _ideal_product(ring: TableRing, a: Ideal, b: Ideal) -> Ideal:
    # additive span of pairwise products; two-sided when a and b are
    xs = np.fromiter(sorted(a), dtype=np.int64)
    ys = np.fromiter(sorted(b), dtype=np.int64)
    return _additive_span(ring, ring.mul[np.ix_(xs, ys)].ravel().tolist())


def is_nilpotent_ideal(ring: TableRing, ideal: Ideal) -> bool:
    cur = ideal
    for _ in range(ring.order + 1):
        if cur == frozenset({0}):
            return True
        cur = _ideal_product(ring, cur, ideal)
    return False


@dataclass(frozen=True)
class PrimeSpectrum:
    two_sided: tuple[Ideal, ...]
    primes: tuple[Ideal, ...]
    semiprime: tuple[Ideal, ...]
    prime_radical: Ideal
    nilradical: Ideal


def prime_spectrum(ring: TableRing) -> PrimeSpectrum:
    """Primes, semiprimes, prime radical; the radical is cross-asserted equal
    to the largest nilpotent ideal (finite rings are Artinian)."""

    def compute():
        ideals = two_sided_ideals(ring)
        primes = tuple(p for p in ideals if is_prime_ideal(ring, p))
        semis = tuple(p for p in ideals if is_semiprime_ideal(ring, p))
        minimal = [p for p in primes if not any(q < p for q in primes)]
        radical = frozenset(range(ring.order))
        for p in minimal:
            radical &= p
        nil = frozenset({0})
        for i in ideals:
            if is_nilpotent_ideal(ring, i):
                nil = _ideal_join(ring, nil, i)
        if not is_nilpotent_ideal(ring, nil):
            raise Falsification(f"{ring.name}: sum of nilpotent ideals not nilpotent")
        if nil != radical:
            raise Falsification(f"{ring.name}: prime radical != nilradical")
        return PrimeSpectrum(tuple(ideals), primes, semis, radical, nil)

    return _cached(ring, "prime_spectrum", compute)


@dataclass(frozen=True)
class SemisimpleReport:
    jacobson: Ideal
    semisimple: bool


def semisimplicity(ring: TableRing) -> SemisimpleReport:
    """Jacobson radical { a : 1 - r a is a unit for all r } and semisimplicity.

    Cross-asserted against the prime radical (finite => Artinian, so the two
    radicals agree)."""

    def compute():
        units = element_sets(ring)["units"]
        umask = np.zeros(ring.order, dtype=bool)
        umask[list(units)] = True
        jac = set()
        neg = np.asarray(ring.neg)
        for a in range(ring.order):
            candidates = ring.add[ring.one, neg[ring.mul[:, a]]]  # 1 - r a
            if umask[candidates].all():
                jac.add(a)
        jac = frozenset(jac)
        if jac != prime_spectrum(ring).prime_radical:
            raise Falsification(f"{ring.name}: Jacobson radical != prime radical")
        return SemisimpleReport(jacobson=jac, semisimple=jac == frozenset({0}))

    return _cached(ring, "semisimplicity", compute)


def is_simple(ring: TableRing) -> bool:
    return len(two_sided_ideals(ring)) == 2


def annihilator(ring: TableRing, xs, side: str) -> frozenset:
    """right: { r : X r = 0 }; left: { r : r X = 0 }."""
    members = sorted(set(xs))
    if side == "right":
        return frozenset(
            r for r in range(ring.order)
            if all(ring.mul[x, r] == 0 for x in members)
        )
    if side == "left":
        return frozenset(
            r for r in range(ring.order)
            if all(ring.mul[r, x] == 0 for x in members)
        )
    raise InputError(f"unknown side {side!r}")


def annihilator_family(ring: TableRing, side: str) -> frozenset[Ideal]:
    """All annihilators of subsets: the meet-closure of the one-element
    annihilators.  Finite, so every ascending chain stabilizes; the family is
    materialized to witness that."""
    singles = {annihilator(ring, [x], side) for x in range(ring.order)}
    singles.add(frozenset(range(ring.order)))  # ann of the empty set
    family = set(singles)
    work = list(family)
    while work:
        cur = work.pop()
        for other in list(family):
            meet = cur & other
            if meet not in family:
                family.add(meet)
                work.append(meet)
    return frozenset(family)


def quotient_ring(ring: TableRing, ideal: Ideal) -> tuple[TableRing, tuple[int, ...]]:
    """Coset ring modulo a two-sided ideal, with the projection map."""
    if not is_two_sided(ring, ideal):
        raise InputError("quotient needs a two-sided ideal")
    if len(ideal) == ring.order:
        raise InputError("quotient by the whole ring is not a unital ring")
    members = np.fromiter(sorted(ideal), dtype=np.int64)
    rep = ring.add[:, members].min(axis=1)
    reps = sorted(set(rep.tolist()))
    idx = {r: i for i, r in enumerate(reps)}
    proj = tuple(idx[int(rep[x])] for x in range(ring.order))
    qn = len(reps)
    qadd = [[idx[int(rep[ring.add[a, b]])] for b in reps] for a in reps]
    qmul = [[idx[int(rep[ring.mul[a, b]])] for b in reps] for a in reps]
    labels = [f"{ring.labels[r]}+I" for r in reps]
    quo = TableRing(qadd, qmul, idx[int(rep[ring.one])], labels=labels,
                    name=f"{ring.name}/{len(ideal)}")
    return quo, proj
