"""Configurable resource guards.

Defaults are deliberate: hitting a guard raises GuardExceeded instead of
truncating, so runaway index growth or pathological inputs fail loudly.
Override via the OREQ_GUARDS environment variable, e.g.
``OREQ_GUARDS="fpart_index=128,ring_order=512"``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .errors import InputError


@dataclass(frozen=True)
class Guards:
    fpart_index: int = 64       # max matrix-unit row/column index in I1
    ratfunc_degree: int = 128   # max degree of any intermediate rational function
    ring_order: int = 256       # max finite-ring order for element scans
    ideal_count: int = 4096     # max enumerated ideals per ring
    maxden_order: int = 16      # max order for maximal-denominator enumeration
    iso_nodes: int = 500_000    # backtracking budget for ring isomorphism search


def _from_env(base: Guards) -> Guards:
    raw = os.environ.get("OREQ_GUARDS", "").strip()
    if not raw:
        return base
    overrides = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InputError(f"bad OREQ_GUARDS entry: {item!r}")
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in Guards.__dataclass_fields__:
            raise InputError(f"unknown guard {key!r}")
        try:
            overrides[key] = int(value)
        except ValueError as exc:
            raise InputError(f"bad guard value for {key!r}: {value!r}") from exc
    return replace(base, **overrides)


DEFAULT = _from_env(Guards())
