"""Enumeration of every subgroup of a materialised group.

Two independent routes:

* ``cyclic_extension`` -- for soluble groups.  Every non-trivial subgroup H
  of a soluble group has a normal subgroup K of prime index, so H = <K, x>
  for some x normalising K with x^p in K.  Starting from the trivial group
  and extending each found subgroup by such elements reaches everything.
* ``brute_joins`` -- any group, small orders only.  Subgroups are built by
  joining one element at a time onto subgroups already found (so pairs,
  triples, ... of generators), skipping elements of double cosets already
  tried.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sympy import primefactors

from ..config import subgroup_cap
from ..errors import CapExceeded, NotSoluble
from . import ispace
from .group import PermGroup

BRUTE_ORDER_LIMIT = 1000


@dataclass(frozen=True)
class SubgroupRecord:
    """A subgroup of an ambient group, as sorted ambient element indices."""

    idx: np.ndarray
    gens: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.idx)

    def mask(self, m: int) -> np.ndarray:
        out = np.zeros(m, dtype=bool)
        out[self.idx] = True
        return out

    def key(self) -> tuple[int, bytes]:
        return (len(self.idx), self.idx.astype(np.int32).tobytes())


def _finish(found: dict, cap: int) -> list[SubgroupRecord]:
    if len(found) > cap:
        raise CapExceeded("subgroup count", cap)
    recs = [SubgroupRecord(np.flatnonzero(mask), tuple(gens)) for mask, gens in found.values()]
    recs.sort(key=lambda r: (r.order, r.idx.tolist()))
    return recs


def is_soluble(G: PermGroup) -> bool:
    series = ispace.derived_series_masks(G.table, G.inv, G.generator_indices)
    return series[-1][0].sum() == 1


def cyclic_extension(G: PermGroup, cap: int | None = None) -> list[SubgroupRecord]:
    cap = subgroup_cap() if cap is None else cap
    if not is_soluble(G):
        raise NotSoluble(f"{G!r} is not soluble")
    t, inv = G.table, G.inv
    m = G.order
    ar = np.arange(m)
    powers = {p: ispace.power_map(t, p) for p in primefactors(m)}
    trivial = np.zeros(m, dtype=bool)
    trivial[0] = True
    found = {ispace.mask_key(trivial): (trivial, [])}
    queue = [(trivial, [])]
    while queue:
        K, kgens = queue.pop()
        kidx = np.flatnonzero(K)
        norm = np.ones(m, dtype=bool)
        for k in kgens:
            norm &= K[t[t[ar, k], inv]]
        cand = norm & ~K
        prime_of = np.zeros(m, dtype=np.int64)
        for p, pw in powers.items():
            hit = cand & K[pw] & (prime_of == 0)
            prime_of[hit] = p
        cand &= prime_of > 0
        covered = K.copy()
        while True:
            rest = np.flatnonzero(cand & ~covered)
            if len(rest) == 0:
                break
            x = int(rest[0])
            H = K.copy()
            xi = x
            for _ in range(prime_of[x] - 1):
                H[t[kidx, xi]] = True
                xi = int(t[xi, x])
            covered |= H
            key = ispace.mask_key(H)
            if key not in found:
                hgens = kgens + [x]
                found[key] = (H, hgens)
                queue.append((H, hgens))
                if len(found) > cap:
                    raise CapExceeded("subgroup count", cap)
    return _finish(found, cap)


def brute_joins(G: PermGroup, cap: int | None = None, order_limit: int = BRUTE_ORDER_LIMIT) -> list[SubgroupRecord]:
    cap = subgroup_cap() if cap is None else cap
    m = G.order
    if m > order_limit:
        raise CapExceeded("brute-force subgroup search order", order_limit)
    t = G.table
    orders = G.orders
    trivial = np.zeros(m, dtype=bool)
    trivial[0] = True
    found = {ispace.mask_key(trivial): (trivial, [])}
    queue = [(trivial, [])]
    while queue:
        K, kgens = queue.pop()
        kidx = np.flatnonzero(K)
        tried = K.copy()
        for x in range(m):
            if tried[x]:
                continue
            # <K, k x^j k'> = <K, x> whenever gcd(j, ord x) = 1
            xo = int(orders[x])
            xi = x
            for j in range(1, xo):
                if np.gcd(j, xo) == 1:
                    left = t[kidx, xi]
                    tried[t[left][:, kidx].ravel()] = True
                xi = int(t[xi, x])
            H = ispace.closure_mask(t, kgens + [x], start=K)
            key = ispace.mask_key(H)
            if key not in found:
                hgens = kgens + [x]
                found[key] = (H, hgens)
                queue.append((H, hgens))
                if len(found) > cap:
                    raise CapExceeded("subgroup count", cap)
    return _finish(found, cap)


def subgroup_records(G: PermGroup, cap: int | None = None) -> list[SubgroupRecord]:
    """Every subgroup of G exactly once, sorted by (order, element indices)."""
    try:
        return cyclic_extension(G, cap)
    except NotSoluble:
        if G.order > BRUTE_ORDER_LIMIT:
            raise
        return brute_joins(G, cap)


def all_subgroups(G: PermGroup, cap: int | None = None) -> list[PermGroup]:
    return [G.subgroup(r.idx, r.gens) for r in subgroup_records(G, cap)]
