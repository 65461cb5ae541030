"""Materialised finite permutation groups."""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from ..config import TABLE_LIMIT, element_cap
from ..errors import CapExceeded, CoreNotTrivial, NotSubgroup
from . import ispace
from .perm import Perm, closure_array, index_dtype, lex_sort, point_dtype


class PermGroup:
    """A finite permutation group with every element held in memory.

    Elements are kept as rows of an integer array sorted lexicographically,
    so the identity is always element 0 and ``elements`` has a canonical
    order.  Groups up to ``TABLE_LIMIT`` elements lazily build a Cayley
    table; most structural queries then run on element indices.
    """

    def __init__(self, generators: Iterable[Perm], degree: int | None = None, cap: int | None = None):
        gens = tuple(generators)
        if degree is None:
            if not gens:
                raise ValueError("degree required for a group without generators")
            degree = gens[0].degree
        if any(g.degree != degree for g in gens):
            raise ValueError("generators of mixed degree")
        self.degree = degree
        self._rows = closure_array([g.array() for g in gens], degree, cap)
        self._gens = tuple(g for g in gens if not g.is_identity())
        self._parent = None

    @classmethod
    def from_rows(cls, rows: np.ndarray, generators: Sequence[Perm] | None = None, *,
                  sorted_rows: bool = False, parent=None) -> PermGroup:
        """Wrap an already closed element array (no closure is recomputed)."""
        self = cls.__new__(cls)
        rows = np.asarray(rows)
        self.degree = rows.shape[1]
        self._rows = rows if sorted_rows else lex_sort(rows)
        self._gens = None if generators is None else tuple(g for g in generators if not g.is_identity())
        self._parent = parent
        return self

    @classmethod
    def trivial(cls, degree: int) -> PermGroup:
        return cls((), degree=degree)

    @classmethod
    def symmetric(cls, degree: int) -> PermGroup:
        if degree <= 1:
            return cls.trivial(max(degree, 1))
        gens = [Perm.from_cycles(degree, (0, 1)), Perm.from_cycles(degree, tuple(range(degree)))]
        return cls(gens)

    # -- basic data -------------------------------------------------------

    @property
    def rows(self) -> np.ndarray:
        return self._rows

    @property
    def order(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return self.order

    @cached_property
    def elements(self) -> list[Perm]:
        return [Perm.from_array(r) for r in self._rows]

    def element(self, i: int) -> Perm:
        return Perm.from_array(self._rows[i])

    @property
    def generators(self) -> tuple[Perm, ...]:
        if self._gens is None:
            self._gens = tuple(self.element(i) for i in self.generator_indices)
        return self._gens

    @cached_property
    def generator_indices(self) -> list[int]:
        if self._gens is not None:
            return [int(i) for i in self.indices([g.array() for g in self._gens])]
        return _greedy_generators(self)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, perm: Perm) -> bool:
        if perm.degree != self.degree:
            return False
        return self.indices(perm.array()[None, :], check=True)[0] >= 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, PermGroup) and self.degree == other.degree
                and self.order == other.order and np.array_equal(self._rows, other._rows))

    def __hash__(self) -> int:
        return hash((self.degree, self._rows.tobytes()))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"

    # -- element lookup ---------------------------------------------------

    @cached_property
    def _base(self) -> list[int]:
        """Points whose images pin down an element uniquely."""
        m, n = self._rows.shape
        base: list[int] = []
        keys = np.zeros(m, dtype=np.int64)
        distinct = 1
        while distinct < m:
            best, best_count = None, distinct
            for pt in range(n):
                if pt in base:
                    continue
                count = len(np.unique(keys * n + self._rows[:, pt]))
                if count > best_count:
                    best, best_count = pt, count
            base.append(best)
            keys = keys * n + self._rows[:, best]
            distinct = best_count
        return base

    @cached_property
    def _key_index(self):
        n = self.degree
        base = self._base
        if len(base) and n ** len(base) >= 2**62:
            return None
        keys = self._encode(self._rows[:, base])
        order = np.argsort(keys, kind="stable")
        return keys[order], order

    def _encode(self, base_images: np.ndarray) -> np.ndarray:
        n = self.degree
        keys = np.zeros(base_images.shape[:-1], dtype=np.int64)
        for j in range(base_images.shape[-1]):
            keys = keys * n + base_images[..., j]
        return keys

    @cached_property
    def _bytes_index(self):
        return {r.tobytes(): i for i, r in enumerate(self._rows)}

    def indices(self, rows: np.ndarray, check: bool = False) -> np.ndarray:
        """Element indices of permutation rows; -1 marks non-members when ``check``."""
        rows = np.asarray(rows, dtype=self._rows.dtype).reshape(-1, self.degree)
        ki = self._key_index
        if ki is None:
            lookup = self._bytes_index
            return np.array([lookup.get(r.tobytes(), -1) for r in rows], dtype=np.int64)
        sorted_keys, order = ki
        keys = self._encode(rows[:, self._base])
        pos = np.searchsorted(sorted_keys, keys)
        pos = np.minimum(pos, len(sorted_keys) - 1)
        out = order[pos].astype(np.int64)
        hit = sorted_keys[pos] == keys
        if check:
            hit &= np.all(self._rows[out] == rows, axis=1)
        out[~hit] = -1
        return out

    def index(self, perm: Perm) -> int:
        i = int(self.indices(perm.array()[None, :], check=True)[0])
        if i < 0:
            raise NotSubgroup(f"{perm!r} is not an element of {self!r}")
        return i

    # -- Cayley table -----------------------------------------------------

    @property
    def has_table(self) -> bool:
        return self.order <= TABLE_LIMIT

    @cached_property
    def table(self) -> np.ndarray:
        m = self.order
        if m > TABLE_LIMIT:
            raise CapExceeded("Cayley table order", TABLE_LIMIT)
        if self._parent is not None:
            parent, idx = self._parent
            if "table" in parent.__dict__:
                pos = np.full(parent.order, -1, dtype=np.int64)
                pos[idx] = np.arange(m)
                sub = parent.table[np.ix_(idx, idx)]
                return pos[sub].astype(index_dtype(m))
        base = self._base
        rows = self._rows.astype(np.int64)
        base_img = rows[:, base]
        out = np.empty((m, m), dtype=index_dtype(m))
        chunk = max(1, 4_000_000 // max(1, m * max(1, len(base))))
        for start in range(0, m, chunk):
            stop = min(m, start + chunk)
            left = rows[start:stop]
            # (a*b)(x) = a(b(x)) evaluated on base points only
            prod = left[:, base_img]
            out[start:stop] = self._lookup_base_images(prod)
        return out

    def _lookup_base_images(self, base_images: np.ndarray) -> np.ndarray:
        ki = self._key_index
        if ki is None:
            raise CapExceeded("element key width", 62)
        sorted_keys, order = ki
        keys = self._encode(base_images)
        return order[np.searchsorted(sorted_keys, keys)]

    @cached_property
    def inv(self) -> np.ndarray:
        inverse_rows = np.argsort(self._rows, axis=1).astype(self._rows.dtype)
        return self.indices(inverse_rows)

    @cached_property
    def orders(self) -> np.ndarray:
        if self.has_table:
            return ispace.element_orders(self.table)
        return np.array([math.lcm(1, *(len(c) for c in self.element(i).cycles()))
                         for i in range(self.order)], dtype=np.int64)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*(int(o) for o in np.unique(self.orders)))

    # -- subgroups by index ---------------------------------------------------

    def subgroup(self, members, generators: Sequence[int] | None = None) -> PermGroup:
        """Subgroup given by an index mask or index list of this group's elements."""
        members = np.asarray(members)
        idx = np.flatnonzero(members) if members.dtype == bool else np.unique(members)
        gens = None if generators is None else [self.element(int(g)) for g in generators]
        return PermGroup.from_rows(self._rows[idx], gens, sorted_rows=True, parent=(self, idx))

    def mask_of(self, sub: PermGroup) -> np.ndarray:
        if sub.degree != self.degree:
            raise NotSubgroup("degree mismatch")
        if self._parent is None and sub._parent is not None and sub._parent[0] is self:
            mask = np.zeros(self.order, dtype=bool)
            mask[sub._parent[1]] = True
            return mask
        idx = self.indices(sub.rows, check=True)
        if (idx < 0).any():
            raise NotSubgroup(f"{sub!r} is not contained in {self!r}")
        mask = np.zeros(self.order, dtype=bool)
        mask[idx] = True
        return mask

    def closure_mask(self, gens, start=None) -> np.ndarray:
        return ispace.closure_mask(self.table, gens, start)

    def is_subgroup_of(self, other: PermGroup) -> bool:
        if self.degree != other.degree or other.order % self.order:
            return False
        return bool((other.indices(self._rows, check=True) >= 0).all())

    # -- actions ------------------------------------------------------------

    def orbit(self, x: int) -> list[int]:
        return sorted(set(self._rows[:, x].tolist()))

    def stabilizer(self, x: int) -> PermGroup:
        return self.subgroup(self._rows[:, x] == x)

    def is_transitive(self) -> bool:
        return len(np.unique(self._rows[:, 0])) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    # -- structure ----------------------------------------------------------

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for i, a in enumerate(gens) for b in gens[i + 1:])

    def center_order(self) -> int:
        if self.has_table:
            t = self.table
            ar = np.arange(self.order)
            mask = np.ones(self.order, dtype=bool)
            for g in self.generator_indices:
                mask &= t[ar, g] == t[g, ar]
            return int(mask.sum())
        gens = self.generators
        return sum(1 for x in self.elements if all(x * g == g * x for g in gens))

    def derived_subgroup(self) -> PermGroup:
        if self.has_table:
            mask, gens = ispace.derived_mask(self.table, self.inv, self.generator_indices)
            return self.subgroup(mask, gens)
        gens = list(self.generators)
        seeds = [a * b * a.inverse() * b.inverse() for i, a in enumerate(gens) for b in gens[i + 1:]]
        return normal_closure(self, [s for s in seeds if not s.is_identity()])

    def is_normal_subgroup(self, sub: PermGroup) -> bool:
        return all(g * h * g.inverse() in sub for g in self.generators for h in sub.generators)


def normal_closure(G: PermGroup, seeds: Sequence[Perm]) -> PermGroup:
    """Smallest normal subgroup of G containing ``seeds``, without a Cayley table."""
    if not seeds:
        return PermGroup.trivial(G.degree)
    gens = list(dict.fromkeys(seeds))
    H = PermGroup(gens, degree=G.degree)
    while True:
        new = []
        for g in G.generators:
            gi = g.inverse()
            for h in gens:
                c = g * h * gi
                if c not in H and c not in new:
                    new.append(c)
        if not new:
            return PermGroup.from_rows(H.rows, gens, sorted_rows=True)
        gens.extend(new)
        H = PermGroup(gens, degree=G.degree)


def _greedy_generators(G: PermGroup) -> list[int]:
    """A short generating list, preferring elements of large order."""
    if G.order == 1:
        return []
    if G.has_table:
        order = np.argsort(-G.orders, kind="stable")
        mask = np.zeros(G.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in order:
            if mask[x]:
                continue
            gens.append(int(x))
            mask = ispace.closure_mask(G.table, gens, start=None)
            if mask.all():
                break
        return gens
    gens = []
    current = PermGroup.trivial(G.degree)
    for i in range(G.order):
        p = G.element(i)
        if p in current:
            continue
        gens.append(i)
        current = PermGroup([G.element(j) for j in gens])
        if current.order == G.order:
            break
    return gens


# -- free functions mirroring the module contract ---------------------------

def orbit_stabilizer(G: PermGroup, x: int) -> tuple[list[int], PermGroup]:
    if not 0 <= x < G.degree:
        raise ValueError(f"point {x} outside degree {G.degree}")
    return G.orbit(x), G.stabilizer(x)


def core(G: PermGroup, H: PermGroup) -> PermGroup:
    """Largest normal subgroup of G contained in H."""
    mask = G.mask_of(H)
    t, inv = G.table, G.inv
    gens = G.generator_indices
    while True:
        idx = np.flatnonzero(mask)
        new = mask.copy()
        for g in gens:
            conj = t[t[g, idx], inv[g]]
            shifted = np.zeros_like(mask)
            shifted[conj] = True
            new &= shifted
        if new.sum() == mask.sum():
            return G.subgroup(mask)
        mask = new


def derived_series(G: PermGroup) -> list[PermGroup]:
    """G, G', G'', ... until the series is trivial or stops shrinking."""
    series = [G]
    while series[-1].order > 1:
        nxt = series[-1].derived_subgroup()
        if nxt.order == series[-1].order:
            break
        series.append(nxt)
    return series


def derived_length(G: PermGroup) -> int | None:
    """Derived length, or None if G is not soluble."""
    series = derived_series(G)
    if series[-1].order > 1:
        return None
    return len(series) - 1


def coset_action(G: PermGroup, H: PermGroup) -> PermGroup:
    """Left-multiplication action of G on the left cosets of H; coset H is point 0."""
    if core(G, H).order > 1:
        raise CoreNotTrivial("subgroup has a non-trivial core; the action is not faithful")
    t = G.table
    hmask = G.mask_of(H)
    hidx = np.flatnonzero(hmask)
    coset_of = np.full(G.order, -1, dtype=np.int64)
    reps = []
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        coset_of[t[g, hidx]] = len(reps)
        reps.append(g)
    reps = np.array(reps)
    images = []
    for g in G.generator_indices:
        images.append(Perm(coset_of[t[g, reps]].tolist()))
    if not images:
        return PermGroup.trivial(len(reps))
    return PermGroup(images)
