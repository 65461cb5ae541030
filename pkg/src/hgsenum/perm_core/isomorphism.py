"""Isomorphisms of groups that carry one chosen subgroup onto another.

For a transitive permutation group with point stabiliser G', an abstract
isomorphism G -> H taking G' onto H' is exactly an isomorphism of
permutation groups.  The search picks a short generating sequence of the
source, then backtracks over images of the generators.  Candidate images
must agree on an element signature (order, class size, stabiliser data);
partial assignments are pruned on the signatures of pairwise products and
then by building the induced map on the subgroup generated so far.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

import numpy as np

from . import ispace
from .group import PermGroup

_SIG_IDS: dict[tuple, int] = {}


def _intern(sig: tuple) -> int:
    i = _SIG_IDS.get(sig)
    if i is None:
        i = _SIG_IDS[sig] = len(_SIG_IDS)
    return i


@dataclass(eq=False)
class SubgroupPair:
    """A group together with a distinguished subgroup (usually a point stabiliser)."""

    ambient: PermGroup
    point_stabilizer: PermGroup

    @classmethod
    def at_point(cls, G: PermGroup, x: int = 0) -> SubgroupPair:
        return cls(G, G.stabilizer(x))

    @cached_property
    def stab_mask(self) -> np.ndarray:
        return self.ambient.mask_of(self.point_stabilizer)

    @property
    def order(self) -> int:
        return self.ambient.order

    @cached_property
    def _search(self) -> _SearchData:
        return _SearchData(self)

    @cached_property
    def fingerprint(self) -> tuple:
        """Invariants that any pair-isomorphism preserves."""
        sd = self._search
        hist = np.unique(sd.sig, return_counts=True)
        sig_hist = tuple(sorted((_SIG_TUPLES[int(s)], int(c)) for s, c in zip(*hist)))
        return (self.ambient.order, self.point_stabilizer.order, sig_hist)


_SIG_TUPLES: dict[int, tuple] = {}


class _SearchData:
    def __init__(self, pair: SubgroupPair):
        G = pair.ambient
        self.G = G
        self.T = G.table
        self.inv = G.inv
        self.m = G.order
        self.stab = pair.stab_mask
        orders = G.orders
        cls = ispace.conjugacy_class_ids(self.T, self.inv)
        ncls = int(cls.max()) + 1
        class_size = np.bincount(cls, minlength=ncls)
        class_stab = np.bincount(cls[self.stab], minlength=ncls)
        stab_power = self._stab_power(orders)
        sig = np.empty(self.m, dtype=np.int64)
        cache: dict[tuple, int] = {}
        for x in range(self.m):
            c = int(cls[x])
            t = (int(orders[x]), int(class_size[c]), bool(self.stab[x]), int(class_stab[c]), int(stab_power[x]))
            s = cache.get(t)
            if s is None:
                s = cache[t] = _intern(t)
                _SIG_TUPLES[s] = t
            sig[x] = s
        self.sig = sig
        self.orders = orders

    def _stab_power(self, orders):
        """Smallest k >= 1 with x^k in the distinguished subgroup."""
        T, S = self.T, self.stab
        ar = np.arange(self.m)
        out = np.zeros(self.m, dtype=np.int64)
        cur = ar.copy()
        todo = ar.copy()
        k = 1
        while len(todo):
            hit = S[cur]
            out[todo[hit]] = k
            todo, cur = todo[~hit], cur[~hit]
            cur = T[cur, todo].astype(np.int64)
            k += 1
        return out

    @cached_property
    def sig_counts(self) -> dict[int, int]:
        vals, counts = np.unique(self.sig, return_counts=True)
        return dict(zip(vals.tolist(), counts.tolist()))

    @cached_property
    def gen_sequence(self) -> list[int]:
        """Generators chosen to keep the candidate sets small."""
        T = self.T
        counts = self.sig_counts
        score = np.array([counts[int(s)] for s in self.sig])
        mask = np.zeros(self.m, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        while not mask.all():
            outside = np.flatnonzero(~mask)
            best = outside[score[outside] == score[outside].min()]
            pick, pick_size = None, -1
            for x in best[:24]:
                size = ispace.closure_mask(T, gens + [int(x)], start=mask).sum()
                if size > pick_size:
                    pick, pick_size = int(x), size
            gens.append(pick)
            mask = ispace.closure_mask(T, gens, start=mask)
        return gens

    @cached_property
    def levels(self) -> list[list[tuple[np.ndarray, np.ndarray, np.ndarray]]]:
        """For each generator prefix, a BFS tree of the subgroup it generates."""
        T = self.T
        out = []
        for i in range(len(self.gen_sequence)):
            gens = self.gen_sequence[: i + 1]
            seen = np.zeros(self.m, dtype=bool)
            seen[0] = True
            frontier = np.array([0], dtype=np.int64)
            lv = []
            while len(frontier):
                elems, parents, gpos = [], [], []
                for j, g in enumerate(gens):
                    nxt = T[frontier, g].astype(np.int64)
                    new = ~seen[nxt]
                    nxt_new, first = np.unique(nxt[new], return_index=True)
                    seen[nxt_new] = True
                    elems.append(nxt_new)
                    parents.append(frontier[new][first])
                    gpos.append(np.full(len(nxt_new), j))
                e = np.concatenate(elems)
                if len(e) == 0:
                    break
                lv.append((e, np.concatenate(parents), np.concatenate(gpos)))
                frontier = e
            out.append(lv)
        return out

    @cached_property
    def prefix_members(self) -> list[np.ndarray]:
        out = []
        for lv in self.levels:
            out.append(np.concatenate([np.array([0])] + [e for e, _, _ in lv]))
        return out


def _extend(src: _SearchData, dst: _SearchData, i: int, images: list[int]) -> np.ndarray | None:
    """Map on <x_0..x_i> induced by generator images, or None if it is not an injective hom."""
    img = np.full(src.m, -1, dtype=np.int64)
    img[0] = 0
    ys = np.asarray(images, dtype=np.int64)
    Td = dst.T
    for e, par, gp in src.levels[i]:
        img[e] = Td[img[par], ys[gp]]
    members = src.prefix_members[i]
    mapped = img[members]
    if not np.array_equal(src.sig[members], dst.sig[mapped]):
        return None
    Ts = src.T
    for j, x in enumerate(src.gen_sequence[: i + 1]):
        if not np.array_equal(img[Ts[members, x]], Td[mapped, ys[j]]):
            return None
    if len(np.unique(mapped)) != len(members):
        return None
    return img


def _search(a: SubgroupPair, b: SubgroupPair, find_all: bool) -> Iterator[np.ndarray]:
    if a.order != b.order or a.point_stabilizer.order != b.point_stabilizer.order:
        return
    if a.fingerprint != b.fingerprint:
        return
    src, dst = a._search, b._search
    xs = src.gen_sequence
    if not xs:
        yield np.zeros(1, dtype=np.int64)
        return
    cands = [np.flatnonzero(dst.sig == src.sig[x]) for x in xs]
    # signature of x_i x_j and x_j x_i for j < i, precomputed on the source side
    want = [[(src.sig[src.T[xs[i], xs[j]]], src.sig[src.T[xs[j], xs[i]]]) for j in range(i)]
            for i in range(len(xs))]
    k = len(xs)
    Td = dst.T

    def dfs(i, ys):
        c = cands[i]
        keep = np.ones(len(c), dtype=bool)
        for j in range(i):
            s1, s2 = want[i][j]
            keep &= dst.sig[Td[c, ys[j]]] == s1
            keep &= dst.sig[Td[ys[j], c]] == s2
        for y in c[keep]:
            trial = ys + [int(y)]
            img = _extend(src, dst, i, trial)
            if img is None:
                continue
            if i == k - 1:
                yield img
            else:
                yield from dfs(i + 1, trial)

    for img in dfs(0, []):
        yield img
        if not find_all:
            return


def pair_isomorphism(a: SubgroupPair, b: SubgroupPair) -> np.ndarray | None:
    """An isomorphism a.ambient -> b.ambient carrying stabiliser onto stabiliser.

    Returned as an index map: element i of ``a.ambient`` goes to element
    ``result[i]`` of ``b.ambient``.  None if no such isomorphism exists.
    """
    for img in _search(a, b, find_all=False):
        return img
    return None


def is_pair_isomorphic(a: SubgroupPair, b: SubgroupPair) -> bool:
    return pair_isomorphism(a, b) is not None


def pair_isomorphisms(a: SubgroupPair, b: SubgroupPair) -> Iterator[np.ndarray]:
    return _search(a, b, find_all=True)


@dataclass
class AutPairResult:
    order: int
    maps: list[np.ndarray] = field(repr=False, default_factory=list)


def aut_pair(a: SubgroupPair, keep_maps: bool = False) -> AutPairResult:
    """All automorphisms of a.ambient fixing the distinguished subgroup setwise."""
    count = 0
    maps = []
    for img in _search(a, a, find_all=True):
        count += 1
        if keep_maps:
            maps.append(img)
    return AutPairResult(count, maps)


def is_automorphism_map(G: PermGroup, img: np.ndarray) -> bool:
    T = G.table
    if sorted(img.tolist()) != list(range(G.order)):
        return False
    return bool(np.array_equal(img[T], T[img[:, None], img[None, :]]))
