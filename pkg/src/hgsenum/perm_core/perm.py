"""Permutations of {0, ..., n-1} and generator closure."""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from ..config import element_cap
from ..errors import CapExceeded


class Perm:
    """An immutable permutation of ``range(degree)`` stored by its images.

    Products compose right to left: ``(a * b)(x) == a(b(x))``, so groups act
    on the left, matching ``[eta, alpha] . mu = eta * alpha(mu)``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> Perm:
        images = list(range(degree))
        for cyc in cycles:
            cyc = list(cyc)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                images[a] = b
        return cls(images)

    @classmethod
    def from_array(cls, row) -> Perm:
        return cls(row.tolist())

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        img = self.images
        return Perm(img[j] for j in other.images)

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            j = self.images[start]
            while j != start:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def array(self) -> np.ndarray:
        return np.asarray(self.images, dtype=point_dtype(self.degree))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: Perm) -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Perm<{self.degree}>{cyc or '()'}"


def point_dtype(degree: int):
    if degree <= 256:
        return np.uint8
    if degree <= 65536:
        return np.uint16
    return np.int64


def index_dtype(order: int):
    return np.int16 if order < 2**15 else np.int32


def lex_sort(rows: np.ndarray) -> np.ndarray:
    """Sort permutation rows lexicographically on their image arrays."""
    if len(rows) == 0:
        return rows
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def closure_array(generators: Sequence[np.ndarray], degree: int, cap: int | None = None) -> np.ndarray:
    """Elements of the group generated by ``generators`` as a lex-sorted array.

    Breadth-first on right multiplication by generators; a finite monoid
    generated by permutations is already a group, so inverses come for free.
    """
    cap = element_cap() if cap is None else cap
    dt = point_dtype(degree)
    ident = np.arange(degree, dtype=dt)
    gens = [np.asarray(g, dtype=dt) for g in generators]
    gens = [g for g in gens if not np.array_equal(g, ident)]
    seen = {ident.tobytes()}
    found = [ident[None, :]]
    frontier = ident[None, :]
    while len(frontier) and gens:
        fresh = []
        for g in gens:
            cand = frontier[:, g]
            for row in cand:
                key = row.tobytes()
                if key not in seen:
                    seen.add(key)
                    fresh.append(row)
            if len(seen) > cap:
                raise CapExceeded("group order", cap)
        frontier = np.array(fresh, dtype=dt).reshape(-1, degree)
        if len(frontier):
            found.append(frontier)
    return lex_sort(np.concatenate(found))


def closure(generators: Iterable[Perm], cap: int | None = None) -> list[Perm]:
    """Smallest composition-closed set containing ``generators`` and the identity."""
    gens = list(generators)
    if not gens:
        raise ValueError("closure needs at least one generator to fix the degree")
    degree = gens[0].degree
    if any(g.degree != degree for g in gens):
        raise ValueError("generators of mixed degree")
    if cap is not None and cap < 1:
        raise ValueError("cap must be >= 1")
    rows = closure_array([g.array() for g in gens], degree, cap)
    return [Perm.from_array(r) for r in rows]
