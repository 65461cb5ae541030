"""Brute-force Hopf-Galois counts at tiny degree.

For a transitive group G on X, the Hopf-Galois structures on a G-extension
correspond to regular subgroups of Sym(X) normalised by G.  At degree <= 7
these can be listed outright: every group of order at most 7 is generated
by two elements, and a regular subgroup is made of fixed-point-free
elements all of whose cycles have one length.  The result is compared with
the count obtained inside Hol(N).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import CapExceeded, DegreeTooLarge
from .holomorph import build_holomorph, holomorph_of_regular
from .perm_core import Perm, PermGroup
from .perm_core.isomorphism import SubgroupPair, aut_pair, pair_isomorphism
from .perm_core.subgroups import subgroup_records
from .sqfree import build_group, enumerate_specs, is_squarefree
from .transitive import TransitivePair, classify, transitive_subgroups

DEGREE_CAP = 7


def _check_degree(n: int) -> None:
    if n > DEGREE_CAP:
        raise DegreeTooLarge(f"degree {n} is above the oracle limit {DEGREE_CAP}")


def group_types(n: int) -> list[tuple[str, PermGroup]]:
    """One regular representative per isomorphism type of group of order n (n <= 7)."""
    _check_degree(n)
    if is_squarefree(n):
        out = []
        for spec in enumerate_specs(n):
            label = spec.label() if spec.d > 1 or n > 1 else "C_1"
            out.append((label, build_group(spec)))
        return out
    if n == 4:
        c4 = PermGroup([Perm([1, 2, 3, 0])])
        v4 = PermGroup([Perm([1, 0, 3, 2]), Perm([2, 3, 0, 1])])
        return [("C_4", c4), ("C_2xC_2", v4)]
    raise DegreeTooLarge(f"no type list for order {n}")


def _pair(G) -> SubgroupPair:
    return G if isinstance(G, SubgroupPair) else SubgroupPair.at_point(G)


def _semiregular(n: int) -> list[Perm]:
    out = []
    for images in itertools.permutations(range(n)):
        x = Perm(list(images))
        lengths = {len(c) for c in x.cycles()}
        if x.is_identity() or (len(lengths) == 1 and all(images[i] != i for i in range(n))):
            out.append(x)
    return out


@lru_cache(maxsize=None)
def _regular_subgroups(n: int) -> tuple[PermGroup, ...]:
    elems = _semiregular(n)
    semi = {x.images for x in elems}
    found: dict[bytes, PermGroup] = {}
    for a, b in itertools.combinations_with_replacement(elems, 2):
        # every element of a regular group is semiregular; test the cheap products first
        if (a * b).images not in semi or (a * b.inverse()).images not in semi:
            continue
        try:
            H = PermGroup([a, b], degree=n, cap=n)
        except CapExceeded:  # closure grew past n: not regular
            continue
        if H.order == n and H.is_transitive():
            found.setdefault(H.rows.tobytes(), H)
    return tuple(found[k] for k in sorted(found))


def regular_subgroups(n: int) -> list[PermGroup]:
    """Every regular subgroup of Sym(n), from all one- and two-element generating sets."""
    _check_degree(n)
    return list(_regular_subgroups(n))


def _type_of(N: PermGroup, types: list[tuple[str, PermGroup]]) -> str:
    trivial = PermGroup.trivial(N.degree)
    for label, R in types:
        if R.order == N.order and pair_isomorphism(SubgroupPair(R, PermGroup.trivial(R.degree)),
                                                     SubgroupPair(N, trivial)) is not None:
            return label
    raise AssertionError("regular subgroup of unknown type")


def regular_subgroups_normalized(G, degree_cap: int = DEGREE_CAP) -> dict[str, int]:
    """Regular N <= Sym(X) normalised by G, counted per isomorphism type of N."""
    pair = _pair(G)
    M = pair.ambient
    n = M.degree
    if n > degree_cap:
        raise DegreeTooLarge(f"degree {n} is above the oracle limit {degree_cap}")
    types = group_types(n)
    counts = {label: 0 for label, _ in types}
    gens = list(M.generators)
    for N in regular_subgroups(n):
        if all(all(g * x * g.inverse() in N for x in N.generators) for g in gens):
            counts[_type_of(N, types)] += 1
    return counts


def formula_count(G, label: str, N: PermGroup) -> tuple[int, int, int, int]:
    """(e, e', |Aut(G,G')|, |Aut(N)|) computed inside Hol(N)."""
    pair = _pair(G)
    target = TransitivePair(pair.ambient)
    n = N.degree
    specs = {s.label() if s.d > 1 or n > 1 else "C_1": s for s in enumerate_specs(n)} if is_squarefree(n) else {}
    H = build_holomorph(specs[label]) if label in specs else holomorph_of_regular(N, label)
    e_prime = 0
    for m in transitive_subgroups(H):
        if m.order != target.order or m.class_key != target.class_key:
            continue
        if pair_isomorphism(target.pair, m.pair) is not None:
            e_prime += 1
    a = aut_pair(target.pair).order
    num = a * e_prime
    if num % H.aut_order:
        from .errors import NonIntegerCount

        raise NonIntegerCount(f"{num} not divisible by {H.aut_order}")
    return num // H.aut_order, e_prime, a, H.aut_order


@dataclass
class OracleResult:
    degree: int
    group_order: int
    oracle: dict[str, int] = field(default_factory=dict)
    formula: dict[str, int] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.oracle == self.formula


def verify_count_formula(G, type_label: str | None = None) -> OracleResult:
    """Count Hopf-Galois structures both ways, for one type or every type of order n."""
    pair = _pair(G)
    n = pair.ambient.degree
    _check_degree(n)
    types = group_types(n)
    if type_label is not None:
        types = [t for t in types if t[0] == type_label]
        if not types:
            raise KeyError(type_label)
    oracle = regular_subgroups_normalized(pair)
    res = OracleResult(n, pair.ambient.order)
    for label, N in types:
        res.oracle[label] = oracle[label]
        res.formula[label] = formula_count(pair, label, N)[0]
    return res


@lru_cache(maxsize=None)
def _transitive_groups(n: int) -> tuple[PermGroup, ...]:
    S = PermGroup.symmetric(n)
    rows = S.rows
    pairs = []
    for r in subgroup_records(S):
        if len(np.unique(rows[r.idx, 0])) == n:
            pairs.append(TransitivePair(S.subgroup(r.idx, r.gens), len(pairs), r))
    return tuple(c.representative.subgroup for c in classify(pairs))


def transitive_groups(n: int) -> list[PermGroup]:
    """One representative per conjugacy class of transitive subgroups of Sym(n)."""
    _check_degree(n)
    return list(_transitive_groups(n))
