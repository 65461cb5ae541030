"""Transitive subgroups of a holomorph and the Hopf-Galois counts they give.

A transitive subgroup M of Hol(N), with M' the stabiliser of 1_N, stands
for the permutation group (M, M').  Enumerated subgroups are grouped into
classes under pair-isomorphism; a class of size e' gives

    e(M, N) = |Aut(M, M')| * e' / |Aut(N)|

Hopf-Galois structures of type N on any extension realising (M, M').
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

from .errors import BadDegree, NonIntegerCount, NotSquarefree
from .holomorph import LabeledHolomorph, build_holomorph
from .perm_core import Perm, PermGroup, derived_length
from .perm_core.isomorphism import SubgroupPair, aut_pair, pair_isomorphism
from .perm_core.subgroups import SubgroupRecord, subgroup_records
from .sqfree import SquarefreeSpec, enumerate_specs, hol_div_check, is_squarefree


@dataclass(frozen=True)
class IsoClassKey:
    """Cheap invariants of (M, M'); equal keys are necessary for pair-isomorphism."""

    order: int
    stabilizer_order: int
    order_histogram: tuple
    center_order: int
    derived_length: int | None
    fingerprint: tuple


@dataclass(eq=False)
class TransitivePair:
    """A transitive group M with its stabiliser M' of point 0."""

    subgroup: PermGroup
    index: int = -1
    record: SubgroupRecord | None = field(default=None, repr=False)
    _acg: bool | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.subgroup.order

    @property
    def degree(self) -> int:
        return self.subgroup.degree

    @cached_property
    def stabilizer(self) -> PermGroup:
        return self.subgroup.stabilizer(0)

    @cached_property
    def pair(self) -> SubgroupPair:
        return SubgroupPair(self.subgroup, self.stabilizer)

    @cached_property
    def derived_length(self) -> int | None:
        return derived_length(self.subgroup)

    @cached_property
    def class_key(self) -> IsoClassKey:
        G = self.subgroup
        hist = np.unique(G.orders, return_counts=True)
        return IsoClassKey(
            order=G.order,
            stabilizer_order=self.stabilizer.order,
            order_histogram=tuple(zip(hist[0].tolist(), hist[1].tolist())),
            center_order=G.center_order(),
            derived_length=self.derived_length,
            fingerprint=self.pair.fingerprint,
        )

    @cached_property
    def aut_pair_order(self) -> int:
        return aut_pair(self.pair).order

    @property
    def acg(self) -> bool:
        if self._acg is None:
            self._acg = almost_classically_galois(self)
        return self._acg


def almost_classically_galois(m: TransitivePair, candidates: Iterable[PermGroup] | None = None) -> bool:
    """Whether M' has a normal complement in M.

    A normal complement C meets every conjugate of M' trivially, so it acts
    regularly; the search is over subgroups of M of order n.  ``candidates``
    may supply the order-n subgroups of an ambient group to test against.
    """
    M = m.subgroup
    n = m.degree
    if M.order == n:
        return True
    if candidates is None:
        candidates = [M.subgroup(r.idx) for r in subgroup_records(M) if r.order == n]
    for C in candidates:
        if C.order != n or not C.is_transitive():
            continue
        if not C.is_subgroup_of(M):
            continue
        if M.is_normal_subgroup(C):
            return True
    return False


@dataclass(eq=False)
class IsoClass:
    """One pair-isomorphism class of transitive subgroups."""

    members: list[TransitivePair]

    @property
    def representative(self) -> TransitivePair:
        return self.members[0]

    @property
    def e_prime(self) -> int:
        return len(self.members)

    @property
    def order(self) -> int:
        return self.representative.order

    @property
    def aut_pair_order(self) -> int:
        return self.representative.aut_pair_order

    @property
    def acg(self) -> bool:
        return self.representative.acg


@dataclass(frozen=True)
class HgsCount:
    representative: TransitivePair
    type_label: str
    e_prime: int
    aut_pair_order: int
    aut_n_order: int
    e: int


def count_hgs(cls: IsoClass, aut_n_order: int, type_label: str = "") -> HgsCount:
    num = cls.aut_pair_order * cls.e_prime
    if num % aut_n_order:
        raise NonIntegerCount(f"|Aut(M,M')| * e' = {num} is not divisible by |Aut(N)| = {aut_n_order}")
    return HgsCount(cls.representative, type_label, cls.e_prime, cls.aut_pair_order, aut_n_order,
                    num // aut_n_order)


def classify(pairs: Sequence[TransitivePair]) -> list[IsoClass]:
    """Partition by pair-isomorphism: bucket by key, confirm with an explicit isomorphism."""
    buckets: dict[IsoClassKey, list[IsoClass]] = {}
    classes: list[IsoClass] = []
    for m in pairs:
        reps = buckets.setdefault(m.class_key, [])
        for cls in reps:
            if pair_isomorphism(cls.representative.pair, m.pair) is not None:
                cls.members.append(m)
                break
        else:
            cls = IsoClass([m])
            reps.append(cls)
            classes.append(cls)
    return classes


# -- enumeration over a holomorph ----------------------------------------------

@dataclass(eq=False)
class Enumeration:
    """Transitive subgroups of one holomorph, classified, with HGS counts."""

    holomorph: object
    type_label: str
    n: int
    aut_n_order: int
    pairs: list[TransitivePair]
    classes: list[IsoClass]

    @cached_property
    def counts(self) -> list[HgsCount]:
        return [count_hgs(c, self.aut_n_order, self.type_label) for c in self.classes]

    @cached_property
    def key_index(self) -> dict[bytes, int]:
        """Ambient element-set key of each transitive subgroup -> position in ``pairs``."""
        return {m.record.key(): i for i, m in enumerate(self.pairs)}

    @cached_property
    def class_of(self) -> dict[int, int]:
        return {m.index: ci for ci, c in enumerate(self.classes) for m in c.members}

    def locate(self, G: PermGroup) -> int | None:
        """Index of the class containing the subgroup G of the holomorph, or None."""
        hol = self.holomorph.group
        idx = hol.indices(G.rows, check=True)
        if (idx < 0).any():
            return None
        key = (len(idx), np.sort(idx).astype(np.int32).tobytes())
        pos = self.key_index.get(key)
        return None if pos is None else self.class_of[pos]

    @property
    def num_groups(self) -> int:
        return len(self.pairs)

    @cached_property
    def abstract_classes(self) -> list[list[int]]:
        """Class indices grouped by isomorphism of the bare groups, stabilisers ignored.

        Two pair-isomorphism classes in one group here are the same abstract
        group acting in inequivalent ways.
        """
        groups: list[list[int]] = []
        bare: list[tuple[tuple, TransitivePair]] = []
        for ci, cls in enumerate(self.classes):
            rep = cls.representative
            k = rep.class_key
            key = (k.order, k.order_histogram, k.center_order, k.derived_length)
            for members, (other_key, other) in zip(groups, bare):
                if other_key == key and abstractly_isomorphic(other.subgroup, rep.subgroup):
                    members.append(ci)
                    break
            else:
                groups.append([ci])
                bare.append((key, rep))
        return groups


def power_conjugacy_histogram(G: PermGroup) -> tuple:
    """Isomorphism invariant: for each x, how many y satisfy x y x^-1 = y^k, by k.

    Element orders and class sizes cannot tell apart C_p^2 : C_q for actions
    with different eigenvalue ratios; this invariant can.
    """
    t, inv, orders = G.table.astype(np.int64), G.inv, G.orders
    m = G.order
    exp = G.exponent
    powers = np.empty((m, exp), dtype=np.int64)
    powers[:, 0] = int(np.flatnonzero(orders == 1)[0])
    for j in range(1, exp):
        powers[:, j] = t[powers[:, j - 1], np.arange(m)]
    per_x = Counter()
    for x in range(m):
        conj = t[t[x], inv[x]]
        hit = powers == conj[:, None]
        k = np.where(hit.any(axis=1), hit.argmax(axis=1), -1)
        hist = np.unique(np.stack([orders, k]), axis=1, return_counts=True)
        per_x[(int(orders[x]), tuple(map(tuple, hist[0].T.tolist())), tuple(hist[1].tolist()))] += 1
    return tuple(sorted(per_x.items()))


def abstractly_isomorphic(G: PermGroup, H: PermGroup) -> bool:
    """Isomorphism of the bare groups: invariants first, then an explicit search."""
    if G.order != H.order:
        return False
    if power_conjugacy_histogram(G) != power_conjugacy_histogram(H):
        return False
    a = SubgroupPair(G, PermGroup.trivial(G.degree))
    b = SubgroupPair(H, PermGroup.trivial(H.degree))
    return pair_isomorphism(a, b) is not None


def transitive_subgroups(H, cap: int | None = None) -> list[TransitivePair]:
    """Every transitive subgroup of the holomorph H (any object with ``group`` and ``n``)."""
    G = H.group
    n = H.n
    recs = subgroup_records(G, cap)
    rows = G.rows
    out = []
    for r in recs:
        if r.order % n or len(np.unique(rows[r.idx, 0])) != n:
            continue
        out.append(TransitivePair(G.subgroup(r.idx, r.gens), len(out), r))
    regular = [m.subgroup for m in out if m.order == n]
    for m in out:
        m._acg = _acg_from_regular(m, regular, G)
    return out


def _acg_from_regular(m: TransitivePair, regular: list[PermGroup], G: PermGroup) -> bool:
    if m.order == m.degree:
        return True
    mask = m.record.mask(G.order)
    t, inv = G.table, G.inv
    gens = m.record.gens
    for C in regular:
        cmask = G.mask_of(C)
        if not mask[cmask].all():
            continue
        cidx = np.flatnonzero(cmask)
        if all(cmask[t[t[g, cidx], inv[g]]].all() for g in gens):
            return True
    return False


def enumerate_holomorph(H, type_label: str | None = None, cap: int | None = None) -> Enumeration:
    pairs = transitive_subgroups(H, cap)
    classes = classify(pairs)
    if type_label is None:
        type_label = H.spec.label() if isinstance(H, LabeledHolomorph) else getattr(H, "label", "")
    return Enumeration(H, type_label, H.n, H.aut_order, pairs, classes)


def enumerate_spec(spec: SquarefreeSpec, cap: int | None = None) -> Enumeration:
    return enumerate_holomorph(build_holomorph(spec, cap), cap=cap)


def match_classes(a: Enumeration, b: Enumeration) -> list[tuple[int, int]]:
    """Pairs (i, j) with class i of ``a`` pair-isomorphic to class j of ``b``."""
    out = []
    for i, ca in enumerate(a.classes):
        for j, cb in enumerate(b.classes):
            ra, rb = ca.representative, cb.representative
            if ra.class_key != rb.class_key:
                continue
            if pair_isomorphism(ra.pair, rb.pair) is not None:
                out.append((i, j))
    return out


# -- realisability constructions -----------------------------------------------

@dataclass
class WreathWitness:
    n: int
    p: int
    m: int
    group: PermGroup
    derived_length: int | None
    transitive: bool
    p_cubed_divides: bool
    hol_orders: dict[str, int]
    divides_no_holomorph: bool

    @property
    def certified(self) -> bool:
        return self.transitive and self.derived_length == 2 and self.divides_no_holomorph


def wreath_group(n: int) -> tuple[PermGroup, int, int]:
    """C_p wr C_m acting on C_p x C_m (n = pm, p the largest prime), roles swapped when m = 2.

    Point (a, b) is numbered b * k + a where k is the size of the base
    cycle; sigma_0 moves a along its cycle on the fibre b = 0 and tau
    shifts b.
    """
    if n <= 6 or not is_squarefree(n) or len(factorint(n)) < 2:
        raise BadDegree(f"need a composite squarefree degree above 6, got {n}")
    p = max(factorint(n))
    m = n // p
    k, width = (p, m) if m >= 3 else (2, p)
    sigma0 = list(range(n))
    for a in range(k):
        sigma0[a] = (a + 1) % k
    tau = [((b + 1) % width) * k + a for b in range(width) for a in range(k)]
    return PermGroup([Perm(sigma0), Perm(tau)], degree=n), p, m


def wreath_counterexample(n: int) -> WreathWitness:
    """A transitive metabelian group of degree n that no holomorph of degree n contains."""
    G, p, m = wreath_group(n)
    hol_orders = {}
    for spec in enumerate_specs(n):
        hol_orders[spec.label()], _ = hol_div_check(spec)
    divides_none = all(h % G.order for h in hol_orders.values())
    return WreathWitness(n, p, m, G, derived_length(G), G.is_transitive(),
                         G.order % p**3 == 0, hol_orders, divides_none)


@dataclass
class Verdict:
    status: str  # "yes", "no" or "maybe"
    reason: str
    witness: str | None = None

    def __str__(self) -> str:
        return self.status if self.status == "yes" else f"{self.status}({self.reason})"


def realizability_filter(G: SubgroupPair | PermGroup, n: int | None = None,
                         resolve_limit: int = 12_000) -> Verdict:
    """Can (G, G_0) be realised by some Hopf-Galois structure of squarefree degree n?

    Necessary conditions first: G soluble of derived length at most 4, and
    |G| dividing some |Hol(N)|.  If they hold and every candidate holomorph
    has at most ``resolve_limit`` elements, the answer is settled by
    looking for a pair-isomorphic transitive subgroup in each Hol(N).
    """
    pair = G if isinstance(G, SubgroupPair) else SubgroupPair.at_point(G)
    M = pair.ambient
    n = M.degree if n is None else n
    if not is_squarefree(n):
        raise NotSquarefree(f"{n} is not squarefree")
    if M.degree != n or not M.is_transitive():
        raise BadDegree("G must be transitive of the given degree")
    dl = derived_length(M)
    if dl is None or dl > 4:
        return Verdict("no", "dl>4" if dl else "insoluble, dl>4")
    specs = [s for s in enumerate_specs(n) if (n * s.aut_order) % M.order == 0]
    if not specs:
        return Verdict("no", "order")
    if any(n * s.aut_order > resolve_limit for s in specs):
        return Verdict("maybe", "holomorph too large to search")
    target = TransitivePair(M)
    for spec in specs:
        H = build_holomorph(spec)
        for m in transitive_subgroups(H):
            if m.order != M.order or m.class_key != target.class_key:
                continue
            if pair_isomorphism(m.pair, pair) is not None:
                return Verdict("yes", "embedding", spec.label())
    return Verdict("no", "embedding")
