"""Hol(N) = N x| Aut(N) as a permutation group on the elements of N.

[eta, alpha] acts by mu -> eta * alpha(mu); the identity of N is point 0.
For the degree pq case the usual named generators are attached:
sigma, tau, alpha, beta, gamma, delta when N is cyclic, and
sigma, tau, alpha, beta, epsilon plus the vector-space model
(e1, e2, f, T, A, B) when N = C_p x| C_q.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from sympy import factorint

from .errors import NotInHolomorph, NotSubgroup
from .perm_core import Perm, PermGroup
from .sqfree import AutStructure, SquarefreeSpec, aut_structure, sophie_germain_params, units


@dataclass(frozen=True)
class HolElement:
    eta: int
    alpha: tuple[int, ...]

    def perm(self, spec: SquarefreeSpec) -> Perm:
        return hol_to_perm(spec, self)


def hol_to_perm(spec: SquarefreeSpec, h: HolElement) -> Perm:
    t = spec.mul_table
    return Perm(t[h.eta, np.asarray(h.alpha)].tolist())


def hol_product(spec: SquarefreeSpec, x: HolElement, y: HolElement) -> HolElement:
    """[eta, a][mu, b] = [eta a(mu), a b]."""
    a = np.asarray(x.alpha)
    b = np.asarray(y.alpha)
    return HolElement(int(spec.mul_table[x.eta, a[y.eta]]), tuple(a[b].tolist()))


@dataclass
class LabeledHolomorph:
    spec: SquarefreeSpec
    aut: AutStructure
    group: PermGroup
    labels: dict[str, Perm] = field(default_factory=dict)
    base_point: int = 0

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def aut_order(self) -> int:
        return self.aut.aut_order

    def perm_to_hol(self, perm: Perm) -> HolElement:
        spec = self.spec
        t = spec.mul_table
        eta = perm(0)
        inv_eta = int(np.flatnonzero(t[:, eta] == 0)[0]) if eta else 0
        alpha = t[inv_eta, np.asarray(perm.images)]
        if alpha.tobytes() not in self._aut_keys:
            raise NotInHolomorph(f"{perm!r} is not in Hol({spec.label()})")
        return HolElement(int(eta), tuple(alpha.tolist()))

    @property
    def _aut_keys(self):
        keys = self.__dict__.get("_aut_key_cache")
        if keys is None:
            keys = {f.astype(np.int64).tobytes() for f in self.aut.maps}
            self.__dict__["_aut_key_cache"] = keys
        return keys

    def translation(self, eta: int) -> Perm:
        return hol_to_perm(self.spec, HolElement(eta, tuple(range(self.n))))

    def automorphism(self, f: np.ndarray) -> Perm:
        return Perm(np.asarray(f).tolist())

    def regular_subgroup(self) -> PermGroup:
        gens = [self.translation(self.spec.index(1, 0)), self.translation(self.spec.index(0, 1))]
        return PermGroup(gens, degree=self.n)

    def aut_subgroup(self) -> PermGroup:
        return self.group.stabilizer(self.base_point)

    def generate(self, *names_or_perms) -> PermGroup:
        gens = [self.labels[x] if isinstance(x, str) else x for x in names_or_perms]
        return PermGroup(gens, degree=self.n)


def _unit_generators(e: int) -> list[int]:
    """A small generating set of the units mod e."""
    us = units(e)
    if e <= 2:
        return []
    gens: list[int] = []
    reached = {1}
    for s in us:
        if s in reached:
            continue
        gens.append(s)
        frontier = list(reached)
        while frontier:
            nxt = []
            for x in frontier:
                for gg in gens:
                    y = x * gg % e
                    if y not in reached:
                        reached.add(y)
                        nxt.append(y)
            frontier = nxt
        if len(reached) == len(us):
            break
    return gens


def build_holomorph(spec: SquarefreeSpec, cap: int | None = None) -> LabeledHolomorph:
    aut = aut_structure(spec)
    t = spec.mul_table
    sig, tau = spec.index(1, 0), spec.index(0, 1)
    gens = [Perm(t[sig].tolist()), Perm(t[tau].tolist()), Perm(aut.theta.tolist())]
    gens += [Perm(aut.phi[s].tolist()) for s in _unit_generators(spec.e)]
    group = PermGroup(gens, degree=spec.n, cap=cap)
    hol = LabeledHolomorph(spec, aut, group)
    if group.order != spec.n * aut.aut_order:
        raise AssertionError("holomorph order mismatch")
    hol.labels = _labels(hol) if aut.named else {}
    for name, perm in hol.labels.items():
        if perm not in group:
            raise AssertionError(f"label {name} outside Hol(N)")
    return hol


def _labels(hol: LabeledHolomorph) -> dict[str, Perm]:
    spec, named = hol.spec, hol.aut.named
    out = {name: Perm(f.tolist()) for name, f in named.items()}
    if spec.d == 1:
        q, p = sorted(factorint(spec.n))
        out["sigma"] = hol.translation(spec.index(q, 0))
        out["tau"] = hol.translation(spec.index(p, 0))
        return out
    p = spec.e
    g = spec.k
    sigma = hol.translation(spec.index(1, 0))
    eps = out["epsilon"]
    out["sigma"] = sigma
    out["tau"] = hol.translation(spec.index(0, 1))
    out["T"] = out["tau"]
    out["A"] = out["alpha"]
    out["B"] = out["beta"]
    out["e1"] = sigma
    out["e2"] = sigma * eps ** (g - 1)
    out["f"] = eps ** ((1 - g) % p)
    return out


# -- the F_p^2 x| R model of Hol(C_p x| C_q) ------------------------------------

@dataclass
class MatrixModel:
    """Hol(N) written as [v, U], v in F_p^2 and U = T^i A^j B^b diagonal."""

    q: int
    p: int
    g: int
    hol: LabeledHolomorph

    @property
    def T(self) -> np.ndarray:
        return np.diag([self.g, 1]) % self.p

    @property
    def A(self) -> np.ndarray:
        return np.diag([self.g, self.g]) % self.p

    @property
    def B(self) -> np.ndarray:
        return np.diag([self.p - 1, self.p - 1])

    @property
    def f(self) -> np.ndarray:
        return np.array([1, self.p - 1])

    def matrix(self, i: int, j: int, b: int) -> np.ndarray:
        p = self.p
        d1 = pow(self.g, i + j, p) * (-1) ** b
        d2 = pow(self.g, j, p) * (-1) ** b
        return np.diag([d1 % p, d2 % p])

    def vector_perm(self, v) -> Perm:
        x, y = (int(c) % self.p for c in v)
        lab = self.hol.labels
        return lab["e1"] ** x * lab["e2"] ** y

    def unit_perm(self, i: int, j: int, b: int) -> Perm:
        lab = self.hol.labels
        return lab["T"] ** (i % self.q) * lab["A"] ** (j % self.q) * lab["B"] ** (b % 2)

    def element(self, v, i: int = 0, j: int = 0, b: int = 0) -> Perm:
        """Permutation of [v, T^i A^j B^b]."""
        return self.vector_perm(v) * self.unit_perm(i, j, b)

    def product(self, x, y):
        """[v, U][w, V] = [v + U w, U V] on (v, (i, j, b)) tuples."""
        (v, (i, j, b)), (w, (k, l, c)) = x, y
        U = self.matrix(i, j, b)
        vw = (np.asarray(v) + U @ np.asarray(w)) % self.p
        return (tuple(int(a) for a in vw), ((i + k) % self.q, (j + l) % self.q, (b + c) % 2))

    def inverse_unit(self, x: int) -> int:
        return pow(x, -1, self.p)

    def geometric_sum(self, M: np.ndarray, terms: int) -> np.ndarray:
        acc = np.zeros((2, 2), dtype=np.int64)
        cur = np.eye(2, dtype=np.int64)
        for _ in range(terms):
            acc = (acc + cur) % self.p
            cur = (cur @ M) % self.p
        return acc

    def group(self, *gens) -> PermGroup:
        perms = [g if isinstance(g, Perm) else self.element(*g) for g in gens]
        return PermGroup(perms, degree=self.hol.n)


def metacyclic_spec(q: int) -> SquarefreeSpec:
    params = sophie_germain_params(q)
    p = params["p"]
    return SquarefreeSpec(p * q, p, q, params["g"])


def cyclic_spec(q: int) -> SquarefreeSpec:
    params = sophie_germain_params(q)
    n = params["p"] * q
    return SquarefreeSpec(n, n, 1, 1)


def matrix_model(q: int, hol: LabeledHolomorph | None = None) -> MatrixModel:
    params = sophie_germain_params(q)
    if hol is None:
        hol = build_holomorph(metacyclic_spec(q))
    elif hol.spec != metacyclic_spec(q):
        raise NotSubgroup("holomorph does not match the metacyclic model for this q")
    return MatrixModel(q, params["p"], params["g"], hol)


# -- holomorph of an arbitrary regular permutation group ------------------------

@dataclass
class RegularHolomorph:
    """Normaliser of a regular group N in Sym(n), built as <N, Aut(N)>.

    Used where N has no squarefree presentation (order 4 in the small-degree
    checks).  Aut(N) comes from the generic automorphism search.
    """

    regular: PermGroup
    group: PermGroup
    aut_order: int
    label: str = ""

    @property
    def n(self) -> int:
        return self.regular.degree


def holomorph_of_regular(N: PermGroup, label: str = "") -> RegularHolomorph:
    from .perm_core.isomorphism import SubgroupPair, aut_pair

    if not N.is_regular():
        raise NotSubgroup("holomorph_of_regular needs a regular group")
    auts = aut_pair(SubgroupPair(N, PermGroup.trivial(N.degree)), keep_maps=True)
    rows = N.rows
    elem_of_point = np.empty(N.degree, dtype=np.int64)
    elem_of_point[rows[:, 0]] = np.arange(N.order)
    gens = list(N.generators)
    for f in auts.maps:
        gens.append(Perm(rows[f[elem_of_point], 0].tolist()))
    group = PermGroup(gens, degree=N.degree)
    if group.order != N.order * auts.order:
        raise AssertionError("holomorph order mismatch")
    return RegularHolomorph(N, group, auts.order, label)
