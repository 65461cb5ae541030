"""Closed-form catalogue of transitive subgroups of Hol(N), |N| = pq, p = 2q + 1.

Rows are generated from formulas in q (with p, r, s, sigma_0(s) derived
from it).  Every row also carries explicit generators for each group it
counts, so a cross-check can rebuild the groups inside the holomorph and
compare them, class by class, with the generic enumeration.

Metacyclic generators use the vector-space model: a generator is
``(v, i, j, b)`` meaning [v, T^i A^j B^b] with v in F_p^2.  Cyclic
generators are words in the named holomorph elements.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import divisors

from .holomorph import LabeledHolomorph, MatrixModel
from .perm_core import Perm, PermGroup
from .sqfree import sophie_germain_params


@dataclass(frozen=True)
class StructureInvariants:
    """What a structure label pins down: order, commutativity and centre order."""

    order: int
    abelian: bool
    center_order: int | None = None


@dataclass
class Reading:
    """An alternative printed form of a row (label or generators) to be tested."""

    label: str
    invariants: StructureInvariants | None = None
    recipes: list = field(default_factory=list)


@dataclass
class CatalogRow:
    table: str
    key: str
    params: dict
    order: int
    structure: str
    num_groups: int
    aut_pair_order: int | None
    hgs_cyclic: int | None
    hgs_nonabelian: int | None
    acg: bool
    invariants: StructureInvariants | None = field(default=None, repr=False)
    recipes: list = field(default_factory=list, repr=False)
    readings: list[Reading] = field(default_factory=list, repr=False)
    notes: list[str] = field(default_factory=list, repr=False)
    # both-types rows point at one row of each single-type catalogue
    links: dict = field(default_factory=dict, repr=False)

    def as_dict(self) -> dict:
        return {
            "table": self.table,
            "key": self.key,
            "params": dict(self.params),
            "order": self.order,
            "structure": self.structure,
            "num_groups": self.num_groups,
            "aut_pair_order": self.aut_pair_order,
            "hgs": {"cyclic": self.hgs_cyclic, "nonabelian": self.hgs_nonabelian},
            "acg": self.acg,
        }


def _params(q: int) -> dict:
    return sophie_germain_params(q)


# -- cyclic N ----------------------------------------------------------------

def _cyclic_structure(key: str, c: int, d: int, P: dict) -> tuple[str, StructureInvariants]:
    p, q = P["p"], P["q"]
    m = 2**c * d
    inner = f"C_{q}:C_{m}"
    if key == "A":
        order = 2 * m * p * q * q
        if (c, d) == (0, 1):
            return f"(C_{p}:C_{2*q})xC_{q}", StructureInvariants(order, False, q)
        if (c, d) == (1, 1):
            return f"(C_{p}:C_{2*q})xD_{2*q}", StructureInvariants(order, False, 1)
        return f"(C_{p}:C_{2*q})x({inner})", StructureInvariants(order, False, 1)
    if key == "B":
        order = m * p * q * q
        if (c, d) == (0, 1):
            return f"(C_{p}:C_{q})xC_{q}", StructureInvariants(order, False, q)
        if (c, d) == (1, 1):
            return f"(C_{p}:C_{q})xD_{2*q}", StructureInvariants(order, False, 1)
        return f"(C_{p}:C_{q})x({inner})", StructureInvariants(order, False, 1)
    if key == "C":
        return f"C_{p*q}:C_{m*q}", StructureInvariants(m * p * q * q, False, 1)
    if key == "D":
        order = 2 * m * p * q
        if (c, d) == (0, 1):
            return f"D_{2*p}xC_{q}", StructureInvariants(order, False, q)
        if (c, d) == (1, 1):
            return f"D_{2*p}xD_{2*q}", StructureInvariants(order, False, 1)
        return f"D_{2*p}x({inner})", StructureInvariants(order, False, 1)
    if key == "E":
        order = m * p * q
        if (c, d) == (0, 1):
            return f"C_{p*q}", StructureInvariants(order, True, order)
        if (c, d) == (1, 1):
            return f"C_{p}xD_{2*q}", StructureInvariants(order, False, p)
        return f"C_{p}x({inner})", StructureInvariants(order, False, p)
    if key == "F":
        order = m * p * q
        if (c, d) == (1, 1):
            return f"D_{2*p*q}", StructureInvariants(order, False, 1)
        return f"C_{p*q}:C_{m}", StructureInvariants(order, False, 1)
    raise KeyError(key)


def cyclic_catalog(q: int) -> list[CatalogRow]:
    """Transitive subgroups of Hol(C_pq), one row per permutation-group class."""
    P = _params(q)
    p, r, s = P["p"], P["r"], P["s"]
    aut_n = (p - 1) * (q - 1)
    rows = []
    # subgroup of <beta, gamma> and of <delta> picked by (c, d)
    two_part = {
        "A": lambda c: [(("beta", 1),), (("gamma", 2 ** (r - c)),)],
        "B": lambda c: [(("gamma", 2 ** (r - c)),)],
        "C": lambda c: [(("beta", 1), ("gamma", 2 ** (r - c)))],
    }
    for key, with_alpha, lo in (("A", True, 0), ("B", True, 0), ("C", True, 1),
                                ("D", False, 0), ("E", False, 0), ("F", False, 1)):
        base = {"D": "A", "E": "B", "F": "C"}.get(key, key)
        for c in range(lo, r + 1):
            for d in divisors(s):
                gens = [(("sigma", 1),), (("tau", 1),)]
                if with_alpha:
                    gens.append((("alpha", 1),))
                gens += two_part[base](c)
                gens.append((("delta", s // d),))
                label, inv = _cyclic_structure(key, c, d, P)
                rows.append(CatalogRow(
                    table="cyclic", key=f"({key}) c={c} d={d}", params={"c": c, "d": d},
                    order=inv.order, structure=label, num_groups=1, aut_pair_order=aut_n,
                    hgs_cyclic=1, hgs_nonabelian=None, acg=True, invariants=inv, recipes=[gens]))
    g_recipes = [[(("sigma", 1),), (("tau", 1), ("alpha", t)), (("beta", 1),)] for t in range(1, q)]
    rows.append(CatalogRow(
        table="cyclic", key="(G)", params={"t": f"1..{q-1}"}, order=2 * p * q,
        structure=f"C_{p}:C_{2*q}", num_groups=q - 1, aut_pair_order=p - 1, hgs_cyclic=1,
        hgs_nonabelian=None, acg=True, invariants=StructureInvariants(2 * p * q, False, 1),
        recipes=g_recipes))
    h_recipes = [[(("sigma", 1),), (("tau", 1), ("alpha", t))] for t in range(1, q)]
    rows.append(CatalogRow(
        table="cyclic", key="(H)", params={"t": f"1..{q-1}"}, order=p * q,
        structure=f"C_{p}:C_{q}", num_groups=q - 1, aut_pair_order=p * (p - 1), hgs_cyclic=p,
        hgs_nonabelian=None, acg=True, invariants=StructureInvariants(p * q, False, 1),
        recipes=h_recipes))
    return rows


def cyclic_class_total(q: int) -> int:
    P = _params(q)
    return (6 * P["r"] + 4) * P["sigma0_s"] + 2


# -- metacyclic N --------------------------------------------------------------

def _inv(x: int, p: int) -> int:
    return pow(x % p, -1, p)


def metacyclic_catalog(q: int, errata: bool = False) -> list[CatalogRow]:
    """Transitive subgroups of Hol(C_p x| C_q), one row per permutation-group class.

    By default every row carries the reference closed forms.  For the two
    groups P x| <T A^u>, u in {0, q-1}, that closed form is
    |Aut(M, M')| = p^2 (p-1) with 2p structures, but T A^u has a fixed line
    there, which cuts the automorphisms down to p (p-1).  ``errata=True``
    uses p (p-1) and the resulting 2 Hopf-Galois structures.
    """
    P = _params(q)
    p, g = P["p"], P["g"]
    F = range(p)
    half = (q - 1) // 2
    two = lambda x: 2 * _inv(1 - x, p) % p  # noqa: E731
    e1 = lambda a=1: ((a % p, 0), 0, 0, 0)  # noqa: E731
    e2 = lambda a=1: ((0, a % p), 0, 0, 0)  # noqa: E731

    def unit(v, i=0, j=0, b=0):
        return ((v[0] % p, v[1] % p), i % q, j % q, b)

    rows: list[CatalogRow] = []

    def row(key, order, structure, num, aut, hgs, acg, inv, recipes, params=None, notes=(), readings=()):
        if len(recipes) != num:
            raise AssertionError(f"row {key}: {len(recipes)} recipes for {num} groups")
        rows.append(CatalogRow("metacyclic", key, dict(params or {}), order, structure, num, aut, None, hgs, acg,
                               inv, recipes, list(readings), list(notes)))

    full = [e1(), e2()]
    row("p2q2", p * p * q * q, f"N:(C_{p}:C_{q})", 1, 2 * p * (p - 1), 2, True,
        StructureInvariants(p * p * q * q, False, 1), [full + [unit((0, 0), 1), unit((0, 0), 0, 1)]])
    row("2p2q2", 2 * p * p * q * q, "Hol(N)", 1, 2 * p * (p - 1), 2, True,
        StructureInvariants(2 * p * p * q * q, False, 1),
        [full + [unit((0, 0), 1), unit((0, 0), 0, 1), unit((0, 0), 0, 0, 1)]])

    Mu = lambda u: full + [unit((0, 0), 1, u)]  # noqa: E731
    Mhat = lambda u: full + [unit((0, 0), 1, u), unit((0, 0), 0, 0, 1)]  # noqa: E731
    m0_aut, m0_hgs = (p * (p - 1), 2) if errata else (p * p * (p - 1), 2 * p)
    m0_notes = ["|Aut(M,M')| = p^2(p-1) replaced by p(p-1)"] if errata else []
    row("p2q:u=0", p * p * q, f"C_{p}x(C_{p}:C_{q})", 2, m0_aut, m0_hgs, True,
        StructureInvariants(p * p * q, False, p), [Mu(0), Mu(q - 1)], {"u": f"0,{q-1}"}, m0_notes)
    for u in range(1, half):
        row(f"p2q:u={u}", p * p * q, f"F_{p}^2:_{u} C_{q}", 2, p * p * (p - 1), 2 * p, False,
            StructureInvariants(p * p * q, False, 1), [Mu(u), Mu(q - 1 - u)], {"u": f"{u},{q-1-u}"})
    row(f"p2q:u={half}", p * p * q, f"F_{p}^2:_{half} C_{q}", 1, 2 * p * p * (p - 1), 2 * p, False,
        StructureInvariants(p * p * q, False, 1), [Mu(half)], {"u": str(half)})
    row("2p2q:u=0", 2 * p * p * q, f"(C_{p}x(C_{p}:C_{q})):C_2", 2, p * (p - 1), 2, True,
        StructureInvariants(2 * p * p * q, False, 1), [Mhat(0), Mhat(q - 1)], {"u": f"0,{q-1}"})
    for u in range(1, half):
        row(f"2p2q:u={u}", 2 * p * p * q, f"F_{p}^2:_{u} C_{2*q}", 2, p * (p - 1), 2, False,
            StructureInvariants(2 * p * p * q, False, 1), [Mhat(u), Mhat(q - 1 - u)], {"u": f"{u},{q-1-u}"})
    row(f"2p2q:u={half}", 2 * p * p * q, f"F_{p}^2:_{half} C_{2*q}", 1, 2 * p * (p - 1), 2, False,
        StructureInvariants(2 * p * p * q, False, 1), [Mhat(half)], {"u": str(half)})

    pq2 = [[e1(), unit((0, 0), 1), unit((0, mu), 0, 1)] for mu in F]
    pq2 += [[e2(), unit((mu, 0), 1), unit((mu, 0), 0, 1)] for mu in F]
    row("pq2", p * q * q, f"C_{q}x(C_{p}:C_{q})", 2 * p, (p - 1) * (q - 1), 2 * (q - 1), True,
        StructureInvariants(p * q * q, False, q), pq2, {"mu": "F_p"})

    nu = lambda mu: two(g) * mu  # noqa: E731
    first = [[e1(), unit((0, 0), 1), unit((0, mu), 0, 1), unit((0, nu(mu)), 0, 0, 1)] for mu in F]
    second = [[e2(), unit((mu, 0), 1), unit((mu, 0), 0, 1), unit((nu(mu), 0), 0, 0, 1)] for mu in F]
    row("2pq2", 2 * p * q * q, f"C_{q}x(C_{p}:C_{2*q})", 2 * p, (p - 1) * (q - 1), 2 * (q - 1), True,
        StructureInvariants(2 * p * q * q, False, q), first + second, {"mu": "F_p"},
        readings=[Reading(f"C_{q}x(C_{p}xC_{2*q}) (direct-product reading of the second family)",
                          StructureInvariants(2 * p * q * q, True, 2 * p * q * q), second)])

    nonab = [[e1(), unit((0, lam), 1, u)] for u in range(1, q - 1) for lam in F]
    nonab.append([e1(), unit((0, 0), 1)])
    nonab += [[e2(), unit((lam, 0), 1, u)] for u in range(1, q - 1) for lam in F]
    nonab.append([e2(), unit((0, 0), 1, q - 1)])
    reg_n = 2 * p * (q - 2) + 2
    row("pq:nonabelian", p * q, f"C_{p}:C_{q}", reg_n, p * (p - 1), reg_n, True,
        StructureInvariants(p * q, False, 1), nonab, {"u": f"1..{q-2}", "lambda": "F_p"})
    cyc = [[e1(), unit((0, lam), 1, q - 1)] for lam in F] + [[e2(), unit((lam, 0), 1)] for lam in F]
    row("pq:cyclic", p * q, f"C_{p*q}", 2 * p, (p - 1) * (q - 1), 2 * (q - 1), True,
        StructureInvariants(p * q, True, p * q), cyc, {"lambda": "F_p"})

    i_ = [[e1(), unit((0, lam), 1, u), unit((0, two(pow(g, u, p)) * lam), 0, 0, 1)]
          for u in range(1, q - 1) for lam in F]
    iii = [[e1(), unit((0, 0), 1), unit((0, mu), 0, 0, 1)] for mu in F]
    iv = [[e2(), unit((lam, 0), 1, u), unit((two(pow(g, u + 1, p)) * lam, 0), 0, 0, 1)]
          for u in range(1, q - 1) for lam in F]
    vi = [[e2(), unit((0, 0), 1, q - 1), unit((mu, 0), 0, 0, 1)] for mu in F]
    # with mu e2 the involution is B times an element of the group, so one group for every mu
    vi_same_line = [[e2(), unit((0, 0), 1, q - 1), unit((0, mu), 0, 0, 1)] for mu in F]
    iv_alt = [[e2(), unit((lam, 0), 1, u), unit((0, two(pow(g, u + 1, p)) * lam), 0, 0, 1)]
              for u in range(1, q - 1) for lam in F]
    vi_alt = [[e1(), unit((0, 0), 1, q - 1), unit((0, mu), 0, 0, 1)] for mu in F]
    row("2pq:C_p:C_2q", 2 * p * q, f"C_{p}:C_{2*q}", 2 * p * (q - 1), p - 1, 2 * (q - 1), True,
        StructureInvariants(2 * p * q, False, 1), i_ + iii + iv + vi, {"u": f"1..{q-2}", "lambda": "F_p"},
        readings=[Reading("family (iv) with the involution [c lambda e2, B]", None, iv_alt),
                  Reading("last family as <e2, TA^-1, [mu e2, B]>", None, vi_same_line),
                  Reading("last family as <e1, TA^-1, [mu e2, B]>", None, vi_alt)])
    ii = [[e1(), unit((0, lam), 1, q - 1), unit((0, two(_inv(g, p)) * lam), 0, 0, 1)] for lam in F]
    v = [[e2(), unit((lam, 0), 1), unit((two(g) * lam, 0), 0, 0, 1)] for lam in F]
    v_alt = [[e2(), unit((lam, 0), 1), unit((0, two(g) * lam), 0, 0, 1)] for lam in F]
    row("2pq:D_2pxC_q", 2 * p * q, f"D_{2*p}xC_{q}", 2 * p, (p - 1) * (q - 1), 2 * (q - 1), True,
        StructureInvariants(2 * p * q, False, q), ii + v, {"lambda": "F_p"},
        readings=[Reading("family (v) with the involution [c lambda e2, B]", None, v_alt),
                  Reading(f"D_{2*p*q}", StructureInvariants(2 * p * q, False, 1), ii)])
    return rows


def metacyclic_class_total(q: int) -> int:
    return q + 9


# -- both types ------------------------------------------------------------------

def both_types(q: int) -> list[CatalogRow]:
    """Permutation groups realised by Hopf-Galois structures of both types."""
    P = _params(q)
    p = P["p"]
    cyc = {r.key: r for r in cyclic_catalog(q)}
    met = {r.key: r for r in metacyclic_catalog(q)}
    spec = [
        ("(A) c=0 d=1", "2pq2"),
        ("(B) c=0 d=1", "pq2"),
        ("(G)", "2pq:C_p:C_2q"),
        ("(D) c=0 d=1", "2pq:D_2pxC_q"),
        ("(H)", "pq:nonabelian"),
        ("(E) c=0 d=1", "pq:cyclic"),
    ]
    rows = []
    for ckey, mkey in spec:
        c, m = cyc[ckey], met[mkey]
        rows.append(CatalogRow(
            table="both-types", key=f"{m.order}:{m.structure}", params={"cyclic_row": ckey, "metacyclic_row": mkey},
            order=m.order, structure=m.structure, num_groups=c.num_groups + m.num_groups,
            aut_pair_order=m.aut_pair_order, hgs_cyclic=c.hgs_cyclic, hgs_nonabelian=m.hgs_nonabelian,
            acg=c.acg and m.acg, invariants=m.invariants, links={"cyclic": c, "metacyclic": m}))
    if len(rows) != 6 or rows[4].hgs_cyclic != p:
        raise AssertionError("both-types table malformed")
    return rows


# -- building the listed groups ------------------------------------------------------

def realize_cyclic(recipe, hol: LabeledHolomorph) -> PermGroup:
    lab = hol.labels
    gens = []
    for word in recipe:
        x = Perm.identity(hol.n)
        for name, k in word:
            x = x * lab[name] ** k
        gens.append(x)
    return PermGroup(gens, degree=hol.n)


def realize_metacyclic(recipe, model: MatrixModel) -> PermGroup:
    return model.group(*recipe)


# -- cross-check against the generic enumeration --------------------------------------

@dataclass(frozen=True)
class Diff:
    row: str
    field: str
    expected: object
    found: object

    def as_dict(self) -> dict:
        return {"row": self.row, "field": self.field, "expected": self.expected, "found": self.found}


@dataclass
class CrossCheck:
    diffs: list[Diff] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    row_class: dict[str, int | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.diffs


def invariants_of(G: PermGroup) -> StructureInvariants:
    return StructureInvariants(G.order, G.is_abelian(), G.center_order())


def _realizer(enum):
    from .holomorph import matrix_model

    hol = enum.holomorph
    if hol.spec.d == 1:
        return lambda recipe: realize_cyclic(recipe, hol)
    q = hol.spec.d
    model = matrix_model(q, hol)
    return lambda recipe: realize_metacyclic(recipe, model)


def _locate_all(recipes, realize, enum):
    located = []
    keys = set()
    for recipe in recipes:
        G = realize(recipe)
        keys.add(G.rows.tobytes())
        located.append((G, enum.locate(G)))
    return located, len(keys)


def cross_check(catalog: list[CatalogRow], enumeration) -> CrossCheck:
    """Compare catalogue rows with enumerated classes; an empty diff list means full agreement.

    ``enumeration`` is one ``Enumeration`` for single-type catalogues, or a
    (cyclic, metacyclic) pair of them for the both-types table.
    """
    if catalog and catalog[0].table == "both-types":
        return _cross_check_both(catalog, *enumeration)
    out = CrossCheck()
    enum = enumeration
    realize = _realizer(enum)
    counts = enum.counts
    claimed: dict[int, list[str]] = {}
    for row in catalog:
        located, distinct = _locate_all(row.recipes, realize, enum)
        cls_ids = sorted({c for _, c in located if c is not None})
        missing = sum(1 for _, c in located if c is None)
        if missing:
            out.diffs.append(Diff(row.key, "transitive", row.num_groups, row.num_groups - missing))
        if distinct != len(row.recipes):
            out.diffs.append(Diff(row.key, "distinct groups", len(row.recipes), distinct))
        if len(cls_ids) != 1:
            out.diffs.append(Diff(row.key, "classes", 1, len(cls_ids)))
            out.row_class[row.key] = None
            continue
        ci = cls_ids[0]
        out.row_class[row.key] = ci
        claimed.setdefault(ci, []).append(row.key)
        cls = enum.classes[ci]
        hgs = counts[ci].e
        found = {
            "order": cls.order,
            "num_groups": cls.e_prime,
            "aut_pair_order": cls.aut_pair_order,
            "hgs": hgs,
            "acg": cls.acg,
        }
        expected = {
            "order": row.order,
            "num_groups": row.num_groups,
            "aut_pair_order": row.aut_pair_order,
            "hgs": row.hgs_cyclic if row.table == "cyclic" else row.hgs_nonabelian,
            "acg": row.acg,
        }
        for k in expected:
            if expected[k] != found[k]:
                out.diffs.append(Diff(row.key, k, expected[k], found[k]))
        inv = invariants_of(cls.representative.subgroup)
        if row.invariants is not None and not _invariants_agree(row.invariants, inv):
            out.diffs.append(Diff(row.key, "structure " + row.structure, _inv_str(row.invariants), _inv_str(inv)))
        for reading in row.readings:
            out.notes.append(_check_reading(row, reading, ci, inv, realize, enum))
        for note in row.notes:
            out.notes.append(f"{row.key}: {note}")
    for ci, cls in enumerate(enum.classes):
        keys = claimed.get(ci, [])
        if not keys:
            out.diffs.append(Diff("(unlisted)", "class", None,
                                  f"order {cls.order}, {cls.e_prime} groups, |Aut(M,M')| {cls.aut_pair_order}"))
        elif len(keys) > 1:
            out.diffs.append(Diff(",".join(keys), "rows sharing one class", 1, len(keys)))
    return out


def _invariants_agree(want: StructureInvariants, have: StructureInvariants) -> bool:
    if want.order != have.order or want.abelian != have.abelian:
        return False
    return want.center_order is None or want.center_order == have.center_order


def _inv_str(inv: StructureInvariants) -> str:
    kind = "abelian" if inv.abelian else "non-abelian"
    return f"order {inv.order}, {kind}, centre {inv.center_order}"


def _check_reading(row, reading, ci, inv, realize, enum) -> str:
    parts = []
    ok = True
    if reading.recipes:
        located, distinct = _locate_all(reading.recipes, realize, enum)
        good = sum(1 for G, c in located if c == ci and G.order == row.order)
        ok = good == len(located) and distinct == len(located)
        parts.append(f"{good}/{len(located)} generator sets give a group of this row, "
                     f"{distinct} distinct groups")
        bad = sorted({G.order for G, c in located if c != ci or G.order != row.order})
        if bad:
            parts.append(f"the others generate groups of order {bad}")
    if reading.invariants is not None:
        agree = _invariants_agree(reading.invariants, inv)
        ok = ok and agree
        parts.append(f"label needs {_inv_str(reading.invariants)}, enumeration has {_inv_str(inv)}")
    verdict = "consistent" if ok else "not supported"
    return f"{row.key}: reading '{reading.label}' {verdict} ({'; '.join(parts)})"


def _cross_check_both(rows: list[CatalogRow], cyc, met) -> CrossCheck:
    from .transitive import match_classes

    out = CrossCheck()
    matches = match_classes(cyc, met)
    matched = set(matches)
    rc, rm = _realizer(cyc), _realizer(met)
    for row in rows:
        crow, mrow = row.links["cyclic"], row.links["metacyclic"]
        ci = cyc.locate(rc(crow.recipes[0]))
        mi = met.locate(rm(mrow.recipes[0]))
        out.row_class[row.key] = mi
        if ci is None or mi is None:
            out.diffs.append(Diff(row.key, "located", "both", f"cyclic {ci}, metacyclic {mi}"))
            continue
        if (ci, mi) not in matched:
            out.diffs.append(Diff(row.key, "pair-isomorphic", True, False))
        found = {"order": met.classes[mi].order, "hgs_cyclic": cyc.counts[ci].e,
                 "hgs_nonabelian": met.counts[mi].e,
                 "acg": cyc.classes[ci].acg and met.classes[mi].acg}
        expected = {"order": row.order, "hgs_cyclic": row.hgs_cyclic,
                    "hgs_nonabelian": row.hgs_nonabelian, "acg": row.acg}
        for k in expected:
            if expected[k] != found[k]:
                out.diffs.append(Diff(row.key, k, expected[k], found[k]))
    if len(matches) != len(rows):
        out.diffs.append(Diff("(all)", "classes realised by both types", len(rows), len(matches)))
    return out
