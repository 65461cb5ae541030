import itertools

import pytest
from hypothesis import given, settings, strategies as st

from hgsenum.catalog import realize_metacyclic
from hgsenum.errors import BadDegree, NonIntegerCount
from hgsenum.holomorph import matrix_model
from hgsenum.perm_core import Perm, PermGroup
from hgsenum.perm_core.isomorphism import SubgroupPair, pair_isomorphism
from hgsenum.perm_core.subgroups import subgroup_records
from hgsenum.sqfree import SquarefreeSpec, build_group, enumerate_specs
from hgsenum.transitive import (TransitivePair, abstractly_isomorphic, almost_classically_galois, count_hgs,
                                enumerate_spec, match_classes, power_conjugacy_histogram, realizability_filter,
                                transitive_subgroups, wreath_counterexample, wreath_group)

from conftest import enumeration, holomorph


# -- enumeration sizes ----------------------------------------------------------------

@pytest.mark.parametrize("q,kind,groups,classes", [
    (3, "cyclic", 14, 12),
    (3, "metacyclic", 108, 12),
    (5, "cyclic", 24, 18),
    (5, "metacyclic", 256, 14),
])
def test_enumeration_sizes(q, kind, groups, classes):
    enum = enumeration(q, kind)
    assert enum.num_groups == groups
    assert len(enum.classes) == classes
    assert sum(c.e_prime for c in enum.classes) == enum.num_groups


@pytest.mark.parametrize("q,kind", [(3, "cyclic"), (3, "metacyclic"), (5, "cyclic"), (5, "metacyclic")])
def test_every_member_is_transitive_with_small_stabiliser(q, kind):
    enum = enumeration(q, kind)
    n = enum.n
    for m in enum.pairs:
        assert m.subgroup.is_transitive()
        assert m.order == n * m.stabilizer.order
        assert all(x(0) == 0 for x in m.stabilizer.generators)


def test_stabiliser_core_trivial(met3):
    from hgsenum.perm_core import core

    for m in met3.pairs[::5]:
        assert core(m.subgroup, m.stabilizer).order == 1


def test_regular_subgroup_present(cyc3, met3):
    for enum in (cyc3, met3):
        lam = enum.holomorph.regular_subgroup()
        assert enum.locate(lam) is not None
        cls = enum.classes[enum.locate(lam)]
        assert cls.order == enum.n


def test_locate_rejects_intransitive(hol_c21, cyc3):
    assert cyc3.locate(hol_c21.aut_subgroup()) is None


def test_transitive_filter_against_all_subgroups(hol_c21):
    # independent route: every subgroup of Hol(C_21), tested for transitivity directly
    G = hol_c21.group
    count = 0
    for r in subgroup_records(G):
        H = G.subgroup(r.idx)
        if H.is_transitive():
            count += 1
    assert count == len(transitive_subgroups(hol_c21)) == 14


# -- classification ------------------------------------------------------------------

def test_classes_are_pairwise_non_isomorphic(cyc3):
    reps = [c.representative for c in cyc3.classes]
    for a, b in itertools.combinations(reps, 2):
        assert pair_isomorphism(a.pair, b.pair) is None


def test_class_members_isomorphic(met3):
    for cls in met3.classes:
        rep = cls.representative
        for m in cls.members[1:]:
            assert pair_isomorphism(rep.pair, m.pair) is not None


def test_j_t_isomorphic(hol_c21):
    lab = hol_c21.labels
    J = [hol_c21.generate(lab["sigma"], lab["tau"] * lab["alpha"] ** t) for t in (1, 2)]
    assert all(j.order == 21 and j.is_transitive() and not j.is_abelian() for j in J)
    assert J[0] != J[1]
    a, b = (SubgroupPair.at_point(j) for j in J)
    assert pair_isomorphism(a, b) is not None


@pytest.mark.parametrize("q", [3, 5])
def test_m_u_isomorphism_rule(q):
    model = matrix_model(q, holomorph(q, "metacyclic"))
    full = [((1, 0), 0, 0, 0), ((0, 1), 0, 0, 0)]
    M = {u: SubgroupPair.at_point(realize_metacyclic(full + [((0, 0), 1, u, 0)], model)) for u in range(q)}
    for u, v in itertools.product(range(q), repeat=2):
        iso = pair_isomorphism(M[u], M[v]) is not None
        assert iso == (u == v or (u + v + 1) % q == 0), (u, v)


# -- N x| A groups inside Hol(C_pq) -----------------------------------------------------

def _n_times_a(hol):
    lam = hol.regular_subgroup()
    stab = hol.aut_subgroup()
    out = []
    for r in subgroup_records(stab):
        A = stab.subgroup(r.idx)
        out.append((A, PermGroup(list(lam.generators) + list(A.generators), degree=hol.n)))
    return out


def test_distinct_a_give_non_isomorphic_groups(hol_c21):
    groups = _n_times_a(hol_c21)
    assert len(groups) == 10  # subgroups of C_2 x C_6
    pairs = [SubgroupPair.at_point(M) for _, M in groups]
    for a, b in itertools.combinations(pairs, 2):
        assert pair_isomorphism(a, b) is None


def test_aut_pair_of_n_times_a(hol_c21):
    # N is the only abelian regular subgroup of each M, hence characteristic; Aut(N) is abelian,
    # so |Aut(M, M')| is the normaliser of A in Aut(N), which is all of Aut(N)
    for A, M in _n_times_a(hol_c21):
        m = TransitivePair(M)
        regular_abelian = [r for r in subgroup_records(M) if r.order == 21
                           and M.subgroup(r.idx).is_abelian() and M.subgroup(r.idx).is_transitive()]
        assert len(regular_abelian) == 1
        assert m.aut_pair_order == (7 - 1) * (3 - 1)


# -- counts --------------------------------------------------------------------------

def test_count_examples(cyc3, met3):
    by_order = {}
    for cls, cnt in zip(cyc3.classes, cyc3.counts):
        by_order.setdefault(cls.order, []).append((cls, cnt))
    ((h, hc),) = [(c, n) for c, n in by_order[21] if not c.representative.subgroup.is_abelian()]
    assert (hc.e_prime, hc.aut_pair_order, hc.aut_n_order, hc.e) == (2, 42, 12, 7)
    ((e, ec),) = [(c, n) for c, n in by_order[21] if c.representative.subgroup.is_abelian()]
    assert ec.e == 1 and e.e_prime == 1
    (reg,) = [(c, n) for c, n in zip(met3.classes, met3.counts)
              if c.order == 21 and c.representative.subgroup.is_abelian()]
    assert (reg[1].e_prime, reg[1].aut_pair_order, reg[1].aut_n_order, reg[1].e) == (14, 12, 42, 4)


def test_non_integer_count_raises(cyc3):
    cls = cyc3.classes[0]
    with pytest.raises(NonIntegerCount):
        count_hgs(cls, 10**9 + 7)


@pytest.mark.parametrize("q,kind", [(3, "cyclic"), (3, "metacyclic"), (5, "cyclic"), (5, "metacyclic")])
def test_integrality(q, kind):
    enum = enumeration(q, kind)
    for cls in enum.classes:
        assert (cls.aut_pair_order * cls.e_prime) % enum.aut_n_order == 0


@pytest.mark.parametrize("q", [3, 5])
def test_nonabelian_counts_even(q):
    assert all(c.e % 2 == 0 for c in enumeration(q, "metacyclic").counts)


@pytest.mark.parametrize("q,kind", [(3, "cyclic"), (3, "metacyclic"), (5, "cyclic"), (5, "metacyclic")])
def test_derived_length_at_most_four(q, kind):
    for m in enumeration(q, kind).pairs:
        assert m.derived_length is not None and m.derived_length <= 4


# -- almost classically Galois ------------------------------------------------------------

@pytest.mark.parametrize("q", [3, 5])
def test_acg_census(q):
    assert all(c.acg for c in enumeration(q, "cyclic").classes)
    assert sum(1 for c in enumeration(q, "metacyclic").classes if not c.acg) == q - 1


def test_m1_not_acg(model3):
    full = [((1, 0), 0, 0, 0), ((0, 1), 0, 0, 0)]
    M1 = TransitivePair(realize_metacyclic(full + [((0, 0), 1, 1, 0)], model3))
    assert M1.order == 147
    assert almost_classically_galois(M1) is False


def test_regular_is_acg():
    G = build_group(SquarefreeSpec(21, 7, 3, 2))
    assert almost_classically_galois(TransitivePair(G)) is True


@pytest.mark.parametrize("q", [3, 5])
def test_acg_two_routes_agree(q):
    # the enumeration decides acG from the regular subgroups of Hol(N); recompute
    # each class representative from its own subgroup lattice
    enum = enumeration(q, "metacyclic")
    for cls in enum.classes:
        rep = cls.representative
        fresh = TransitivePair(rep.subgroup)
        assert almost_classically_galois(fresh) == cls.acg


# -- both types ------------------------------------------------------------------------

@pytest.mark.parametrize("q", [3, 5])
def test_classes_realised_by_both_types(q):
    cyc, met = enumeration(q, "cyclic"), enumeration(q, "metacyclic")
    matches = match_classes(cyc, met)
    assert len(matches) == 6
    p = 2 * q + 1
    counts = sorted((cyc.counts[i].e, met.counts[j].e) for i, j in matches)
    assert counts == sorted([(1, 2 * (q - 1))] * 5 + [(p, 2 * p * (q - 2) + 2)])


def test_enumerate_other_degrees():
    # a degree with no closed-form catalogue still enumerates
    for spec in enumerate_specs(15):
        enum = enumerate_spec(spec)
        assert enum.num_groups == sum(c.e_prime for c in enum.classes)
        assert all(c.e >= 0 for c in enum.counts)


# -- wreath products and realisability ------------------------------------------------------

def test_wreath_examples():
    w = wreath_counterexample(21)
    assert w.group.order == 7**3 * 3 == 1029
    assert w.derived_length == 2 and w.transitive and w.p_cubed_divides
    assert w.hol_orders == {"C_21": 252, "C_7:C_3[k=2]": 882}
    assert w.certified
    w = wreath_counterexample(10)
    assert w.group.order == 2**5 * 5
    assert w.certified
    for n in (6, 4, 7, 12):
        with pytest.raises(BadDegree):
            wreath_group(n)


@pytest.mark.parametrize("n", [10, 14, 15, 21, 22, 26, 30])
def test_wreath_certificates(n):
    w = wreath_counterexample(n)
    assert w.transitive and w.derived_length == 2 and w.divides_no_holomorph
    assert all(h % w.group.order for h in w.hol_orders.values())


def test_realizability_filter_examples():
    S5 = PermGroup.symmetric(5)
    v = realizability_filter(S5, 5)
    assert v.status == "no" and "insoluble" in v.reason
    assert str(realizability_filter(wreath_counterexample(21).group, 21)) == "no(order)"
    for spec in enumerate_specs(21):
        v = realizability_filter(build_group(spec), 21)
        assert v.status == "yes"
    # D_10 on 5 points lives in Hol(C_5)
    D10 = PermGroup([Perm([1, 2, 3, 4, 0]), Perm([0, 4, 3, 2, 1])])
    assert realizability_filter(D10, 5).status == "yes"


def test_realizability_rejects_bad_input():
    from hgsenum.errors import NotSquarefree

    with pytest.raises(NotSquarefree):
        realizability_filter(PermGroup.symmetric(4), 4)


# -- abstract isomorphism vs pair-isomorphism ---------------------------------------------

@pytest.mark.parametrize("q,kind", [(3, "cyclic"), (3, "metacyclic"), (5, "cyclic"), (5, "metacyclic")])
def test_abstract_classes_agree_with_pair_classes(q, kind):
    enum = enumeration(q, kind)
    assert enum.abstract_classes == [[i] for i in range(len(enum.classes))]


def test_abstract_classes_coarser_at_degree_30():
    # one group acting in several inequivalent ways on 30 points
    enum = enumerate_spec(SquarefreeSpec(30, 30, 1, 1))
    merged = [c for c in enum.abstract_classes if len(c) > 1]
    assert (len(enum.classes), len(enum.abstract_classes)) == (19, 15)
    assert sorted(enum.classes[c[0]].order for c in merged) == [60, 120]
    for c in merged:
        for i, j in itertools.combinations(c, 2):
            a, b = enum.classes[i].representative, enum.classes[j].representative
            assert pair_isomorphism(a.pair, b.pair) is None
            assert abstractly_isomorphic(a.subgroup, b.subgroup)


def test_power_conjugacy_separates_m_u():
    # at q=5, M_1 and M_2 have equal order statistics, centres and derived lengths
    model = matrix_model(5, holomorph(5, "metacyclic"))
    full = [((1, 0), 0, 0, 0), ((0, 1), 0, 0, 0)]
    M1, M2 = (TransitivePair(realize_metacyclic(full + [((0, 0), 1, u, 0)], model)) for u in (1, 2))
    k1, k2 = M1.class_key, M2.class_key
    assert (k1.order_histogram, k1.center_order, k1.derived_length) == \
        (k2.order_histogram, k2.center_order, k2.derived_length)
    assert power_conjugacy_histogram(M1.subgroup) != power_conjugacy_histogram(M2.subgroup)
    assert not abstractly_isomorphic(M1.subgroup, M2.subgroup)


@settings(max_examples=20, deadline=None)
@given(st.permutations(range(21)))
def test_power_conjugacy_invariant_under_relabelling(images):
    G = build_group(SquarefreeSpec(21, 7, 3, 2))
    pi = Perm(list(images))
    H = PermGroup([pi * g * pi.inverse() for g in G.generators], degree=21)
    assert power_conjugacy_histogram(G) == power_conjugacy_histogram(H)
    assert abstractly_isomorphic(G, H)
