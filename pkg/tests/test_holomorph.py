import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgsenum.errors import NotInHolomorph
from hgsenum.holomorph import (HolElement, build_holomorph, cyclic_spec, hol_product, hol_to_perm,
                               holomorph_of_regular, matrix_model, metacyclic_spec)
from hgsenum.perm_core import Perm, PermGroup
from hgsenum.perm_core.subgroups import subgroup_records
from hgsenum.sqfree import build_group, enumerate_specs, is_squarefree, sophie_germain_params

from conftest import holomorph


def test_orders(hol_c21, hol_m21):
    assert hol_c21.group.order == 252
    assert hol_c21.aut_subgroup().order == 12
    assert hol_m21.group.order == 882
    assert hol_m21.aut_subgroup().order == 42
    assert holomorph(5, "cyclic").group.order == 2200
    assert holomorph(5, "metacyclic").group.order == 6050


def test_identity_element(hol_m21):
    spec = hol_m21.spec
    h = HolElement(0, tuple(range(spec.n)))
    assert hol_to_perm(spec, h).is_identity()


def _random_hol(hol, data):
    eta = data.draw(st.integers(0, hol.n - 1))
    f = hol.aut.maps[data.draw(st.integers(0, len(hol.aut.maps) - 1))]
    return HolElement(eta, tuple(f.tolist()))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(3, "cyclic"), (3, "metacyclic"), (5, "metacyclic")]), st.data())
def test_product_law_and_round_trip(key, data):
    hol = holomorph(*key)
    spec = hol.spec
    x, y = _random_hol(hol, data), _random_hol(hol, data)
    px, py = hol_to_perm(spec, x), hol_to_perm(spec, y)
    assert hol_to_perm(spec, hol_product(spec, x, y)) == px * py
    assert hol.perm_to_hol(px) == x
    assert px in hol.group
    # action: [eta, alpha] . mu = eta alpha(mu)
    mu = data.draw(st.integers(0, hol.n - 1))
    assert px(mu) == spec.mul_table[x.eta, x.alpha[mu]]


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_alpha_eta_identity(data):
    hol = holomorph(3, "metacyclic")
    f = hol.aut.maps[data.draw(st.integers(0, len(hol.aut.maps) - 1))]
    eta = data.draw(st.integers(0, hol.n - 1))
    alpha = Perm(f.tolist())
    assert alpha * hol.translation(eta) == hol.translation(int(f[eta])) * alpha


def test_translations_and_automorphisms(hol_c21):
    spec = hol_c21.spec
    for eta in (1, 5, 20):
        p = hol_to_perm(spec, HolElement(eta, tuple(range(21))))
        assert p == hol_c21.translation(eta)
        assert all(p(mu) == spec.mul_table[eta, mu] for mu in range(21))
    for f in hol_c21.aut.maps:
        p = hol_to_perm(spec, HolElement(0, tuple(f.tolist())))
        assert p(0) == 0 and p == Perm(f.tolist())


def test_perm_to_hol_rejects_outsiders(hol_c21):
    with pytest.raises(NotInHolomorph):
        hol_c21.perm_to_hol(Perm.from_cycles(21, (1, 2)))


@pytest.mark.parametrize("n", [n for n in range(2, 61) if is_squarefree(n)])
def test_regular_normal_and_stabiliser(n):
    for spec in enumerate_specs(n):
        hol = build_holomorph(spec)
        G = hol.group
        lam = hol.regular_subgroup()
        assert lam.is_regular() and lam.is_subgroup_of(G)
        assert G.is_normal_subgroup(lam)
        stab = hol.aut_subgroup()
        assert stab == PermGroup([Perm(f.tolist()) for f in hol.aut.maps], degree=n)
        assert G.order == n * stab.order


@pytest.mark.parametrize("n", [6, 10, 21, 30, 42, 55])
def test_two_constructions_agree(n):
    for spec in enumerate_specs(n):
        assert holomorph_of_regular(build_group(spec)).group == build_holomorph(spec).group


def test_cyclic_labels(hol_c21):
    lab = hol_c21.labels
    assert [lab[k].order() for k in ("sigma", "tau", "alpha", "beta", "gamma", "delta")] == [7, 3, 3, 2, 2, 1]
    lab5 = holomorph(5, "cyclic").labels
    assert [lab5[k].order() for k in ("sigma", "tau", "alpha", "beta", "gamma", "delta")] == [11, 5, 5, 2, 4, 1]
    # alpha, beta fix tau and act on sigma; gamma, delta the other way round
    for name in ("alpha", "beta"):
        a = lab[name]
        assert a * lab["tau"] == lab["tau"] * a
    for name in ("gamma", "delta"):
        a = lab[name]
        assert a * lab["sigma"] == lab["sigma"] * a


def test_metacyclic_labels(hol_m21):
    lab = hol_m21.labels
    assert [lab[k].order() for k in ("sigma", "tau", "alpha", "beta", "epsilon")] == [7, 3, 3, 2, 7]
    assert hol_m21.generate("sigma", "tau", "alpha", "beta", "epsilon") == hol_m21.group
    # sigma eps^(g-1) commutes with tau
    assert lab["e2"] * lab["tau"] == lab["tau"] * lab["e2"]


def test_unique_sylow(hol_m21):
    lab = hol_m21.labels
    P = hol_m21.generate("sigma", "epsilon")
    assert P.order == 49
    assert hol_m21.group.is_normal_subgroup(P)
    assert sum(1 for r in subgroup_records(hol_m21.group) if r.order == 49) == 1
    assert P.is_abelian()
    assert lab["e1"] in P and lab["e2"] in P


@pytest.mark.parametrize("q", [3, 5])
def test_ta_sum(q):
    m = matrix_model(q, holomorph(q, "metacyclic"))
    assert np.array_equal(m.geometric_sum(m.T, q), np.diag([0, q % m.p]))
    assert np.array_equal(m.geometric_sum(m.A, q), np.zeros((2, 2)))


def test_model_vectors(model3):
    m = model3
    assert m.g == 2
    assert np.array_equal(m.T @ m.f % m.p, np.array([m.g, m.p - 1]))
    assert m.element((1, 0)) == m.hol.labels["e1"]
    assert m.element((0, 1)) == m.hol.labels["e2"]
    assert m.element((0, 0), 1) == m.hol.labels["T"]
    assert m.element((0, 0), 0, 1) == m.hol.labels["A"]
    assert m.element((0, 0), 0, 0, 1) == m.hol.labels["B"]


@pytest.mark.parametrize("q", [3, 5])
def test_model_is_the_holomorph(q):
    hol = holomorph(q, "metacyclic")
    m = matrix_model(q, hol)
    elems = set()
    for x, y in itertools.product(range(m.p), repeat=2):
        for i, j, b in itertools.product(range(q), range(q), range(2)):
            elems.add(m.element((x, y), i, j, b))
    assert len(elems) == hol.group.order
    assert elems == set(hol.group.elements)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 5]), st.data())
def test_model_product_rule(q, data):
    m = matrix_model(q, holomorph(q, "metacyclic"))

    def draw():
        v = (data.draw(st.integers(0, m.p - 1)), data.draw(st.integers(0, m.p - 1)))
        u = (data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, q - 1)), data.draw(st.integers(0, 1)))
        return v, u

    x, y = draw(), draw()
    (v, u), (w, t) = x, y
    z = m.product(x, y)
    assert m.element(z[0], *z[1]) == m.element(v, *u) * m.element(w, *t)


@pytest.mark.parametrize("q", [3, 5])
def test_f_spans_p_meet_aut(q):
    hol = holomorph(q, "metacyclic")
    m = matrix_model(q, hol)
    P = hol.generate("e1", "e2")
    meet = [x for x in P if x(0) == 0]
    assert len(meet) == m.p
    f = m.element(tuple(m.f))
    assert f(0) == 0 and f.order() == m.p
    eps = PermGroup([hol.labels["epsilon"]])
    assert set(meet) == set(eps.elements) == set(PermGroup([f]).elements)


def test_matrix_model_rejects_wrong_holomorph(hol_c21):
    from hgsenum.errors import NotSubgroup

    with pytest.raises(NotSubgroup):
        matrix_model(3, hol_c21)
