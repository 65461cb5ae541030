import dataclasses

import pytest

from hgsenum.catalog import (both_types, cross_check, cyclic_catalog, cyclic_class_total, metacyclic_catalog,
                             metacyclic_class_total)
from hgsenum.errors import NotSophieGermain
from hgsenum.sqfree import sophie_germain_params

from conftest import enumeration

SOPHIE_GERMAIN = [3, 5, 11, 23, 29, 41, 53, 83, 89]


@pytest.mark.parametrize("q", SOPHIE_GERMAIN)
def test_totals(q):
    P = sophie_germain_params(q)
    cyc = cyclic_catalog(q)
    assert len(cyc) == cyclic_class_total(q) == (6 * P["r"] + 4) * P["sigma0_s"] + 2
    met = metacyclic_catalog(q)
    assert len(met) == metacyclic_class_total(q) == q + 9
    assert len(both_types(q)) == 6
    assert all(r.num_groups > 0 for r in cyc + met)
    assert sum(1 for r in met if not r.acg) == q - 1
    assert all(r.acg for r in cyc)


@pytest.mark.parametrize("q", SOPHIE_GERMAIN)
def test_metacyclic_family_sizes(q):
    p = 2 * q + 1
    sizes = {}
    for r in metacyclic_catalog(q):
        sizes[r.order] = sizes.get(r.order, 0) + r.num_groups
    assert sizes == {
        p * p * q * q: 1, 2 * p * p * q * q: 1, p * p * q: q, 2 * p * p * q: q,
        p * q * q: 2 * p, 2 * p * q * q: 2 * p,
        p * q: 2 * p * (q - 2) + 2 + 2 * p, 2 * p * q: 2 * p * (q - 1) + 2 * p,
    }


def test_cyclic_q3():
    rows = cyclic_catalog(3)
    assert sum(r.num_groups for r in rows) == 14
    assert len(rows) == 12
    by_key = {r.key: r for r in rows}
    assert by_key["(F) c=1 d=1"].structure == "D_42"
    g = by_key["(G)"]
    assert (g.aut_pair_order, g.num_groups, g.hgs_cyclic) == (6, 2, 1)
    h = by_key["(H)"]
    assert (h.aut_pair_order, h.num_groups, h.hgs_cyclic) == (42, 2, 7)
    assert all(r.hgs_cyclic == 1 for r in rows if r.key != "(H)")
    # per-letter group counts
    letters = {}
    for r in rows:
        letters[r.key[:3]] = letters.get(r.key[:3], 0) + r.num_groups
    assert [letters[k] for k in ("(A)", "(B)", "(C)", "(D)", "(E)", "(F)", "(G)", "(H)")] == [2, 2, 1, 2, 2, 1, 2, 2]


def test_metacyclic_q3_rows():
    by_key = {r.key: r for r in metacyclic_catalog(3)}
    assert by_key["2p2q2"].hgs_nonabelian == 2
    assert by_key["pq:nonabelian"].hgs_nonabelian == 16
    assert by_key["pq:cyclic"].hgs_nonabelian == 4
    m0 = by_key["p2q:u=0"]
    assert (m0.num_groups, m0.aut_pair_order, m0.hgs_nonabelian) == (2, 294, 14)
    m1 = by_key["p2q:u=1"]
    assert (m1.num_groups, m1.aut_pair_order, m1.hgs_nonabelian, m1.acg) == (1, 588, 14, False)
    fixed = {r.key: r for r in metacyclic_catalog(3, errata=True)}["p2q:u=0"]
    assert (fixed.aut_pair_order, fixed.hgs_nonabelian) == (42, 2)


@pytest.mark.parametrize("q", [3, 5, 11])
def test_both_types_formulas(q):
    p = 2 * q + 1
    rows = both_types(q)
    pairs = [(r.hgs_cyclic, r.hgs_nonabelian) for r in rows]
    assert pairs.count((1, 2 * (q - 1))) == 5
    assert (p, 2 * p * (q - 2) + 2) in pairs
    # the last two rows are the regular groups
    assert [r.order for r in rows[-2:]] == [p * q, p * q]


def test_both_types_q5():
    assert (both_types(5)[4].hgs_cyclic, both_types(5)[4].hgs_nonabelian) == (11, 68)


def test_bad_q():
    with pytest.raises(NotSophieGermain):
        cyclic_catalog(7)


def test_row_dict_schema():
    d = cyclic_catalog(3)[0].as_dict()
    assert set(d) == {"table", "key", "params", "order", "structure", "num_groups", "aut_pair_order", "hgs", "acg"}
    assert set(d["hgs"]) == {"cyclic", "nonabelian"}


# -- cross-checks against the generic enumeration -----------------------------------------

@pytest.mark.parametrize("q", [3, 5])
def test_cyclic_cross_check_clean(q):
    check = cross_check(cyclic_catalog(q), enumeration(q, "cyclic"))
    assert check.diffs == []
    assert None not in check.row_class.values()


@pytest.mark.parametrize("q", [3, 5])
def test_metacyclic_cross_check_with_errata_clean(q):
    check = cross_check(metacyclic_catalog(q, errata=True), enumeration(q, "metacyclic"))
    assert check.diffs == []


@pytest.mark.parametrize("q", [3, 5])
def test_metacyclic_reference_values_differ_only_on_m0(q):
    p = 2 * q + 1
    check = cross_check(metacyclic_catalog(q), enumeration(q, "metacyclic"))
    found = sorted((d.row, d.field, d.expected, d.found) for d in check.diffs)
    assert found == [("p2q:u=0", "aut_pair_order", p * p * (p - 1), p * (p - 1)),
                     ("p2q:u=0", "hgs", 2 * p, 2)]


@pytest.mark.parametrize("q", [3, 5])
def test_both_types_cross_check(q):
    check = cross_check(both_types(q), (enumeration(q, "cyclic"), enumeration(q, "metacyclic")))
    assert check.diffs == []


def test_readings_reported(met3):
    notes = cross_check(metacyclic_catalog(3), met3).notes
    joined = "\n".join(notes)
    assert "2pq2: reading 'C_3x(C_7xC_6)" in joined and "not supported" in joined
    assert sum("2pq:C_p:C_2q: reading" in n and "not supported" in n for n in notes) == 3
    assert any("D_42' not supported" in n for n in notes)


@pytest.mark.parametrize("field,value", [("num_groups", 3), ("aut_pair_order", 5), ("hgs_cyclic", 2), ("acg", False)])
def test_mutation_detected(cyc3, field, value):
    rows = cyclic_catalog(3)
    target = rows[4]
    rows[4] = dataclasses.replace(target, **{field: value})
    check = cross_check(rows, cyc3)
    assert check.diffs
    assert {d.row for d in check.diffs} == {target.key}


def test_dropped_row_detected(cyc3):
    rows = cyclic_catalog(3)[1:]
    check = cross_check(rows, cyc3)
    assert [d.row for d in check.diffs] == ["(unlisted)"]


def test_wrong_generators_detected(met3):
    rows = metacyclic_catalog(3, errata=True)
    i = next(i for i, r in enumerate(rows) if r.key == "pq2")
    rows[i] = dataclasses.replace(rows[i], recipes=rows[i].recipes[:-1] + [rows[i].recipes[0]])
    check = cross_check(rows, met3)
    assert any(d.row == "pq2" and d.field == "distinct groups" for d in check.diffs)
