"""Walk through the q=3 case: both holomorphs of degree 21, their transitive
subgroups, and the catalogue rows they match."""

from hgsenum.catalog import both_types, cross_check, cyclic_catalog, metacyclic_catalog
from hgsenum.holomorph import cyclic_spec, metacyclic_spec
from hgsenum.transitive import enumerate_spec, match_classes


def show(title, enum, rows):
    check = cross_check(rows, enum)
    print(f"{title}: |Hol| = {enum.holomorph.group.order}, "
          f"{enum.num_groups} transitive subgroups in {len(enum.classes)} classes")
    for key, ci in check.row_class.items():
        if ci is None:
            continue
        cls, cnt = enum.classes[ci], enum.counts[ci]
        print(f"  {key:<14} order {cls.order:>4}  e'={cls.e_prime:<3} |Aut(G,G')|={cls.aut_pair_order:<4} e={cnt.e}")
    for d in check.diffs:
        print(f"  differs: {d.row} {d.field} listed {d.expected}, computed {d.found}")
    return enum


cyc = show("cyclic type C_21", enumerate_spec(cyclic_spec(3)), cyclic_catalog(3))
met = show("type C_7:C_3", enumerate_spec(metacyclic_spec(3)), metacyclic_catalog(3))
print("same row with corrected values:",
      "clean" if cross_check(metacyclic_catalog(3, errata=True), met).ok else "still differs")

print("groups realised by both types:")
check = cross_check(both_types(3), (cyc, met))
partner = {j: i for i, j in match_classes(cyc, met)}
for row in both_types(3):
    j = check.row_class[row.key]
    print(f"  {row.structure:<16} order {row.order:>3}  cyclic {cyc.counts[partner[j]].e}, nonabelian {met.counts[j].e}")
