"""Soluble transitive groups of squarefree degree that no holomorph can hold."""

from hgsenum.transitive import realizability_filter, wreath_counterexample

for n in (10, 14, 15, 21, 22, 26, 30):
    w = wreath_counterexample(n)
    orders = ", ".join(str(h) for h in sorted(set(w.hol_orders.values())))
    print(f"n={n:>2}  |W|={w.group.order:>6}  derived length {w.derived_length}  "
          f"holomorph orders {orders}  verdict {realizability_filter(w.group, n)}")
