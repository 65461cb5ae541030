"""Count Hopf-Galois structures on every transitive group of degree at most 6
twice: by searching Sym(n) for normalised regular subgroups, and by the
holomorph count formula."""

from hgsenum.oracle import transitive_groups, verify_count_formula

for n in range(1, 7):
    for G in transitive_groups(n):
        res = verify_count_formula(G)
        counts = ", ".join(f"{t}: {c}" for t, c in sorted(res.oracle.items()))
        print(f"degree {n} order {G.order:>3}  {'ok ' if res.equal else 'BAD'}  {counts or '-'}")
