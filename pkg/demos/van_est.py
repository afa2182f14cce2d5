"""Compare polynomial group cochains with the CE algebra for R^m.

For each cohomological degree and polynomial length we print the ranks on
both sides and whether the van Est map is an isomorphism on that piece.
"""

from simpdiff.cohomology import vanest_compare
from simpdiff.presentation import linear_presentation

for m in (1, 2, 3):
    rep = vanest_compare(linear_presentation([m], {}, 4, 4), 2, 4)
    print(f"R^{m}")
    for r in rep.rows:
        if r.cochain_rank or r.ce_rank:
            print(f"  H^{r.degree}, length {r.weight}: cochains {r.cochain_rank}, CE {r.ce_rank}, "
                  f"iso {r.isomorphism}")
    totals = rep.totals()
    print("  totals:", [totals[k][0] for k in sorted(totals)])
