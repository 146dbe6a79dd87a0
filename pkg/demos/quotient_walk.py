"""
Walking a parabolic quotient
============================

Enumerate the minimal coset representatives for G2 at node 1, print each
inversion set, then read off s_k and the level sets.
"""

from parapoles import enumerate_quotient, level_sets, parabolic_datum
from parapoles.lfactor import frac_str

# the datum fixes the Levi, the nilradical coroots and their (h, lambda) values
p = parabolic_datum("G2", 1)
print("s_k =", frac_str(p.s_k), " d0 =", p.d0)

# representatives come out in BFS order over the weak order
q = enumerate_quotient(p)
coroots = p.root_datum.coroots
for i in range(len(q)):
    rep = q.rep(i)
    print(rep.length, [coroots[j] for j in rep.inversion])

# level sets L(d), shifted so that s_k + 1 sits at 0
for d, ls in level_sets(p).items():
    print(f"L({d}) =", [frac_str(x) for x in ls.real_parts])

# the same combinatorics scales to E8: 483840 representatives at node 4
big = enumerate_quotient("E8", 4)
print(len(big), "representatives,", big.n_edges, "covering edges")
