"""
Candidate poles
===============

Union of the poles of d c_w over the whole quotient, for every character
order up to d0.
"""

from parapoles.eisenstein import basic_function_numerator, eisenstein_poles
from parapoles.lfactor import frac_str

# C2 at node 2: everything lands inside |Re s| <= 3/2
r = eisenstein_poles("C2", 2)
for e in r.poles:
    print(frac_str(e.real_part), "order", e.max_order, "at character order", e.character_order)
print("N =", r.n_max, " strip bound =", frac_str(r.strip_bound))

# numerator of the basic function: d at the trivial character
print(basic_function_numerator("G2", 1))

# E8 node 4 is the only case with d0 = 6 (about half a minute)
r = eisenstein_poles("E8", 4)
print("d0 =", r.d0, " N =", r.n_max, " orders:", sorted({e.character_order for e in r.poles}))
