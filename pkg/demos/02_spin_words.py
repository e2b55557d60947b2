"""
Signed permutations in the spin group
=====================================

Normal forms (q, sigma), the acute / grave / hat maps and the projection
to signed permutation matrices, cross-checked against the Clifford algebra.
"""

import numpy as np

from bruhatspin.coxeter import Permutation
from bruhatspin.spinword import (
    acute,
    adv_label,
    chop_label,
    clifford_of,
    clifford_to_so,
    format_quat,
    grave,
    hat,
    pi_so,
    pretty,
    spin_inverse,
    spin_mul,
)

P = Permutation.parse

s = P("7245136")
print("hat(7245136) =", format_quat(hat(s)))

for n in range(1, 9):
    print(f"n = {n}: hat(eta) = {format_quat(hat(Permutation.top(n)))}")

z = acute(P("3214"))
print(pretty(z), "   inverse:", pretty(spin_inverse(z)))
print("acute * grave^-1 =", pretty(spin_mul(z, spin_inverse(grave(P("3214"))))))

m = pi_so(z).to_array()
print(m)
# the same matrix through the Clifford algebra
print("clifford agrees:", np.allclose(clifford_to_so(clifford_of(z)), m))

# labels of the cells a convex curve enters and leaves through z
print("adv :", pretty(adv_label(z)))
print("chop:", pretty(chop_label(z)))
