"""
Signed Bruhat cells of orthogonal matrices
==========================================

Decompose Q = U1 P U2, move along a cell with the upper triangular
action, read angles, and walk the slice coordinates of a lower cell.
"""

import numpy as np
from scipy.stats import special_ortho_group

from bruhatspin.bruhat import (
    cell_of,
    connect_through,
    phi,
    projective_act,
    psi,
    signed_bruhat_decompose,
    slice_coords,
    slice_point,
    theta_j,
)
from bruhatspin.coxeter import Permutation, canonical_word
from bruhatspin.spinword import QuatElem, acute, pretty

rng = np.random.default_rng(0)

q = special_ortho_group.rvs(4, random_state=rng)
d = signed_bruhat_decompose(q)
print("generic point:", d.P, " residual", d.residual)

# a point of the cell of acute(2413) from angles
s = Permutation.parse("2413")
w = canonical_word(s)
q = psi(QuatElem.one(3), w, [1] * len(w), [0.4, 1.1, 2.5])
print(pretty(acute(s)), "->", cell_of(q))

u = np.triu(rng.uniform(-1, 1, (4, 4)), 1) + np.eye(4)
print("still there after U action:", cell_of(projective_act(u, q)) == cell_of(q))

# one more letter, and its angle read back
m = phi(q, 2, 1, 0.7)
print("theta_2 =", theta_j(m, 2), " cell", cell_of(m).sigma)

# transverse coordinates: x = 0 exactly on the cell
z0 = acute(Permutation.parse("1324"))
p = slice_point(z0, [0.2], [0.1, -0.3, 0.0, 0.5, 0.2])
print("slice coords:", slice_coords(z0, p).x)

# an arc through an open-cell point from one Quat element to another
q = projective_act(u, psi(QuatElem.one(3), canonical_word(Permutation.top(3)), [1] * 6, [1.0] * 6))
arc = connect_through(q, np.linspace(0, 1, 5))
print("arc ends:\n", np.round(arc[0], 6), "\n", np.round(arc[-1], 6))
