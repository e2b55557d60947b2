"""
Totally positive lower triangular matrices
==========================================

Build points of Pos_sigma from positive parameters, recover the
parameters, and compare points with the order <<.
"""

import random
from fractions import Fraction as F

from bruhatspin.coxeter import Permutation
from bruhatspin.linalg import mat_mul
from bruhatspin.totpos import (
    ababab_transition,
    cell_of_closure,
    in_pos,
    lam,
    ll,
    neg_mirror,
    pos_factorize,
    pos_from_params,
    random_pos,
)

eta = Permutation.top(2)
l = pos_from_params((1, 2, 1), (F(1), F(2), F(3)), 2)
print(l)
print("in Pos_eta:", in_pos(l, eta))

# the other reduced word of eta gives other parameters
print("aba -> bab:", pos_factorize(l, word=(2, 1, 2)).times, "=", ababab_transition(F(1), F(2), F(3)))

lab = cell_of_closure(neg_mirror(l))
print("mirror lands in", lab.orientation, lab.sigma)

rng = random.Random(0)
a = random_pos(Permutation.parse("2143"), rng)
b = random_pos(Permutation.parse("1324"), rng)
print("product cell:", cell_of_closure(mat_mul(a, b)).sigma)

# first factor of a positive word: lambda_1(t) << l exactly for t < 1
for t in (F(1, 2), F(1), F(3, 2)):
    print(f"lambda_1({t}) << l ?", ll(lam(2, 1, t), l))
