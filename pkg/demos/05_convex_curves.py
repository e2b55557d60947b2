"""
Locally convex curves and their itineraries
===========================================

Integrate curves, watch the southwest minors, and list where the curve
leaves the open cell.
"""

import math
from fractions import Fraction as F

import numpy as np

from bruhatspin.coxeter import Permutation, mult_vector
from bruhatspin.curves import (
    ConvexCurveSpec,
    integrate_convex_exact,
    integrate_lc_numeric,
    itinerary,
    m_functions,
    mult_vector_exact,
)
from bruhatspin.spinword import SpinWord, acute

h = ConvexCurveSpec(3, closed_form="h")
ts, frames = integrate_lc_numeric(h, None, 0, math.pi, step=math.pi / 1024)
print("Gamma(pi/2) =\n", np.round(frames[512], 9))
print("Gamma(pi)   =\n", np.round(frames[-1], 9))

for t, q in list(zip(ts, frames))[::256]:
    print(f"t = {t:.3f}  m =", np.round(m_functions(q), 4))

print("events:", [(round(e.t, 8), str(e.sigma)) for e in itinerary(h, -0.2, math.pi + 0.2)])

# orders of vanishing at the identity, and at a cell point
print("mult at I   :", mult_vector_exact(SpinWord.identity(3)), "=", mult_vector(Permutation.top(3)))
z = acute(Permutation.parse("4231"))
print("mult at 4231:", mult_vector_exact(z))

# exact piecewise curve in triangular coordinates
spec = ConvexCurveSpec(2, (F(0), F(1), F(2)), ((F(1), F(2)), (F(3), F(1))))
print(integrate_convex_exact(spec))
events = itinerary(spec, 0.0, 2.0)
print([e.to_json() for e in events])
