"""
Two planes whose obstructions cancel
====================================

z1 + i z2 + 1/3 alone has index -1 and is not the zero set of any entire
periodic function.  Adding z1 - i z2 + 1/5 (index +1) removes the
obstruction, and the function can be built and checked.
"""

from fractions import Fraction

import numpy as np

from planezeros import LinearForm, PlaneDivisor, decide, verify_model
from planezeros.gaussrat import I

one = PlaneDivisor((LinearForm((1, I), Fraction(1, 3)),))
d = decide(one)
print(d.verdict, "witness", d.witness)

pair = one + PlaneDivisor((LinearForm((1, -I), Fraction(1, 5)),))
d = decide(pair)
print(d.verdict)
M = d.model

# exponents of the quasi-periods, in units of 2 pi i
print("sigma", M.sigma)
print("tau", M.tau)

# F is periodic in both directions
z = np.array([0.3 + 0.2j, -0.1 + 0.05j])
for e in np.eye(2):
    print(abs(M(z + e) / M(z) - 1))

# it vanishes on the planes and nowhere near them
print(abs(M(np.array([-1 / 3, 0.0]))), abs(M(np.array([-1 / 3 + 0.1, 0.0]))))

rep = verify_model(M, pair, seed=0)
print("verified:", rep.passed, "max periodicity residual", max(rep.periodicity))
