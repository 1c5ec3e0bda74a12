"""
The index of a periodic plane
=============================

A hyperplane <a, z> + c = 0 in C^n, repeated by all integer translations,
is a periodic divisor.  Whether some entire periodic function vanishes
exactly there is decided by a skew integer matrix, the index.
"""

from fractions import Fraction

from planezeros import LinearForm, PlaneDivisor, classify, component_index, divisor_index, nu
from planezeros.construct import form_log_evaluator
from planezeros.gaussrat import I
from planezeros.oracle import nu_bruteforce, numeric_index_matrix

# a = (1, i, 1/2): real and imaginary parts are independent, so class L2
f = LinearForm((1, I, Fraction(1, 2)))
cf = classify(f)
print("class", cf.cls, "witness pair", cf.witness)

# the values <a, k> form a lattice; count its points in the parallelogram on a_1, a_2
print("nu_12 =", nu(f, 0, 1), "(brute force:", nu_bruteforce(f, 0, 1), ")")

# the index from the coefficients alone
N = divisor_index(PlaneDivisor((f,)))
print(N)

# and from a theta-like function vanishing on the divisor, by following log f
# along the period paths
print(numeric_index_matrix(form_log_evaluator(f), 3, log=True))

# real multiples of integer vectors are L1 and never obstruct
g = LinearForm((2, 4), Fraction(1, 2))
print(classify(g).cls, component_index(g, 0, 1))
