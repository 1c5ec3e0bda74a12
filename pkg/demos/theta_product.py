"""
The theta-like product
======================

Phi_T(w) has simple zeros at the lattice Z + T Z, is 1-periodic and picks
up an exponential factor under w -> w + T.  Evaluation is done in log space,
so large imaginary parts are harmless.
"""

import numpy as np

from planezeros.construct import phi_cutoff, phi_log, phi_multiplier_log

T = 0.3 + 1.1j
rng = np.random.default_rng(0)
w = rng.uniform(-2, 2, 5) + 1j * rng.uniform(-2, 2, 5)

# period 1
print(np.abs(np.expm1(phi_log(T, w + 1) - phi_log(T, w))))

# shifting by T: the factor is -exp(-2 pi i (w + T)) for Im T > 0
ratio = np.exp(phi_log(T, w + T) - phi_log(T, w))
print(ratio / np.exp(-2j * np.pi * (w + T)))
print(np.abs(np.expm1(phi_log(T, w + 3 * T) - phi_log(T, w) - phi_multiplier_log(T, w, 3))))

# number of factors kept for a 1e-12 tail
print("Q =", phi_cutoff(T, 2.0, 1e-12))
print(phi_log(T, np.array([0.5 + 50j])))
