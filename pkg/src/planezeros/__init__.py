"""Periodic entire functions with zeros on hyperplanes.

Decide whether a Z^n-periodic divisor whose components are reproductions of
hyperplanes <a, z> + c = 0 is the divisor of an entire periodic function, and
build an evaluable model of such a function when it is.
"""

from .construct import (
    FunctionModel, ImTZero, IndexObstruction, NonpositiveTolerance, QuasiPeriodExponent, build_model,
    corrector_identity, eval_model, f_l1_eval, log_eval_model, model_from_dict, model_to_dict, phi_eval,
    phi_log, quasi_period_exponent,
)
from .forms import L1, L2, CanonicalKey, Certificate, ClassifiedForm, LinearForm, canonical_key, classify, divisor_certificate
from .gaussrat import GaussRat, I
from .indexcalc import (
    Decision, PlaneDivisor, SymmetryCertificate, Transform, Witness, apply_transform, component_index,
    condition_sums, decide, divisor_index, predicted_index, recomputed_index, symmetric_closure,
    symmetry_certificate,
)
from .lattice import CosetSystem, NotInLattice, ValueLattice, coset_reps, decompose, nu, value_lattice
from .oracle import ContinuationConfig, VerifyReport, nu_bruteforce, numeric_index, numeric_index_matrix, verify_model

__version__ = "0.1.0"
