from dataclasses import replace
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, settings

from planezeros.acceptance import random_gauge
from planezeros.construct import build_model, coset_log_evaluator, form_log_evaluator, phi_log
from planezeros.forms import LinearForm
from planezeros.gaussrat import I
from planezeros.indexcalc import PlaneDivisor, Transform, component_index, divisor_index, predicted_index
from planezeros.oracle import (
    ContinuationConfig, NonIntegerResult, PathThroughZero, divisor_distance, numeric_index,
    numeric_index_matrix, verify_model,
)

from conftest import l1_forms, linear_forms

half = Fraction(1, 2)
PAIR = PlaneDivisor((LinearForm((1, I), Fraction(1, 3)), LinearForm((1, -I), Fraction(1, 5))))


def test_theta_form_index():
    f = lambda z: phi_log(1j, z[..., 0] + 1j * z[..., 1])
    assert numeric_index(f, 2, 0, 1, log=True) == -1
    assert numeric_index(f, 2, 1, 0, log=True) == 1


def test_l1_index_zero():
    ev = form_log_evaluator(LinearForm((2, 4), half))
    assert numeric_index(ev, 2, 0, 1, log=True) == 0


def test_coset_product_index():
    f = LinearForm((1, I, half))
    assert numeric_index(coset_log_evaluator(f, 0, 1), 3, 0, 1, log=True) == -2
    N = numeric_index_matrix(form_log_evaluator(f), 3, log=True)
    assert N.tolist() == [[0, -2, 0], [2, 0, 1], [0, -1, 0]]


def test_plain_evaluator_accepted():
    f = lambda z: np.exp(phi_log(1j, z[..., 0] + 1j * z[..., 1]))
    assert numeric_index(f, 2, 0, 1) == -1


@given(linear_forms())
@settings(max_examples=25)
def test_formula_matches_oracle(f):
    ev = form_log_evaluator(f)
    for p, q in combinations(range(f.n), 2):
        assert numeric_index(ev, f.n, p, q, log=True) == component_index(f, p, q)


@given(l1_forms())
@settings(max_examples=15)
def test_l1_oracle_zero(f):
    assert not numeric_index_matrix(form_log_evaluator(f), f.n, log=True).any()


def test_base_point_invariance():
    f = LinearForm((2, 1 + I, Fraction(-1, 3)), Fraction(1, 4))
    ev = form_log_evaluator(f)
    rng = np.random.default_rng(3)
    expected = [component_index(f, p, q) for p, q in combinations(range(3), 2)]
    for _ in range(5):
        z0 = tuple(rng.uniform(-1, 1, 3) + 1j * rng.uniform(-0.5, 0.5, 3))
        cfg = ContinuationConfig(base_point=z0)
        assert [numeric_index(ev, 3, p, q, cfg, log=True) for p, q in combinations(range(3), 2)] == expected


def test_refinement_stability():
    f = LinearForm((Fraction(3, 2), 2 - I, Fraction(1, 5) + I), I / 3)
    ev = form_log_evaluator(f)
    base = numeric_index_matrix(ev, 3, log=True)
    for steps in (32, 128, 512):
        assert np.array_equal(numeric_index_matrix(ev, 3, ContinuationConfig(steps=steps), log=True), base)


def _coordinate_map(t: Transform, n: int):
    def m(z):
        z = np.array(z, dtype=complex, copy=True)
        if t.kind == "beta":
            z[..., t.p] = -z[..., t.p]
        else:
            z[..., [t.p, t.q]] = z[..., [t.q, t.p]]
        return z
    return m


@pytest.mark.parametrize("a", [(1, I), (1, I, half), (2, 1 + I, Fraction(-1, 3)), (half, 2 - I, 1)])
def test_transform_laws_on_evaluators(a):
    f = LinearForm(a, Fraction(1, 7))
    n = f.n
    ev = form_log_evaluator(f)
    N = numeric_index_matrix(ev, n, log=True)
    for t in [Transform.beta(p) for p in range(n)] + [Transform.alpha(p, q) for p, q in combinations(range(n), 2)]:
        m = _coordinate_map(t, n)
        assert np.array_equal(numeric_index_matrix(lambda z: ev(m(z)), n, log=True), predicted_index(N, t))
    for p in range(n):
        for k in (2, 3):
            P = np.eye(n)
            P[p] *= k
            got = numeric_index_matrix(ev, n, periods=P, log=True)
            assert np.array_equal(got, predicted_index(N, Transform.scale(p, k)))


def test_gauge_invariance():
    rng = np.random.default_rng(9)
    f = LinearForm((1, I, half), Fraction(1, 3))
    ev = form_log_evaluator(f)
    N = numeric_index_matrix(ev, 3, log=True)
    for _ in range(5):
        h = random_gauge(rng, 3)
        assert np.array_equal(numeric_index_matrix(lambda z: ev(z) + h(z), 3, log=True), N)


def test_path_through_zero():
    dead = lambda z: np.full(np.shape(z)[:-1], -np.inf + 0j)
    with pytest.raises(PathThroughZero):
        numeric_index(dead, 2, 0, 1, ContinuationConfig(retries=2), log=True)


def test_square_root_is_refused():
    # half of the theta log jumps by pi where a branch wraps; no continuous log exists
    f = lambda z: 0.5 * phi_log(1j, z[..., 0] + 1j * z[..., 1])
    with pytest.raises((PathThroughZero, NonIntegerResult)):
        numeric_index(f, 2, 0, 1, log=True)


def test_verify_pair_model():
    M = build_model(PAIR)
    rep = verify_model(M, PAIR, seed=0)
    assert rep.passed
    assert max(rep.periodicity) < 1e-8
    assert len(rep.zero_tests) == 20 and rep.index_numeric == [[0, 0], [0, 0]]
    assert verify_model(M, PAIR, seed=0).to_dict() == rep.to_dict()


def test_verify_l1_model():
    Z = PlaneDivisor((LinearForm((2, 4), half), LinearForm((1, -1), I / 2)))
    rep = verify_model(build_model(Z), Z, seed=1)
    assert rep.passed and max(rep.periodicity) < 1e-12


def test_verify_tampered_model():
    M = build_model(PAIR)
    sigma = [list(r) for r in M.sigma]
    sigma[0][0] += 1
    rep = verify_model(replace(M, sigma=tuple(map(tuple, sigma))), PAIR, seed=0)
    assert max(rep.periodicity) > 1e-2 and not rep.passed


def test_divisor_distance():
    Z = PlaneDivisor((LinearForm((1, I)),))
    assert divisor_distance(Z, np.array([0.0, 0.0])) == 0
    assert abs(divisor_distance(Z, np.array([0.5, 0.0])) - 0.5 / np.sqrt(2)) < 1e-15
