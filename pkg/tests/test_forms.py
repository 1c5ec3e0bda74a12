from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given

from planezeros.forms import L1, L2, LinearForm, canonical_key, classify, divisor_certificate
from planezeros.gaussrat import GaussRat, I, dot
from planezeros.oracle import divisor_point

from conftest import gaussrats, l1_forms, linear_forms, nonzero_gaussrats

half = Fraction(1, 2)


def test_real_vector_is_l1():
    cf = classify(LinearForm((1, 0)))
    assert (cf.cls, cf.m, cf.k0, cf.scale) == (L1, 1, (1, 0), GaussRat(1))


def test_unit_complex_pair_is_l2():
    cf = classify(LinearForm((1, I)))
    assert (cf.cls, cf.m, cf.witness) == (L2, 2, (0, 1))


def test_complex_multiple_of_integer_vector_is_l1():
    cf = classify(LinearForm((1 + I, 2 + 2 * I)))
    assert cf.cls == L1 and cf.k0 == (1, 2) and cf.scale == 1 + I


def test_certificates():
    assert divisor_certificate(LinearForm((1, I))).witness == (0, 1)
    c = divisor_certificate(LinearForm((1, 2), half))
    assert c.cls == L1 and c.k0 == (1, 2)
    # the pair (1, 2) has a real ratio and is skipped
    assert divisor_certificate(LinearForm((1, half, I))).witness == (0, 2)


def test_invalid_forms():
    with pytest.raises(ValueError):
        LinearForm((0, 0))
    with pytest.raises(ValueError):
        LinearForm((1,))
    with pytest.raises(ValueError):
        LinearForm((1, I), mult=0)


@pytest.mark.parametrize("f, g", [
    (LinearForm((1, 0), Fraction(1, 3)), LinearForm((1, 0), Fraction(4, 3))),
    (LinearForm((1, I)), LinearForm((I, -1))),
    (LinearForm((1, I), Fraction(1, 3)), LinearForm((1, I), Fraction(1, 3) + 2 + 5 * I)),
])
def test_equal_keys(f, g):
    assert canonical_key(f) == canonical_key(g)


def test_different_keys():
    assert canonical_key(LinearForm((1, I))) != canonical_key(LinearForm((1, -I)))
    assert canonical_key(LinearForm((1, I), half)) != canonical_key(LinearForm((1, I)))
    # 1/2 is a value of (2, 1) only up to the integer values 2 k1 + k2
    assert canonical_key(LinearForm((2, 1), half)) != canonical_key(LinearForm((2, 1)))
    assert canonical_key(LinearForm((2, 4), half)) == canonical_key(LinearForm((1, 2), Fraction(1, 4)))


@given(linear_forms())
def test_classification_invariants(f):
    cf = classify(f)
    re = np.array([float(x.re) for x in f.a])
    im = np.array([float(x.im) for x in f.a])
    assert cf.m == np.linalg.matrix_rank(np.stack([re, im]))
    n = f.n
    # basis and dual rows are inverse to each other
    for i in range(n):
        for j in range(n):
            assert sum(cf.dual[i][k] * cf.basis[j][k] for k in range(n)) == (i == j)
    assert cf.b == tuple(dot(f.a, lam) for lam in cf.basis)
    for lam in cf.basis[cf.m:]:
        assert dot(f.a, lam) == 0
    if cf.cls == L1:
        assert gcd(*cf.k0) == 1 and next(k for k in cf.k0 if k) > 0
        assert all(a == cf.scale * k for a, k in zip(f.a, cf.k0))
    else:
        b1, b2 = cf.b[0], cf.b[1]
        assert b1 and b2 and (b2 / b1).im != 0
        p, q = divisor_certificate(cf).witness
        assert (f.a[q] / f.a[p]).im != 0


@given(linear_forms(), nonzero_gaussrats)
def test_classification_scale_invariant(f, lam):
    a, b = classify(f), classify(f.scaled(lam))
    assert a.cls == b.cls and a.k0 == b.k0


@given(l1_forms())
def test_l1_strategy_is_l1(f):
    assert classify(f).cls == L1


@given(linear_forms(), nonzero_gaussrats)
def test_key_scale_invariant(f, lam):
    assert canonical_key(f) == canonical_key(f.scaled(lam))


@given(linear_forms(n=2))
def test_key_invariant_under_value_shifts(f):
    rng = np.random.default_rng(0)
    k = [int(x) for x in rng.integers(-3, 4, f.n)]
    g = LinearForm(f.a, f.c + dot(f.a, k))
    assert canonical_key(f) == canonical_key(g)


@given(linear_forms(n=2), nonzero_gaussrats, gaussrats)
def test_equal_keys_share_zeros(f, lam, shift):
    """Equal keys: exactly sampled zeros of one form's reproduction are zeros of the other's."""
    g = LinearForm(tuple(lam * x for x in f.a), lam * (f.c + shift))
    same = canonical_key(f) == canonical_key(g)
    rng = np.random.default_rng(1)
    hits = []
    for _ in range(4):
        z = divisor_point(f, rng)
        v = g(z)
        # v must be a value <a', k> of g for some integer k (up to c)
        hits.append(_is_value(g, v))
    if same:
        assert all(hits)
    else:
        assert not all(hits)


def _is_value(form, v):
    from planezeros.lattice import value_lattice

    cf = classify(form)
    if cf.cls == L1:
        u = v / cf.scale
        return u.im == 0 and u.re.denominator == 1
    return value_lattice(form).contains(v)
