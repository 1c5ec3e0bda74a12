from fractions import Fraction

import pytest
from hypothesis import given

from planezeros.gaussrat import GaussRat, I, cross, inverse, nullspace, parse_rational, primitive_integer_vector, rref, solve2

from conftest import gaussrats, nonzero_gaussrats


def test_parse_and_format():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-7") == -7
    assert GaussRat.parse(["1/3", "-2"]) == GaussRat(Fraction(1, 3), -2)
    assert GaussRat(Fraction(1, 3), -2).to_pair() == ["1/3", "-2"]


@pytest.mark.parametrize("bad", ["0.5", "1/0", "", "x", "1e3"])
def test_parse_refuses_non_rationals(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_parse_refuses_numbers_in_pairs():
    with pytest.raises(ValueError):
        GaussRat.parse([0.5, "0"])


def test_float_coercion_refused():
    with pytest.raises(TypeError):
        GaussRat(0.5, 0)


@given(gaussrats, gaussrats, nonzero_gaussrats)
def test_field_laws(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert (x * z) / z == x
    assert (x - y) + y == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert z * z.conj() == GaussRat(z.abs2(), 0)


@given(nonzero_gaussrats, nonzero_gaussrats, gaussrats)
def test_solve2(w1, w2, v):
    if cross(w1, w2) == 0:
        return
    x, y = solve2(w1, w2, v)
    assert w1 * x + w2 * y == v


def test_i_squared():
    assert I * I == -1


def test_rref_and_nullspace():
    rows, piv = rref([[Fraction(1), Fraction(2), Fraction(3)], [Fraction(2), Fraction(4), Fraction(7)]])
    assert piv == [0, 2]
    ns = nullspace(rows, 3)
    assert ns == [[-2, 1, 0]]


def test_primitive_vector_and_inverse():
    assert primitive_integer_vector([Fraction(1, 2), Fraction(3, 4)]) == (2, 3)
    assert primitive_integer_vector([Fraction(0), Fraction(-2, 3)]) == (0, -1)
    m = [[2, 1], [1, 1]]
    inv = inverse(m)
    assert inv == [[1, -1], [-1, 2]]
