"""Field laws and canonical printing for the Gaussian rationals."""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lgtft.scalars import GaussianRational, scalar_str

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=12
)
scalars = st.builds(GaussianRational, rationals, rationals)
nonzero_scalars = scalars.filter(bool)


def test_imaginary_unit_squares_to_minus_one():
    i = GaussianRational(0, 1)
    assert i * i == GaussianRational(-1)


def test_basic_arithmetic():
    a = GaussianRational(Fraction(1, 2), 1)
    b = GaussianRational(3, Fraction(-1, 3))
    assert a + b == GaussianRational(Fraction(7, 2), Fraction(2, 3))
    assert a * b == GaussianRational(Fraction(11, 6), Fraction(17, 6))
    assert (a / b) * b == a


@given(scalars, scalars, scalars)
def test_associativity_and_distributivity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(scalars, scalars)
def test_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@given(nonzero_scalars)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == GaussianRational(1)
    assert a / a == GaussianRational(1)


@given(scalars)
def test_additive_inverse(a):
    assert a + (-a) == GaussianRational(0)
    assert not (a - a)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


@pytest.mark.parametrize(
    "value,expected",
    [
        (GaussianRational(Fraction(3, 2)), "3/2"),
        (GaussianRational(-1), "-1"),
        (GaussianRational(0), "0"),
        (GaussianRational(0, 1), "i"),
        (GaussianRational(0, -1), "-i"),
        (GaussianRational(0, Fraction(-2, 5)), "-2/5*i"),
        (GaussianRational(1, 2), "1+2*i"),
        (GaussianRational(Fraction(1, 2), -1), "1/2-i"),
    ],
)
def test_canonical_strings(value, expected):
    assert scalar_str(value) == expected


def test_conjugate_and_pow():
    z = GaussianRational(2, 3)
    assert z.conjugate() == GaussianRational(2, -3)
    assert z**0 == GaussianRational(1)
    assert z**3 == z * z * z
