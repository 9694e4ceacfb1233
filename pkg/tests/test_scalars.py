from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nonassoc.scalars import HALF, I, ONE, ZERO, GaussianRational

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, fractions, fractions)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + ZERO == a and a * ONE == a
    if a:
        assert a * a.inverse() == ONE


@given(gaussians)
def test_text_and_quad_round_trip(a):
    assert GaussianRational.parse(str(a)) == a
    assert GaussianRational.from_quad(a.to_quad()) == a


@given(fractions)
def test_real_values_hash_like_fractions(q):
    assert hash(GaussianRational(q)) == hash(q)
    assert GaussianRational(q) == q


def test_normal_form_and_printing():
    assert GaussianRational(Fraction(2, 4), Fraction(-3, 6)).to_quad() == [1, 2, -1, 2]
    assert str(GaussianRational(Fraction(1, 2), Fraction(-3, 4))) == "1/2 - 3/4*I"
    assert str(I) == "I" and str(-I) == "-I" and str(ZERO) == "0"
    assert I * I == -ONE
    assert HALF + HALF == ONE
    assert I ** -1 == -I


@pytest.mark.parametrize("text, value", [
    ("3", GaussianRational(3)),
    ("-1/2", GaussianRational(Fraction(-1, 2))),
    ("2/3*I", GaussianRational(0, Fraction(2, 3))),
    ("1 - I", GaussianRational(1, -1)),
])
def test_parse(text, value):
    assert GaussianRational.parse(text) == value


@pytest.mark.parametrize("bad", ["", "x", "1 2", "*I", "1/0"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        GaussianRational.parse(bad)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
