from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given

from blocktoeplitz import ONE, ZERO, GaussianRational, I, ParseError, format_gr, gr, parse_gr
from conftest import gaussians, nonzero_gaussians


def to_sympy(x: GaussianRational):
    return sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)


def test_multiply():
    assert gr("1+2i") * gr("3-i") == gr("5+5i")


def test_divide_by_imaginary():
    assert ONE / gr("2i") == GaussianRational(0, Fraction(-1, 2))


def test_conjugate_sum_is_real():
    x = GaussianRational(Fraction(1, 2), Fraction(1, 3))
    assert x + x.conjugate() == ONE


def test_integral_parts_normalize():
    x = GaussianRational(Fraction(4, 2), Fraction(0))
    assert type(x.re) is int and x == 2 and hash(x) == hash(GaussianRational(2))


@pytest.mark.parametrize("text, re, im", [
    ("3/2", Fraction(3, 2), 0),
    ("-1/4i", 0, Fraction(-1, 4)),
    ("2+3i", 2, 3),
    ("i", 0, 1),
    ("-i", 0, -1),
    ("0", 0, 0),
    ("7-2/6i", 7, Fraction(-1, 3)),
])
def test_parse(text, re, im):
    assert parse_gr(text) == GaussianRational(re, im)


@pytest.mark.parametrize("text", ["", "1+", "2/0", "1.5", "ii", "3i+2", "abc", "1+2", " 1", "1 + i"])
def test_parse_errors_carry_position(text):
    with pytest.raises(ParseError) as info:
        parse_gr(text)
    assert 0 <= info.value.position <= len(text)


def test_format_canonical():
    assert format_gr(GaussianRational(Fraction(15, 2), 5)) == "15/2+5i"
    assert format_gr(GaussianRational(0, Fraction(-1, 2))) == "-1/2i"
    assert format_gr(ZERO) == "0"
    assert format_gr(I) == "1i"


def test_zero_division():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_power_negative_exponent():
    assert gr("1+i") ** -2 == ONE / (gr("1+i") * gr("1+i"))


@given(nonzero_gaussians)
def test_inverse_is_exact(x):
    assert x * (ONE / x) == ONE


@given(gaussians)
def test_format_parse_roundtrip(x):
    assert parse_gr(format_gr(x)) == x


@given(gaussians, gaussians, gaussians)
def test_field_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x and x + y == y + x
    assert x * (y + z) == x * y + x * z


@given(gaussians, nonzero_gaussians)
def test_matches_sympy(x, y):
    assert to_sympy(x * y) == sp.expand(to_sympy(x) * to_sympy(y))
    assert to_sympy(x / y) == sp.nsimplify(sp.expand(sp.simplify(to_sympy(x) / to_sympy(y))))
    assert to_sympy(x - y) == to_sympy(x) - to_sympy(y)
