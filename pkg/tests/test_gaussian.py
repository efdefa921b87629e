from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from valdist.gaussian import GaussianRational as G, as_gaussian, parse_scalar

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)
gaussians = st.builds(G, fractions, fractions)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == G(0)
    if b:
        assert (a / b) * b == a


@given(gaussians, gaussians)
def test_matches_complex_arithmetic(a, b):
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert complex(a + b) == pytest.approx(complex(a) + complex(b))


@given(gaussians)
def test_abs2_is_product_with_conjugate(a):
    assert G(a.abs2()) == a * a.conjugate()


@pytest.mark.parametrize("text, expected", [
    ("96/25", G(Fraction(96, 25))),
    ("1/2+3i", G(Fraction(1, 2), 3)),
    ("-i", G(0, -1)),
    ("2", G(2)),
    ("-3/4-1/2i", G(Fraction(-3, 4), Fraction(-1, 2))),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["", "1/", "2x", "1++2", "i i"])
def test_parse_scalar_rejects(text):
    with pytest.raises(ValueError):
        parse_scalar(text)


def test_as_gaussian_accepts_python_numbers():
    assert as_gaussian(3) == G(3)
    assert as_gaussian(Fraction(1, 3)) == G(Fraction(1, 3))
    assert as_gaussian(G(1, 1)) == G(1, 1)


def test_integrality():
    assert G(4).is_integer()
    assert not G(Fraction(1, 2)).is_integer()
    assert G(1, 1).is_integer()
    assert not G(1, Fraction(1, 2)).is_integer()
