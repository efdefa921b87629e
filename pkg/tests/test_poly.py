from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import Z, from_sympy, int_polys, to_sympy
from valdist.families import make_gamma, make_psi, make_yi
from valdist.gaussian import GaussianRational as G
from valdist.poly import (Polynomial, ZeroPolynomialError, discriminant, gcd_monic, multiplication_charpoly,
                          power_sums, resultant, root_sum, squarefree_decomposition, squarefree_part)

z = Polynomial.x()
T = sp.Symbol("t")


def test_gcd_examples():
    assert gcd_monic(z**2 - 1, z - 1) == z - 1
    yi = make_yi(4, 1, 1)
    assert gcd_monic(yi, yi.derivative()) == Polynomial([1])
    gamma = make_gamma(6)
    assert gcd_monic(gamma, (z - 1) ** 4) == (z - 1) ** 4


def test_gcd_of_two_zeros_is_an_error():
    with pytest.raises(ZeroPolynomialError):
        gcd_monic(Polynomial(), Polynomial())


def test_squarefree_examples():
    assert squarefree_decomposition(z**2 * (z - 1) ** 3) == [(z, 2), (z - 1, 3)]
    # Yun groups the derivative of P*(3,3), z^3 (z-1)^3, into one factor per multiplicity
    assert squarefree_decomposition(z**3 * (z - 1) ** 3) == [(z * (z - 1), 3)]
    parts = dict((m, f) for f, m in squarefree_decomposition(make_gamma(6)))
    assert parts[4] == z - 1
    assert parts[1].degree == 6


def test_squarefree_rejects_constants():
    with pytest.raises(ValueError):
        squarefree_decomposition(Polynomial([3]))


def test_discriminant_examples():
    assert discriminant(z**2 - 1) == G(4)
    assert discriminant(z**2 + 2 * z + 1) == G(0)
    # frozen from sympy.discriminant of the same polynomial
    assert discriminant(make_psi(6, 2)) == G(Fraction(-53790705718937052512256, 152587890625))


def test_discriminant_rejects_constants():
    with pytest.raises(ValueError):
        discriminant(Polynomial([5]))


def test_zero_polynomial_degree_is_an_error():
    with pytest.raises(ZeroPolynomialError):
        Polynomial().degree


@given(int_polys())
def test_squarefree_product_reconstructs(p):
    prod = Polynomial([1])
    factors = squarefree_decomposition(p)
    for f, m in factors:
        assert gcd_monic(f, f.derivative()).degree == 0
        prod = prod * f**m
    assert prod * p.lc == p
    for i, (f, _) in enumerate(factors):
        for g, _ in factors[i + 1:]:
            assert gcd_monic(f, g).degree == 0


@given(int_polys(min_degree=2))
def test_discriminant_zero_iff_repeated_root(p):
    assert (discriminant(p) == 0) == (gcd_monic(p, p.derivative()).degree >= 1)


@given(int_polys(min_degree=2, max_degree=6))
def test_discriminant_matches_sympy(p):
    assert discriminant(p) == from_sympy(sp.discriminant(to_sympy(p), Z)).coeff(0)


def sylvester_determinant(p: Polynomial, q: Polynomial) -> int:
    """Res(p, q) straight from its definition as the Sylvester determinant."""
    a = [int(c.re) for c in reversed(p.coeffs)]
    b = [int(c.re) for c in reversed(q.coeffs)]
    n, m = len(a) - 1, len(b) - 1
    rows = [[0] * i + a + [0] * (m - 1 - i) for i in range(m)]
    rows += [[0] * i + b + [0] * (n - 1 - i) for i in range(n)]
    return int(sp.Matrix(rows).det())


@given(int_polys(max_degree=5), int_polys(max_degree=5))
def test_resultant_matches_sylvester_determinant(p, q):
    assert resultant(p, q) == G(sylvester_determinant(p, q))


def test_resultant_of_linear_with_cubic():
    # Res(z, z^3 + 1) = (z^3 + 1) at z = 0
    assert resultant(z, z**3 + 1) == G(1)
    assert resultant(z**3 + 1, z) == G(-1)


@given(int_polys(max_degree=6), int_polys(max_degree=6))
def test_gcd_matches_sympy(p, q):
    expected = sp.Poly(sp.gcd(to_sympy(p), to_sympy(q)), Z).monic()
    assert gcd_monic(p, q) == from_sympy(expected.as_expr())


@given(int_polys(max_degree=6), int_polys(max_degree=4))
def test_division_identity(p, q):
    quo, rem = divmod(p, q)
    assert quo * q + rem == p
    assert rem.is_zero() or rem.degree < q.degree


def test_multiplication_charpoly_gives_values_at_roots():
    # P = z^3 at the roots of s = z^2 - 2 takes values +-2 sqrt 2; charpoly = w^2 - 8
    assert multiplication_charpoly(z**3, z**2 - 2) == z**2 - 8


def test_power_sums_and_root_sum():
    s = (z - 1) * (z - 2) * (z + 3)
    # roots 1, 2, -3: p_0 = 3, p_1 = 0, p_2 = 1 + 4 + 9
    assert power_sums(s, 3) == [G(3), G(0), G(14)]
    assert root_sum(z**2 + 1, s) == G(1 + 1 + 4 + 1 + 9 + 1)


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=5), int_polys(max_degree=4))
def test_root_sum_matches_direct_sum(roots, p):
    s = Polynomial.from_roots(roots)
    s = squarefree_part(s)
    distinct = sorted(set(roots))
    assert root_sum(p, s) == sum((p(G(r)) for r in distinct), G(0))
