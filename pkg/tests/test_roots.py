import pytest
from hypothesis import given

from conftest import int_polys
from valdist.families import make_frank_reinders
from valdist.gaussian import GaussianRational as G
from valdist.poly import Polynomial
from valdist.roots import RootFindingError, rational_roots, roots_numeric

z = Polynomial.x()


def test_roots_of_z2_minus_1():
    rs = roots_numeric(z**2 - 1, tol=1e-12)
    assert sorted(e.location.real for e in rs) == pytest.approx([-1.0, 1.0])
    assert [e.multiplicity for e in rs] == [1, 1]


def test_multiplicity_is_exact():
    rs = roots_numeric((z - 1) ** 3)
    assert len(rs) == 1
    assert rs.entries[0].multiplicity == 3
    assert rs.entries[0].location == pytest.approx(1.0)


def test_frank_reinders_has_six_simple_roots():
    rs = roots_numeric(make_frank_reinders(6, 3))
    assert len(rs) == 6
    assert all(e.multiplicity == 1 for e in rs)


def test_ordering_is_deterministic():
    p = (z**2 + 1) * (z - 2) * (z + 2)
    first, second = roots_numeric(p), roots_numeric(p)
    assert first.locations == second.locations
    keys = [(round(w.real, 8), round(w.imag, 8)) for w in first.locations]
    assert keys == sorted(keys)


def test_iteration_budget_is_reported():
    with pytest.raises(RootFindingError) as err:
        roots_numeric(z**7 - 3 * z + 1, max_iter=1)
    assert "factor" in str(err.value)


def test_rational_roots_recovered_exactly():
    p = (3 * z - 1) * (z + 2)
    assert set(rational_roots(p, [complex(1 / 3), complex(-2)])) == {G(-2), G(1) / 3}


@given(int_polys(max_degree=7))
def test_rootset_invariants(p):
    rs = roots_numeric(p)
    assert rs.total_multiplicity == p.degree
    for e in rs:
        coeffs = e.source.to_complex()
        residual = abs(sum(c * e.location**k for k, c in enumerate(coeffs))) / max(abs(c) for c in coeffs)
        assert residual <= 1e-10 * (1 + abs(e.location)) ** e.source.degree
