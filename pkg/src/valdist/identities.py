"""Exact identity checks for functions that are rational in u = exp(c z).

Since u never vanishes and never takes the value infinity at a finite z,
the a-points of such a function are the roots (in u) of the numerator of
f - a, with u = 0 discarded. Value sharing therefore reduces to comparing
polynomial root sets, which is exact through gcd computations.
"""

from __future__ import annotations

from .certificate import Certificate, Condition, conclude
from .gaussian import GaussianRational, as_gaussian
from .poly import Polynomial, squarefree_part
from .ratfunc import RationalFunction, rf_derivative_in_z, rf_equal

__all__ = ["INFINITY", "as_rational_function", "a_point_polynomial", "share_values",
           "check_rational_identity", "check_set_sharing_example", "check_derivative_sign_example"]

INFINITY = "inf"
U = Polynomial.x()


def as_rational_function(f) -> RationalFunction:
    return f if isinstance(f, RationalFunction) else RationalFunction(f)


def _strip_u(p: Polynomial) -> Polynomial:
    """Drop the factor u^k: u = 0 is never attained."""
    k = p.trailing_order()
    return Polynomial(p.coeffs[k:])


def a_point_polynomial(f, a) -> Polynomial:
    """Monic polynomial in u whose roots (with multiplicity) are the a-points of f."""
    f = as_rational_function(f)
    if a == INFINITY:
        p = f.den
    else:
        p = (f - as_gaussian(a)).num
    if p.is_zero():
        raise ValueError(f"function is identically equal to {a}")
    p = _strip_u(p)
    return p.monic()


def share_values(f, g, values, counting_multiplicity: bool = False) -> Certificate:
    """Do f and g share every listed value (IM by default, CM on request)?"""
    f, g = as_rational_function(f), as_rational_function(g)
    trace = []
    mode = "CM" if counting_multiplicity else "IM"
    for a in values:
        pf, pg = a_point_polynomial(f, a), a_point_polynomial(g, a)
        if not counting_multiplicity:
            pf, pg = squarefree_part(pf) if pf.degree else pf, squarefree_part(pg) if pg.degree else pg
        label = "inf" if a == INFINITY else str(as_gaussian(a))
        trace.append(Condition.check(f"{label}-points of f and g agree ({mode})", pf.render("u"), "eq",
                                     pg.render("u")))
    distinct = not rf_equal(f, g)
    trace.append(Condition.check("f and g are different functions", distinct, "eq", True))
    return conclude(f"share-{mode}", trace, info={"f": f.render(), "g": g.render()})


def check_rational_identity(lhs, rhs) -> Certificate:
    lhs, rhs = as_rational_function(lhs), as_rational_function(rhs)
    trace = [Condition.check("lhs.num * rhs.den == rhs.num * lhs.den", rf_equal(lhs, rhs), "eq", True)]
    return conclude("rational-identity", trace, info={"lhs": lhs.render(), "rhs": rhs.render()})


def check_set_sharing_example(a, b) -> Certificate:
    """F = u + a + b with u = exp(-z), so F' = -u.

    Then (F - a)(F - b) and (F' - a)(F' - b) are the same polynomial in u, so
    F and F' share the set {a, b} counting multiplicities, while F differs
    from F'.
    """
    a, b = as_gaussian(a), as_gaussian(b)
    F = RationalFunction(U + a + b)
    dF = rf_derivative_in_z(F, -1)
    left = (F - a) * (F - b)
    right = (dF - a) * (dF - b)
    trace = [
        Condition.check("a != b", a, "ne", b),
        Condition.check("F' == -u", rf_equal(dF, RationalFunction(-U)), "eq", True),
        Condition.check("(F - a)(F - b) == (F' - a)(F' - b)", rf_equal(left, right), "eq", True),
        Condition.check("F != F'", rf_equal(F, dF), "eq", False),
    ]
    info = {"F": F.render(), "F'": dF.render(), "product": left.render()}
    return conclude("set-sharing-example", trace, info=info, preconditions=1)


def check_derivative_sign_example() -> Certificate:
    """f = 2/(1 - u), u = exp(-2z): which sign links f' - 1 and (f - 1)^2?

    The trace records both candidate identities; the certificate is certified
    when exactly one of them holds, and ``info['sign']`` names it.
    """
    f = RationalFunction(Polynomial([2]), Polynomial([1, -1]))
    df = rf_derivative_in_z(f, -2)
    lhs = df - 1
    square = (f - 1) ** 2
    plus, minus = rf_equal(lhs, square), rf_equal(lhs, -square)
    one = GaussianRational(1)
    shared = share_values(f, df, [one])
    no_zeros = _strip_u(df.num).degree == 0
    trace = [
        Condition.check("f and f' share 1 IM", shared.trace[0].holds, "eq", True),
        Condition.check("f' has no zeros", no_zeros, "eq", True),
        Condition.check("exactly one of f' - 1 == +(f - 1)^2, f' - 1 == -(f - 1)^2 holds", plus != minus, "eq",
                        True),
    ]
    sign = "+" if plus else "-" if minus else "neither"
    info = {"f": f.render(), "f'": df.render(), "f' - 1": lhs.render(), "(f - 1)^2": square.render(),
            "plus_identity": plus, "minus_identity": minus, "sign": sign}
    notes = [f"f' - 1 = {sign}(f - 1)^2 holds exactly"] if sign != "neither" else []
    if minus:
        notes.append("the plus-sign form f' - 1 = (f - 1)^2 does not hold")
    return conclude("derivative-sign-example", trace, notes, info)
