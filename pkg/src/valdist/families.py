"""Named polynomial families with exact parameter validation and self-checks.

Each constructor validates its admissibility constraints exactly, builds the
polynomial, and (unless ``self_check=False``) verifies the structural facts the
family is known for: derivative identities, simple zeros, divisibility of
P - P(d) by the right power of (z - d). A failed self-check raises
:class:`InternalConsistencyError`; no polynomial is returned in that case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd

from .certificate import Certificate, Condition, conclude
from .gaussian import GaussianRational, as_gaussian, parse_scalar
from .poly import Polynomial, discriminant, gcd_monic, squarefree_part

__all__ = [
    "ParameterError",
    "InternalConsistencyError",
    "FamilySpec",
    "FAMILY_IDS",
    "make_p_star",
    "make_p_star_general",
    "make_p_b",
    "make_p_b1",
    "make_frank_reinders",
    "frank_reinders_polynomial",
    "make_yi",
    "make_p_hat",
    "make_p_bar",
    "make_psi",
    "make_gamma",
    "bar_lambda",
    "sum_identity_S",
    "SumIdentity",
    "psi_check",
    "build_family",
]

Z = Polynomial.x()
ONE = GaussianRational(1)


class ParameterError(ValueError):
    """A family parameter violates one of its admissibility constraints."""


class InternalConsistencyError(RuntimeError):
    """A constructed polynomial failed its own structural self-check."""


@dataclass(frozen=True)
class FamilySpec:
    family_id: str
    parameters: dict = field(default_factory=dict)


FAMILY_IDS = ("p-star", "p-star-general", "p-b", "p-b1", "frank-reinders", "yi", "p-hat", "p-bar", "psi",
              "gamma")


def _require(ok: bool, constraint: str):
    if not ok:
        raise ParameterError(f"constraint violated: {constraint}")


def _simple_zeros(p: Polynomial) -> Condition:
    return Condition.check("simple zeros: deg gcd(P, P') == 0", gcd_monic(p, p.derivative()).degree, "eq", 0)


def _divisible_by_power(p: Polynomial, point, power: int, label: str) -> Condition:
    point = as_gaussian(point)
    lin = Polynomial([-point, 1]) ** power
    return Condition.check(f"(z - {label})^{power} divides P - P({label})",
                           lin.divides(p - Polynomial.constant(p(point))), "eq", True)


def _finish(family: str, poly: Polynomial, checks: list[Condition], self_check: bool) -> Polynomial:
    if self_check:
        failed = [c.text for c in checks if not c.holds]
        if failed:
            raise InternalConsistencyError(f"{family} self-check failed: {'; '.join(failed)}")
    return poly


# -- P* and its generalisations ----------------------------------------------


def _p_star_checks(n, m):
    _require(isinstance(n, int) and n >= 3, "n >= 3")
    _require(isinstance(m, int) and m >= 3, "m >= 3")
    deriv = Z**n * (Z - 1) ** m
    p = deriv.antiderivative() + 1
    checks = [
        Condition.check("degree == n + m + 1", p.degree, "eq", n + m + 1),
        Condition.check("P' == z^n (z-1)^m", p.derivative() == deriv, "eq", True),
        Condition.check("P(0) == 1", p(ONE * 0), "eq", 1),
        _simple_zeros(p),
    ]
    return p, checks


def make_p_star(n: int, m: int, self_check: bool = True) -> Polynomial:
    """The antiderivative of z^n (z-1)^m normalised to constant term 1."""
    return _finish("p-star", *_p_star_checks(n, m), self_check)


def _general_q(n, m, a, b) -> Polynomial:
    return ((Z - b) ** m * (Z - a) ** n).antiderivative()


def _excluded_c(q: Polynomial, a, b) -> dict[str, GaussianRational]:
    qa, qb = q(a), q(b)
    return {"c != 0": GaussianRational(0), "c != -Q(a)": -qa, "c != -Q(b)": -qb,
            "c != -(Q(a)+Q(b))/2": -(qa + qb) / 2}


def _p_star_general_checks(n, m, a, b, c):
    a, b, c = as_gaussian(a), as_gaussian(b), as_gaussian(c)
    _require(isinstance(n, int) and isinstance(m, int) and min(n, m) >= 2, "min{m, n} >= 2")
    _require(bool(b), "b != 0")
    _require(a != b, "a != b")
    q = _general_q(n, m, a, b)
    for text, value in _excluded_c(q, a, b).items():
        _require(c != value, f"{text} (= {value})")
    p = q + c
    deriv = (Z - b) ** m * (Z - a) ** n
    checks = [
        Condition.check("P' == (z-b)^m (z-a)^n", p.derivative() == deriv, "eq", True),
        _simple_zeros(p),
        Condition.check("P(a) != P(b)", p(a), "ne", p(b)),
        _divisible_by_power(p, a, n + 1, "a"),
        _divisible_by_power(p, b, m + 1, "b"),
    ]
    return p, checks


def make_p_star_general(n: int, m: int, a, b, c, self_check: bool = True) -> Polynomial:
    """Antiderivative of (z-b)^m (z-a)^n vanishing at 0, plus c."""
    return _finish("p-star-general", *_p_star_general_checks(n, m, a, b, c), self_check)


def _p_b_checks(n, m, c, b=1):
    c, b = as_gaussian(c), as_gaussian(b)
    if b == 1:
        lam = _general_q(n, m, 0, 1)(ONE)
        for text, value in {"c != 0": 0, "c != -lambda": -lam, "c != -lambda/2": -lam / 2}.items():
            _require(c != value, f"{text} (= {as_gaussian(value)})")
    return _p_star_general_checks(n, m, 0, b, c)


def make_p_b(n: int, m: int, c, b=1, self_check: bool = True) -> Polynomial:
    """The a = 0 specialisation; with b = 1 its derivative is z^n (z-1)^m.

    Two exclusion lists exist for this case: {0, -lam, -lam/2} with lam the
    value at 1, and the four-value list of the general family. Their union is
    enforced (for b = 1 the two coincide because Q(0) = 0).
    """
    return _finish("p-b", *_p_b_checks(n, m, c, b), self_check)


def _p_b1_checks(n, m, b):
    b = as_gaussian(b)
    _require(bool(b), "b != 0")
    s = sum((Fraction(comb(m, i) * (-1) ** i, n + m + 1 - i) for i in range(m + 1)), Fraction(0))
    scaled = b ** (n + m + 1) * s
    _require(scaled != -1, "b^{n+m+1} * sum C(m,i)(-1)^i/(n+m+1-i) != -1")
    _require(scaled != -2, "b^{n+m+1} * sum C(m,i)(-1)^i/(n+m+1-i) != -2")
    return _p_star_general_checks(n, m, 0, b, 1)


def make_p_b1(n: int, m: int, b, self_check: bool = True) -> Polynomial:
    """The a = 0, c = 1 preset with its own exclusion b^{n+m+1} S != -1, -2."""
    return _finish("p-b1", *_p_b1_checks(n, m, b), self_check)


# -- Frank-Reinders ----------------------------------------------------------


def frank_reinders_polynomial(n: int, c) -> Polynomial:
    """The raw polynomial for any n >= 3 (no admissibility checks)."""
    c = as_gaussian(c)
    return (Polynomial.monomial(n, Fraction((n - 1) * (n - 2), 2))
            - Polynomial.monomial(n - 1, n * (n - 2))
            + Polynomial.monomial(n - 2, Fraction(n * (n - 1), 2))
            - c)


def _frank_reinders_checks(n, c):
    c = as_gaussian(c)
    _require(isinstance(n, int) and n >= 6, "n >= 6")
    for bad in (0, 1, Fraction(1, 2)):
        _require(c != bad, f"c != {bad}")
    p = frank_reinders_polynomial(n, c)
    checks = [
        _divisible_by_power(p, 1, 3, "1"),
        _divisible_by_power(p, 0, n - 2, "0"),
        Condition.check("P' == n(n-1)(n-2)/2 z^{n-3} (z-1)^2",
                        p.derivative() == Z ** (n - 3) * (Z - 1) ** 2 * Fraction(n * (n - 1) * (n - 2), 2),
                        "eq", True),
        _simple_zeros(p),
    ]
    return p, checks


def make_frank_reinders(n: int, c, self_check: bool = True) -> Polynomial:
    return _finish("frank-reinders", *_frank_reinders_checks(n, c), self_check)


# -- Yi ----------------------------------------------------------------------


def _yi_checks(n, a, b):
    a, b = as_gaussian(a), as_gaussian(b)
    _require(isinstance(n, int) and n >= 3, "n >= 3")
    _require(bool(a * b), "a*b != 0")
    _require(a * b ** (n - 2) != 2, "a*b^(n-2) != 2")
    p = (Polynomial.monomial(n, a) - Polynomial.monomial(2, n * (n - 1))
         + Polynomial.monomial(1, 2 * n * (n - 2) * b) - (n - 1) * (n - 2) * b * b)
    expected = n * b * (a * b ** (n - 2) - 2)
    checks = [
        Condition.check("P'(b) == n b (a b^(n-2) - 2)", p.derivative()(b), "eq", expected),
        Condition.check("P'(b) != 0", expected, "ne", 0),
        _simple_zeros(p),
    ]
    return p, checks


def make_yi(n: int, a, b, self_check: bool = True) -> Polynomial:
    return _finish("yi", *_yi_checks(n, a, b), self_check)


# -- P-hat -------------------------------------------------------------------


def p_hat_constant(n: int, m: int) -> Fraction:
    """1 - 2n/(n-m) + n/(n-2m), which equals 2m^2/((n-m)(n-2m))."""
    return 1 - Fraction(2 * n, n - m) + Fraction(n, n - 2 * m)


def _p_hat_checks(n, m, c):
    from .certify import check_property_H

    c = as_gaussian(c)
    _require(isinstance(n, int) and isinstance(m, int) and m >= 1, "m >= 1")
    _require(n > 2 * m, "n > 2m")
    _require(gcd(m, n) == 1, "gcd(m, n) == 1")
    _require(bool(c), "c != 0")
    bound = Fraction(2 * m * m, (n - m) * (n - 2 * m))
    _require(c.abs2() != bound * bound, f"|c| != 2m^2/((n-m)(n-2m)) (= {bound})")
    half = -p_hat_constant(n, m) / 2
    _require(c != half, f"c != -(1 - 2n/(n-m) + n/(n-2m))/2 (= {half})")
    p = (Polynomial.monomial(n) - Polynomial.monomial(n - m, Fraction(2 * n, n - m))
         + Polynomial.monomial(n - 2 * m, Fraction(n, n - 2 * m)) + c)
    checks = [
        Condition.check("P' == n z^(n-2m-1) (z^m - 1)^2",
                        p.derivative() == Z ** (n - 2 * m - 1) * (Z**m - 1) ** 2 * n, "eq", True),
        _simple_zeros(p),
        Condition.check("critically injective", check_property_H(p).certified, "eq", True),
    ]
    return p, checks


def make_p_hat(n: int, m: int, c, self_check: bool = True) -> Polynomial:
    return _finish("p-hat", *_p_hat_checks(n, m, c), self_check)


# -- P-bar, psi and Gamma -----------------------------------------------------


def bar_lambda(n: int) -> Fraction:
    """4(1 - 1/(n-1)^2), exact."""
    return 4 * (1 - Fraction(1, (n - 1) ** 2))


def _p_bar_checks(n, a, b):
    a, b = as_gaussian(a), as_gaussian(b)
    _require(isinstance(n, int) and n >= 6, "n >= 6")
    _require(bool(a * b), "a*b != 0")
    lam = bar_lambda(n)
    _require(a * a == b * lam, f"a^2 == lambda*b with lambda = {lam}")
    p = Polynomial.monomial(n) + Polynomial.monomial(n - 1, a) + Polynomial.monomial(n - 2, b)
    return p, [Condition.check("multiplicity of the zero at 0 == n - 2", p.trailing_order(), "eq", n - 2)]


def make_p_bar(n: int, a, b, self_check: bool = True) -> Polynomial:
    return _finish("p-bar", *_p_bar_checks(n, a, b), self_check)


def make_psi(n: int, A) -> Polynomial:
    """lambda (t^{n-1} - A)^2 - 4 (t^{n-2} - A)(t^n - A)."""
    A = as_gaussian(A)
    _require(isinstance(n, int) and n >= 4, "n >= 4")
    _require(bool(A), "A != 0")
    t = Z
    return (t ** (n - 1) - A) ** 2 * bar_lambda(n) - (t ** (n - 2) - A) * (t**n - A) * 4


def make_gamma(n: int) -> Polynomial:
    return make_psi(n, 1)


def psi_check(n: int, A) -> Certificate:
    A = as_gaussian(A)
    psi = make_psi(n, A)
    trace = [
        Condition.check("deg psi == 2n - 2", psi.degree, "eq", 2 * n - 2),
        Condition.check("psi(1) == (lambda - 4)(1 - A)^2", psi(ONE), "eq", (bar_lambda(n) - 4) * (1 - A) ** 2),
    ]
    if A == 1:
        quartic = (Z - 1) ** 4
        cofactor, rem = divmod(psi, quartic)
        trace.append(Condition.check("(t-1)^4 divides Gamma", rem.is_zero(), "eq", True))
        trace.append(Condition.check("(t-1)^5 does not divide Gamma", (Z - 1).divides(cofactor), "eq", False))
        trace.append(Condition.check("cofactor degree == 2n - 6", cofactor.degree, "eq", 2 * n - 6))
        trace.append(Condition.check("cofactor squarefree", squarefree_part(cofactor).degree, "eq",
                                     cofactor.degree))
        return conclude("gamma-structure", trace, info={"n": n})
    trace.append(Condition.check("psi(1) != 0", psi(ONE), "ne", 0))
    disc = discriminant(psi)
    common = gcd_monic(psi, Z**n - A)
    trace.append(Condition.check("discriminant(psi) != 0", disc, "ne", 0))
    trace.append(Condition.check("deg gcd(psi, t^n - A) == 0", common.degree, "eq", 0))
    return conclude("psi-squarefree", trace, info={"n": n, "A": A})


# -- the combinatorial sum ---------------------------------------------------


@dataclass(frozen=True)
class SumIdentity:
    sum: Fraction
    closed_form: Fraction
    equal: bool
    is_integer: bool


def sum_identity_S(n: int, m: int) -> SumIdentity:
    """Sum_{i} C(m,i)(-1)^i/(n+m+1-i) against (-1)^m m!/((n+m+1)...(n+1))."""
    direct = sum((Fraction(comb(m, i) * (-1) ** i, n + m + 1 - i) for i in range(m + 1)), Fraction(0))
    denom = 1
    for j in range(n + 1, n + m + 2):
        denom *= j
    closed = Fraction((-1) ** m * factorial(m), denom)
    return SumIdentity(direct, closed, direct == closed, direct.denominator == 1)


# -- uniform entry point used by the CLI -------------------------------------


def _int(params, name):
    try:
        value = Fraction(str(params[name]))
    except KeyError:
        raise ParameterError(f"missing parameter {name}") from None
    except (ValueError, ZeroDivisionError):
        raise ParameterError(f"parameter {name}={params[name]!r} is not a number") from None
    if value.denominator != 1:
        raise ParameterError(f"parameter {name}={params[name]!r} must be an integer")
    return int(value)


def _scalar(params, name, default=None):
    if name not in params:
        if default is None:
            raise ParameterError(f"missing parameter {name}")
        return as_gaussian(default)
    raw = params[name]
    if isinstance(raw, str):
        try:
            return parse_scalar(raw)
        except ValueError as exc:
            raise ParameterError(f"parameter {name}={raw!r}: {exc}") from None
    return as_gaussian(raw)


# family id -> (integer parameters, scalar parameters with defaults, checks builder)
_BUILDERS = {
    "p-star": (("n", "m"), {}, _p_star_checks),
    "p-star-general": (("n", "m"), {"a": None, "b": None, "c": None}, _p_star_general_checks),
    "p-b": (("n", "m"), {"c": None, "b": 1}, _p_b_checks),
    "p-b1": (("n", "m"), {"b": None}, _p_b1_checks),
    "frank-reinders": (("n",), {"c": None}, _frank_reinders_checks),
    "yi": (("n",), {"a": None, "b": None}, _yi_checks),
    "p-hat": (("n", "m"), {"c": None}, _p_hat_checks),
    "p-bar": (("n",), {"a": None, "b": None}, _p_bar_checks),
}


def build_family(family_id: str, params: dict, self_check: bool = True,
                 strict: bool = True) -> tuple[FamilySpec, Polynomial, Certificate]:
    """Construct a family member from (string) parameters.

    Returns the spec, the polynomial and a certificate whose trace holds the
    self-check conditions (for psi and gamma: the lemma checks). With
    ``strict`` a failing self-check raises InternalConsistencyError; otherwise
    the failing certificate is returned.
    """
    if family_id in ("psi", "gamma"):
        n = _int(params, "n")
        A = _scalar(params, "A") if family_id == "psi" else ONE
        spec = FamilySpec(family_id, {"n": n} if family_id == "gamma" else {"n": n, "A": A})
        return spec, make_psi(n, A), psi_check(n, A)
    if family_id not in _BUILDERS:
        raise ParameterError(f"unknown family {family_id!r}; known families: {', '.join(FAMILY_IDS)}")
    ints, scalars, builder = _BUILDERS[family_id]
    unknown = sorted(set(params) - set(ints) - set(scalars))
    if unknown:
        raise ParameterError(f"family {family_id} does not take parameter(s) {', '.join(unknown)}")
    values = {k: _int(params, k) for k in ints}
    values.update({k: _scalar(params, k, default) for k, default in scalars.items()})
    spec = FamilySpec(family_id, values)
    poly, checks = builder(**values)
    if not self_check:
        return spec, poly, Certificate(f"{family_id}-self-check", "not-applicable",
                                       notes=("self-check disabled",), info=dict(values))
    cert = conclude(f"{family_id}-self-check", checks, info=dict(values))
    if strict and not cert.certified:
        raise InternalConsistencyError(f"{family_id} self-check failed")
    return spec, poly, cert
