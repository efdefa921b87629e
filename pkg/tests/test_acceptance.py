"""The twelve acceptance criteria, each reported as one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import math
import random
import time
from fractions import Fraction

import sympy as sp

from conftest import random_rational_corpus, to_sympy
from valdist.certificate import CERTIFIED
from valdist.certify import check_property_H, check_strong_uniqueness, check_uniqueness_fujimoto
from valdist.families import build_family, frank_reinders_polynomial, make_gamma, make_psi, psi_check, sum_identity_S
from valdist.gates import check_urs_gate
from valdist.gaussian import GaussianRational as G
from valdist.identities import INFINITY, check_derivative_sign_example, check_set_sharing_example, share_values
from valdist.models import Rational
from valdist.nevanlinna import (check_cartan, check_first_fundamental, check_jensen, estimate_order,
                                geometric_radii, proximity)
from valdist.poly import Polynomial
from valdist.ratfunc import RationalFunction

z = Polynomial.x()
T = sp.Symbol("t")


def report(number: int, ok: bool, detail: str) -> None:
    print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, detail


def test_01_proximity_of_exp():
    start = time.perf_counter()
    value = proximity("exp(z)", "inf", 10.0).value
    elapsed = time.perf_counter() - start
    err = abs(value - 10 / math.pi)
    report(1, err < 1e-4 and elapsed < 1.0, f"|m - 10/pi| = {err:.2e} (< 1e-4), {elapsed:.3f} s (< 1 s)")


def test_02_jensen_corpus():
    corpus = [Rational(f) for f in random_rational_corpus(count=20, max_degree=5)]
    start = time.perf_counter()
    worst = max(check_jensen(f, R).residual for f in corpus for R in (0.7, 1.3, 2.5))
    elapsed = time.perf_counter() - start
    report(2, worst < 1e-6 and elapsed < 30, f"worst residual {worst:.2e} (< 1e-6), {elapsed:.2f} s (< 30 s)")


def test_03_cartan():
    residuals = [check_cartan(f, 2.0, samples=4096).residual for f in ("z+2", "(z-1)/(z+2)")]
    report(3, max(residuals) < 1e-3, f"residuals {residuals[0]:.2e}, {residuals[1]:.2e} (< 1e-3)")


def test_04_first_fundamental_drift():
    radii = geometric_radii(10, 100, 10)
    drifts = [check_first_fundamental(f, 1, radii).max_drift for f in ("z^2", "exp(z)")]
    report(4, max(drifts) < 0.2, f"drift z^2 {drifts[0]:.4f}, exp(z) {drifts[1]:.4f} (< 0.2)")


def test_05_order_estimates():
    cases = [
        ("(z^3 + 1)/(z - 2)", geometric_radii(1e10, 1e40, 12), 0.0),
        ("exp(z)", geometric_radii(5, 80, 12), 1.0),
        ("exp(z^2)", geometric_radii(5, 80, 12), 2.0),
    ]
    estimates = [estimate_order(f, radii).order for f, radii, _ in cases]
    ok = all(abs(e - want) <= 0.05 for e, (_, _, want) in zip(estimates, cases))
    report(5, ok, "orders " + ", ".join(f"{e:.4f}" for e in estimates) + " vs 0, 1, 2 (within 0.05)")


def test_06_sum_identity():
    bad = [(n, m) for n in range(2, 16) for m in range(3, 16)
           if not (sum_identity_S(n, m).equal and not sum_identity_S(n, m).is_integer)]
    report(6, not bad, f"{14 * 13} (n, m) pairs exact and non-integral; failures {bad}")


def test_07_family_self_checks():
    cases = [("p-star", {"n": n, "m": m}) for n in range(3, 9) for m in range(3, 9)]
    cases += [("p-hat", {"n": n, "m": m, "c": 1}) for n, m in [(5, 2), (7, 2), (7, 3), (9, 4)]]
    cases += [("yi", {"n": n, "a": a, "b": b}) for n, a, b in [(4, 1, 1), (5, 1, 2), (7, 1, 1)]]
    cases += [("frank-reinders", {"n": n, "c": 3}) for n in range(6, 10)]
    failed = []
    for family, params in cases:
        _, _, cert = build_family(family, params, strict=False)
        if cert.verdict != CERTIFIED or cert.precision != "exact":
            failed.append((family, params))
    report(7, not failed, f"{len(cases)} exact self-checks; failures {failed}")


def test_08_certification_verdicts():
    failures = []
    for n in range(2, 9):
        for m in range(2, 9):
            if n + m >= 5:
                p = (z**n * (z - 1) ** m).antiderivative() + 1
                if check_uniqueness_fujimoto(p).verdict != CERTIFIED:
                    failures.append(f"P*({n},{m}) not UP")
    for q in range(2, 8):
        for a in (0, 1, Fraction(-1, 2), G(0, 1)):
            for b in (1, -2, Fraction(3, 4)):
                if check_uniqueness_fujimoto((z - a) ** q - b).verdict == CERTIFIED:
                    failures.append(f"(z-{a})^{q}-{b} UP")
    for n in range(6, 10):
        if check_strong_uniqueness(frank_reinders_polynomial(n, 3)).verdict != CERTIFIED:
            failures.append(f"P_FR({n}) not SUP")
    five = check_strong_uniqueness(frank_reinders_polynomial(5, 3))
    amith1 = [c for c in five.children if c.criterion == "thesis-amith1"][0]
    if amith1.verdict == CERTIFIED:
        failures.append("P_FR(5) passes amith1")
    for a, b in [(1, 0), (2, -3), (G(1, 1), 5)]:
        if check_strong_uniqueness(a * z + b).verdict == CERTIFIED:
            failures.append(f"{a}z+{b} SUP")
    report(8, not failures, f"P*, (z-a)^q-b, P_FR and linear verdicts; failures {failures}")


def test_09_psi_and_gamma():
    failures = []
    for n in range(6, 11):
        for A in (G(2), G(-1), G(0, 1)):
            if psi_check(n, A).verdict != CERTIFIED:
                failures.append(f"psi({n},{A}) certificate")
            # independent oracle: sympy gcd with t^n - A
            psi = to_sympy(make_psi(n, A), T)
            if sp.degree(sp.gcd(psi, T**n - to_sympy(Polynomial([A]), T)), T) != 0:
                failures.append(f"psi({n},{A}) shares a root with t^n - A")
        if psi_check(n, 1).verdict != CERTIFIED:
            failures.append(f"Gamma({n}) certificate")
        factors = sp.sqf_list(to_sympy(make_gamma(n), T))[1]
        ones = [k for f, k in factors if sp.expand(f.subs(T, 1)) == 0]
        rest = [(sp.degree(f, T), k) for f, k in factors if sp.expand(f.subs(T, 1)) != 0]
        if ones != [4] or rest != [(2 * n - 6, 1)]:
            failures.append(f"Gamma({n}) sympy factorization {ones} {rest}")
    report(9, not failures, f"psi discriminant and gcd, Gamma structure for n in 6..10; failures {failures}")


def test_10_gate_arithmetic():
    results = {
        "mm-thB1 (1,1,3,8,1) certifies": check_urs_gate("mm-thB1", {"m": 1, "l": 1, "p": 3, "n": 8, "k": 1}).verdict
        == CERTIFIED,
        "jj-thB5 (1,1,0,6,3) certifies": check_urs_gate("jj-thB5", {"m": 1, "k": 1, "q": 0, "n": 6, "l": 3}).verdict
        == CERTIFIED,
        "amibcha (5,5,3) certifies": check_urs_gate("thesis-amibcha", {"m": 5, "n": 5, "l": 3}).verdict == CERTIFIED,
        "amibcha (4,5,3) rejects": check_urs_gate("thesis-amibcha", {"m": 4, "n": 5, "l": 3}).verdict != CERTIFIED,
    }
    failed = [k for k, ok in results.items() if not ok]
    report(10, not failed, f"{len(results)} gate outcomes; failures {failed}")


def test_11_identities():
    u = RationalFunction(z)
    share = share_values(u, RationalFunction(Polynomial([1]), z), [G(0), G(1), G(-1), INFINITY])
    set_sharing = check_set_sharing_example(2, G(-1, 3))
    sign = check_derivative_sign_example()
    ok = share.verdict == set_sharing.verdict == sign.verdict == CERTIFIED and sign.info["sign"] in "+-"
    report(11, ok, f"sharing {share.verdict}, set-sharing {set_sharing.verdict}, sign {sign.info['sign']!r}")


def _random_critical_structure(rng: random.Random) -> Polynomial:
    """Antiderivative of a product over rational critical points.

    Half the draws are symmetric (P' odd), so P is even and P(r) = P(-r)
    collisions are common.
    """
    pool = [Fraction(k, d) for k in range(-6, 7) for d in (1, 2, 3)]
    if rng.random() < 0.5:
        deriv = Polynomial([1])
        for r in rng.sample([x for x in pool if x != 0], rng.randint(1, 7)):
            deriv *= z - r
    else:
        deriv = z
        for r in {abs(x) for x in rng.sample(pool, rng.randint(1, 3)) if x != 0}:
            deriv *= z**2 - r * r
    deriv = deriv * rng.choice([1, -2, Fraction(1, 3), G(1, 1)])
    return deriv.antiderivative() + rng.randint(-3, 3)


def test_12_property_h_cross_oracle():
    rng = random.Random(7)
    disagreements, injective_count = [], 0
    polys = []
    while len(polys) < 100:
        p = _random_critical_structure(rng)
        if 2 <= p.degree <= 8:
            polys.append(p)
    for p in polys:
        points = {r for r, _ in sp.roots(to_sympy(p.derivative(), T), T).items()}
        values = [to_sympy(p, T).subs(T, r) for r in points]
        injective = len({sp.nsimplify(sp.expand(v)) for v in values}) == len(values)
        injective_count += injective
        if (check_property_H(p).verdict == CERTIFIED) != injective:
            disagreements.append(str(p))
    report(12, not disagreements,
           f"100 polynomials ({injective_count} injective, {100 - injective_count} with collisions); "
           f"disagreements {disagreements}")
