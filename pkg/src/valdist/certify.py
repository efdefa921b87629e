"""Critical-point profiles and the decidable uniqueness-polynomial criteria.

Every check reads a :class:`CriticalProfile`. Critical points are grouped by
their multiplicity in P' through the exact squarefree decomposition, so all
multiplicity arithmetic is exact even when the points themselves are
irrational. Critical values are handled through characteristic polynomials
of multiplication by P in Q(i)[z]/(s) for each squarefree factor s of P'.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import mpmath

from .certificate import (CERTIFIED, NOT_CERTIFIED, NUMERIC_ONLY, Certificate, Condition,
                          conclude)
from .config import DEFAULTS
from .gaussian import GaussianRational, as_gaussian
from .poly import (Polynomial, gcd_monic, multiplication_charpoly, resultant, root_sum,
                   squarefree_decomposition, squarefree_part)
from .roots import locate_factor_roots, rational_roots

__all__ = [
    "CriticalPoint",
    "CriticalClass",
    "CriticalProfile",
    "critical_profile",
    "check_property_H",
    "check_uniqueness_fujimoto",
    "distinct_zero_count",
    "check_strong_uniqueness",
    "GENERIC",
]

GENERIC = "generic"


@dataclass(frozen=True)
class CriticalPoint:
    location: complex
    q: int
    value: complex
    factor: Polynomial
    exact: GaussianRational | None = None
    exact_value: GaussianRational | None = None

    @property
    def value_order(self) -> int:
        return self.q + 1


@dataclass(frozen=True)
class CriticalClass:
    """All critical points sharing one multiplicity q in P'."""

    factor: Polynomial
    q: int
    value_poly: Polynomial  # prod (w - P(d)) over roots d of factor

    @property
    def size(self) -> int:
        return self.factor.degree


@dataclass(frozen=True)
class CriticalProfile:
    poly: Polynomial
    degree: int
    k: int
    points: tuple[CriticalPoint, ...]
    classes: tuple[CriticalClass, ...]
    value_poly: Polynomial  # C(w), monic, degree n-1

    @property
    def multiplicities(self) -> list[int]:
        return [pt.q for pt in self.points]

    @property
    def all_exact(self) -> bool:
        return all(pt.exact is not None for pt in self.points)

    def distinct_value_count(self) -> int:
        return squarefree_part(self.value_poly).degree if self.value_poly.degree > 0 else 0


def _mp(c: GaussianRational):
    return mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                      mpmath.mpf(c.im.numerator) / c.im.denominator)


def _eval_mp(p: Polynomial, x):
    acc = mpmath.mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * x + _mp(c)
    return acc


def critical_profile(p: Polynomial, dps: int = 30) -> CriticalProfile:
    if p.is_zero() or p.degree < 2:
        raise ValueError("critical profile needs degree >= 2")
    dp = p.derivative()
    classes = []
    points = []
    for factor, q in squarefree_decomposition(dp):
        classes.append(CriticalClass(factor, q, multiplication_charpoly(p, factor)))
        with mpmath.workdps(dps):
            approx = locate_factor_roots(factor, dps=dps)
            values = [complex(_eval_mp(p, r)) for r in approx]
        locs = [complex(r) for r in approx]
        exact = rational_roots(factor, locs)
        for i, (z, v) in enumerate(zip(locs, values)):
            ez = exact[i] if exact else None
            points.append(CriticalPoint(z, q, v, factor, ez, p(ez) if ez is not None else None))
    points.sort(key=lambda pt: (-pt.q, round(pt.location.real, 9), round(pt.location.imag, 9)))
    value_poly = multiplication_charpoly(p, dp.monic())
    return CriticalProfile(p, p.degree, len(points), tuple(points), tuple(classes), value_poly)


def _profile(p) -> CriticalProfile:
    return p if isinstance(p, CriticalProfile) else critical_profile(p)


def _min_separation(values: list[complex]) -> float:
    if len(values) < 2:
        return float("inf")
    return min(abs(a - b) for a, b in combinations(values, 2))


def check_property_H(p) -> Certificate:
    """Critical injectivity, decided by distinct-root counts of C(w) against k."""
    prof = _profile(p)
    distinct = prof.distinct_value_count()
    trace = [Condition.check("distinct critical values == distinct critical points (k)",
                             distinct, "eq", prof.k)]
    info = {"k": prof.k, "min_numeric_separation": _min_separation([pt.value for pt in prof.points]),
            "critical_values": [pt.exact_value if pt.exact_value is not None else pt.value
                                for pt in prof.points]}
    notes = []
    if prof.k == 1:
        notes.append("single critical point: injectivity holds vacuously")
    if not trace[0].holds and prof.all_exact:
        # name each collision; these conditions fail by construction
        seen = {}
        for pt in prof.points:
            if pt.exact_value in seen:
                trace.append(Condition.check(f"P({seen[pt.exact_value]}) != P({pt.exact})", pt.exact_value, "ne",
                                             pt.exact_value))
            else:
                seen[pt.exact_value] = pt.exact
    return conclude("property-H", trace, notes, info)


def _fujimoto_inequality(qs: list[int]) -> tuple[int, int]:
    total = sum(qs)
    pairs = (total * total - sum(q * q for q in qs)) // 2
    return pairs, total


def check_uniqueness_fujimoto(p) -> Certificate:
    prof = _profile(p)
    h = check_property_H(prof)
    qs = prof.multiplicities
    pairs, total = _fujimoto_inequality(qs)
    trace = [
        Condition.check("precondition: critically injective (property H)", h.verdict == CERTIFIED, "eq", True),
        Condition.check("sum_{l<m} q_l q_m > sum q_l", pairs, "gt", total),
    ]
    k = prof.k
    clauses = {
        "k>=4": k >= 4,
        "k=3 and max q>=2": k == 3 and max(qs) >= 2,
        "k=2, min q>=2 and q1+q2>=5": k == 2 and min(qs) >= 2 and sum(qs) >= 5,
    }
    info = {"k": k, "q": qs, "special_case_clauses": clauses}
    return conclude("fujimoto-UP", trace, info=info, preconditions=1)


def _class_value_count(cls: CriticalClass, d: GaussianRational) -> int:
    """How many points of the class take the value d (order of w=d in its value polynomial)."""
    poly = cls.value_poly
    count = 0
    lin = Polynomial([-d, 1])
    while poly.degree > 0 and poly(d) == 0:
        poly = poly.exact_div(lin)
        count += 1
    return count


def distinct_zero_count(profile: CriticalProfile, d=GENERIC, tol: float | None = None) -> int:
    """Number of distinct zeros of P - d."""
    n = profile.degree
    if isinstance(d, str):
        if d != GENERIC:
            raise ValueError(f"unknown value selector {d!r}")
        return n
    if isinstance(d, complex) or isinstance(d, float):
        tol = DEFAULTS.separation_tol if tol is None else tol
        return n - sum(pt.q for pt in profile.points if abs(pt.value - d) <= tol * max(1.0, abs(d)))
    d = as_gaussian(d)
    return n - sum(cls.q * _class_value_count(cls, d) for cls in profile.classes)


# -- strong uniqueness ---------------------------------------------------------


def _base_conditions(p: Polynomial, prof: CriticalProfile, need_up: bool) -> tuple[list[Condition], Certificate]:
    g = gcd_monic(p, p.derivative())
    h = check_property_H(prof)
    conds = [
        Condition.check("precondition: simple zeros (deg gcd(P, P') == 0)", g.degree, "eq", 0),
        Condition.check("precondition: critically injective", h.verdict == CERTIFIED, "eq", True),
    ]
    up = check_uniqueness_fujimoto(prof)
    if need_up:
        conds.append(Condition.check("precondition: uniqueness polynomial (Fujimoto)",
                                     up.verdict == CERTIFIED, "eq", True))
    return conds, up


def _sum_nonzero_exact(a: CriticalClass, b: CriticalClass | None) -> bool:
    """True iff P(alpha) + P(beta) != 0 for every admissible pair (alpha in a, beta in b).

    With b None the pair is drawn from a alone (alpha != beta).
    """
    ca = a.value_poly
    cb = (b or a).value_poly
    reflected = Polynomial(c * (-1) ** k for k, c in enumerate(cb.coeffs))
    return bool(resultant(ca, reflected))


def _check_6a(p, prof, base) -> Certificate:
    s = squarefree_part(p.derivative())
    total = root_sum(p, s)
    trace = list(base) + [
        Condition.check("k >= 4", prof.k, "ge", 4),
        Condition.check("P(d_1) + ... + P(d_k) != 0", total, "ne", 0),
    ]
    return conclude("fujimoto-6A", trace, preconditions=len(base) + 1)


def _check_6b(p, prof, base, tol) -> Certificate:
    trace = list(base) + [Condition.check("k == 3", prof.k, "eq", 3)]
    notes = ["permutation condition evaluated for every choice of middle index "
             "(the printed index list '(1,2.3)' is read as (1,2,3))"]
    if prof.k != 3:
        return conclude("fujimoto-6B", trace, notes, preconditions=len(trace))
    trace.append(Condition.check("max(q1, q2, q3) >= 2", max(prof.multiplicities), "ge", 2))
    pts = prof.points
    if prof.all_exact:
        v = [pt.exact_value for pt in pts]
        for l, m in combinations(range(3), 2):
            trace.append(Condition.check(f"P(d{l+1})/P(d{m+1}) != 1", v[l], "ne", v[m]))
            trace.append(Condition.check(f"P(d{l+1})/P(d{m+1}) != -1", v[l], "ne", -v[m]))
        for m in range(3):
            l, n = [i for i in range(3) if i != m]
            trace.append(Condition.check(f"P(d{l+1})/P(d{m+1}) != P(d{m+1})/P(d{n+1})",
                                         v[m] * v[m], "ne", v[l] * v[n]))
    else:
        v = [pt.value for pt in pts]
        for l, m in combinations(range(3), 2):
            ratio = v[l] / v[m]
            trace.append(Condition.check(f"|P(d{l+1})/P(d{m+1}) - 1| > tol", abs(ratio - 1), "gt", tol, True))
            trace.append(Condition.check(f"|P(d{l+1})/P(d{m+1}) + 1| > tol", abs(ratio + 1), "gt", tol, True))
        for m in range(3):
            l, n = [i for i in range(3) if i != m]
            diff = abs(v[l] / v[m] - v[m] / v[n])
            trace.append(Condition.check(f"|P(d{l+1})/P(d{m+1}) - P(d{m+1})/P(d{n+1})| > tol", diff, "gt", tol,
                                         True))
        notes.append("critical points are not all rational; ratio conditions decided numerically")
    return conclude("fujimoto-6B", trace, notes, preconditions=len(base) + 1)


def _check_6c(p, prof, base) -> list[Certificate]:
    head = list(base) + [Condition.check("k == 2", prof.k, "eq", 2)]
    if prof.k != 2:
        return [conclude("fujimoto-6C(i)", head, preconditions=len(head)),
                conclude("fujimoto-6C(ii)", head, preconditions=len(head))]
    q1, q2 = sorted(prof.multiplicities)
    s = squarefree_part(p.derivative())
    total = root_sum(p, s)
    first = head + [
        Condition.check("q1 >= 3", q1, "ge", 3),
        Condition.check("P(d1) + P(d2) != 0", total, "ne", 0),
    ]
    second = head + [
        Condition.check("q1 >= 2", q1, "ge", 2),
        Condition.check("q2 >= q1 + 3", q2, "ge", q1 + 3),
    ]
    return [conclude("fujimoto-6C(i)", first, preconditions=len(head)),
            conclude("fujimoto-6C(ii)", second, preconditions=len(head))]


def _top_pair(prof: CriticalProfile):
    """Classes holding the two critical points of largest multiplicity.

    Returns (class_a, class_b_or_None, q_a, q_b); class_b None means both
    points come from class_a. Ties are broken toward larger t + p, which the
    ordering by multiplicity already achieves.
    """
    ordered = sorted(prof.classes, key=lambda c: -c.q)
    top = ordered[0]
    if top.size >= 2:
        return top, None, top.q, top.q
    second = ordered[1]
    return top, second, top.q, second.q


def _pair_sum_condition(prof, ca, cb, tol) -> Condition:
    if _sum_nonzero_exact(ca, cb):
        return Condition.check("P(alpha) + P(beta) != 0", True, "eq", True)
    # some pair sums to zero exactly; look for another admissible pair numerically
    pa = [pt for pt in prof.points if pt.factor == ca.factor]
    pb = pa if cb is None else [pt for pt in prof.points if pt.factor == cb.factor]
    best = 0.0
    for x in pa:
        for y in pb:
            if x is y:
                continue
            best = max(best, abs(x.value + y.value))
    return Condition.check("max over admissible pairs |P(alpha) + P(beta)| > tol", best, "gt", tol, True)


def _check_amith1(p, prof, base, tol) -> Certificate:
    trace = list(base) + [Condition.check("at least two critical points", prof.k, "ge", 2)]
    if prof.k < 2:
        return conclude("thesis-amith1", trace, preconditions=len(trace))
    n = prof.degree
    ca, cb, qa, qb = _top_pair(prof)
    p_ord, t_ord = qa + 1, qb + 1
    trace.append(Condition.check("max{t,p} + t + p >= 5 + n", max(t_ord, p_ord) + t_ord + p_ord, "ge", 5 + n))
    trace.append(_pair_sum_condition(prof, ca, cb, tol))
    info = {"n": n, "p": p_ord, "t": t_ord}
    return conclude("thesis-amith1", trace, info=info, preconditions=len(base) + 1)


def _check_amith41(p, prof, base) -> Certificate:
    trace = list(base) + [Condition.check("at least two critical points", prof.k, "ge", 2)]
    notes = ["'for any d not in {P(gamma), P(delta)}' is reduced to d ranging over the remaining "
             "critical values plus a generic value; non-critical d give n distinct zeros"]
    if prof.k < 2:
        return conclude("thesis-amith41", trace, notes, preconditions=len(trace))
    n = prof.degree
    pts = prof.points
    best = None
    for i, j in combinations(range(len(pts)), 2):
        pcount = n - pts[i].q
        qcount = n - pts[j].q
        others = [n - pts[t].q for t in range(len(pts)) if t not in (i, j)]
        worst = min(others + [n])
        need = min(pcount + 3, qcount + 3)
        score = (abs(pcount - qcount) >= 3 and worst >= need, abs(pcount - qcount), worst - need)
        if best is None or score > best[0]:
            best = (score, pcount, qcount, worst, need)
    _, pcount, qcount, worst, need = best
    trace.append(Condition.check("|p - q| >= 3", abs(pcount - qcount), "ge", 3))
    trace.append(Condition.check("min distinct zeros of P - d over admissible d >= min{p+3, q+3}",
                                 worst, "ge", need))
    info = {"n": n, "p": pcount, "q": qcount}
    return conclude("thesis-amith41", trace, notes, info, preconditions=len(base) + 1)


def _check_amicor21(p, prof, base) -> Certificate:
    trace = list(base) + [Condition.check("at least two critical points", prof.k, "ge", 2)]
    if prof.k < 2:
        return conclude("thesis-amicor2.1", trace, preconditions=len(trace))
    one = GaussianRational(1)
    delta_cls = [c for c in prof.classes if _class_value_count(c, one) > 0]
    trace.append(Condition.check("some critical point delta has P(delta) = 1", len(delta_cls), "ge", 1))
    if not delta_cls:
        return conclude("thesis-amicor2.1", trace, preconditions=len(trace))
    n = prof.degree
    dcls = delta_cls[0]
    q_delta = dcls.q
    # remaining points as (class, count) after removing delta
    remaining = []
    for c in prof.classes:
        size = c.size - (1 if c is dcls else 0)
        if size:
            remaining.append((c, size))
    minus_one = GaussianRational(-1)
    gamma = None
    for c, size in sorted(remaining, key=lambda cs: -cs[0].q):
        if size > _class_value_count(c, minus_one):
            gamma = c
            break
    trace.append(Condition.check("some other critical point gamma has P(gamma)^2 not in {0, 1}",
                                 gamma is not None, "eq", True))
    if gamma is None:
        return conclude("thesis-amicor2.1", trace, preconditions=len(base) + 1)
    qcount = n - q_delta
    others = []
    for c, size in remaining:
        others.extend([c.q] * (size - (1 if c is gamma else 0)))
    worst = min([n] + [n - q for q in others])
    trace.append(Condition.check("min distinct zeros of P - d over admissible d >= q + 3", worst, "ge", qcount + 3))
    info = {"n": n, "q": qcount, "q_delta": q_delta, "q_gamma": gamma.q}
    return conclude("thesis-amicor2.1", trace, info=info, preconditions=len(base) + 1)


def check_strong_uniqueness(p: Polynomial, tol: float | None = None) -> Certificate:
    """Evaluate every sufficient SUP criterion; certified if any one passes."""
    tol = DEFAULTS.separation_tol if tol is None else tol
    if p.is_zero() or p.degree < 1:
        raise ValueError("strong uniqueness needs a non-constant polynomial")
    if p.degree == 1:
        trace = [Condition.check("degree >= 2", 1, "ge", 2)]
        return Certificate("strong-uniqueness", NOT_CERTIFIED, tuple(trace),
                           notes=("a degree-one polynomial P satisfies P(f) = cP(g) for "
                                  "f = c g - (b/a)(1 - c), so it is never strong",))
    prof = critical_profile(p)
    base, _ = _base_conditions(p, prof, need_up=False)
    base_up, _ = _base_conditions(p, prof, need_up=True)
    children = [
        _check_6a(p, prof, base),
        _check_6b(p, prof, base, tol),
        *_check_6c(p, prof, base),
        _check_amith1(p, prof, base_up, tol),
        _check_amith41(p, prof, base_up),
        _check_amicor21(p, prof, base_up),
    ]
    passing = [c.criterion for c in children if c.verdict == CERTIFIED]
    numeric = [c.criterion for c in children if c.verdict == NUMERIC_ONLY]
    if passing:
        verdict = CERTIFIED
        trace = (Condition.check("number of criteria certified exactly", len(passing), "ge", 1),)
    elif numeric:
        verdict = NUMERIC_ONLY
        trace = (Condition.check("number of criteria passing numerically", len(numeric), "ge", 1),)
    else:
        verdict = NOT_CERTIFIED
        trace = (Condition.check("number of criteria certified", 0, "ge", 1),)
    return Certificate("strong-uniqueness", verdict, trace,
                       "numeric" if verdict == NUMERIC_ONLY else "exact",
                       info={"passing": passing, "numeric_only": numeric},
                       children=tuple(children))


def certify_all(p: Polynomial, tol: float | None = None) -> Certificate:
    """Property H, Fujimoto UP and SUP in one certificate (used by the CLI)."""
    if p.degree < 2:
        children = [check_strong_uniqueness(p, tol)]
    else:
        children = [check_property_H(p), check_uniqueness_fujimoto(p), check_strong_uniqueness(p, tol)]
    verdict = CERTIFIED if all(c.verdict == CERTIFIED for c in children) else NOT_CERTIFIED
    trace = (Condition.check("sub-criteria certified", sum(c.verdict == CERTIFIED for c in children),
                             "eq", len(children)),)
    return Certificate("all", verdict, trace, children=tuple(children))
