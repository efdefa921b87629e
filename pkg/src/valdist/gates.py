"""Unique-range-set gate inequalities evaluated in exact rational arithmetic.

A gate is the arithmetic side of a sufficient condition: the integers that
describe the set (degree, critical-point count, weights) plus user-supplied
deficiency values. Theorem hypotheses become preconditions of the trace, so a
violated hypothesis yields ``not-applicable`` rather than ``not-certified``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf
from typing import Callable

from .certificate import Certificate, Condition, conclude

__all__ = ["GateParameterError", "GATE_IDS", "check_urs_gate", "gate_parameters"]


class GateParameterError(ValueError):
    """Missing, malformed or out-of-range gate parameter."""


INF = "inf"


@dataclass(frozen=True)
class _Gate:
    ints: tuple[str, ...]
    thetas: tuple[str, ...]
    flags: tuple[str, ...]
    weight_may_be_inf: bool
    optional: tuple[str, ...]
    evaluate: Callable


def _parse_int(name, raw, allow_inf=False):
    if allow_inf and (raw == inf or str(raw).strip().lower() in ("inf", "infinity", "oo")):
        return INF
    try:
        value = Fraction(str(raw).strip()) if not isinstance(raw, (int, Fraction)) else Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise GateParameterError(f"parameter {name}={raw!r} is not a number") from exc
    if value.denominator != 1:
        raise GateParameterError(f"parameter {name}={raw!r} must be an integer")
    if value < 0:
        raise GateParameterError(f"parameter {name}={raw!r} must be non-negative")
    return int(value)


def _parse_theta(name, raw):
    try:
        value = Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise GateParameterError(f"parameter {name}={raw!r} is not a rational number") from exc
    if not 0 <= value <= 1:
        raise GateParameterError(f"deficiency {name}={raw} must lie in [0, 1]")
    return value


def _parse_flag(name, raw):
    if isinstance(raw, bool):
        return raw
    text = str(raw).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise GateParameterError(f"flag {name}={raw!r} must be true or false")


def _record(name: str, value) -> Condition:
    """An intermediate value, kept in the trace so every step can be replayed."""
    return Condition.check(name, value, "eq", value)


def _weight_at_least(l, bound) -> bool:
    return l == INF or l >= bound


# -- gate bodies: each returns (preconditions, conditions, notes) -----------------


def _fujimoto_hypothesis(p):
    k = p["k"]
    pre = [Condition.check("k >= 2", k, "ge", 2)]
    if k == 2:
        if "min_q" not in p:
            raise GateParameterError("k = 2 needs min_q (smallest multiplicity of a zero of P')")
        pre.append(Condition.check("k = 2 requires P' without simple zeros (min_q >= 2)", p["min_q"], "ge", 2))
    return pre


def _gate_6d(p):
    n, k = p["n"], p["k"]
    entire, im = p.get("entire", False), p.get("im", False)
    offset = {(False, False): 6, (True, False): 2, (False, True): 12, (True, True): 5}[(entire, im)]
    return _fujimoto_hypothesis(p), [Condition.check(f"n > 2k + {offset}", n, "gt", 2 * k + offset)], []


def _gate_6e(p):
    n, k, l = p["n"], p["k"], p["l"]
    entire = p.get("entire", False)
    pre = _fujimoto_hypothesis(p) + [Condition.check("l >= 1", 1 if l == INF else l, "ge", 1)]
    if _weight_at_least(l, 3):
        offset = 2 if entire else 6
    elif l == 2:
        offset = 2 if entire else 7
    else:
        offset = 4 if entire else 10
    return pre, [Condition.check(f"n > 2k + {offset}", n, "gt", 2 * k + offset)], []


def _gate_6f(p):
    n, k, l = p["n"], p["k"], p["l"]
    pre = _fujimoto_hypothesis(p) + [Condition.check("l >= 1", 1 if l == INF else l, "ge", 1)]
    theta = min(p["theta_inf_f"], p["theta_inf_g"])
    if _weight_at_least(l, 3):
        bound, text = Fraction(6 + 2 * k - n, 4), "(6+2k-n)/4"
    elif l == 2:
        bound, text = Fraction(14 + 4 * k - 2 * n, 9), "(14+4k-2n)/9"
    else:
        bound, text = Fraction(10 + 2 * k - n, 6), "(10+2k-n)/6"
    conds = [_record("min{Theta(inf;f), Theta(inf;g)}", theta),
             Condition.check(f"min Theta(inf) > {text}", theta, "gt", bound)]
    return pre, conds, []


def _p_star_hypothesis(m, n):
    return [
        Condition.check("m + n >= 5", m + n, "ge", 5),
        Condition.check("max{m, n} >= 3", max(m, n), "ge", 3),
        Condition.check("min{m, n} >= 2", min(m, n), "ge", 2),
    ]


def _gate_amibcha(p):
    m, n, l = p["m"], p["n"], p["l"]
    entire = p.get("entire", False)
    pre = _p_star_hypothesis(m, n) + [Condition.check("l >= 1", 1 if l == INF else l, "ge", 1)]
    if _weight_at_least(l, 3):
        bound = 5 if entire else 9
    elif l == 2:
        bound = 5 if entire else 10
    else:
        bound = 7 if entire else 13
    return pre, [Condition.check(f"m + n > {bound}", m + n, "gt", bound)], []


def _gate_saptami(p):
    m, n, l = p["m"], p["n"], p["l"]
    pre = _p_star_hypothesis(m, n) + [Condition.check("l >= 1", 1 if l == INF else l, "ge", 1)]
    theta = min(p["theta_inf_f"], p["theta_inf_g"])
    if _weight_at_least(l, 3):
        bound, text = Fraction(9 - m - n, 4), "(9-m-n)/4"
    elif l == 2:
        bound, text = Fraction(20 - 2 * m - 2 * n, 9), "(20-2m-2n)/9"
    else:
        bound, text = Fraction(13 - m - n, 6), "(13-m-n)/6"
    conds = [_record("min{Theta(inf;f), Theta(inf;g)}", theta),
             Condition.check(f"min Theta(inf) > {text}", theta, "gt", bound)]
    return pre, conds, []


def _gate_amt11(p):
    n, m, l = p["n"], p["m"], p["l"]
    pre = [Condition.check("n >= 3", n, "ge", 3), Condition.check("m >= 3", m, "ge", 3)]
    shared_one = Fraction(1, 2) * min(p["theta_1_f"], p["theta_1_g"])
    weight = 3 if l == 0 else 2
    sums = []
    for side in ("f", "g"):
        sums.append(weight * p[f"theta_0_{side}"] + weight * p[f"theta_inf_{side}"] + p[f"theta_1_{side}"]
                    + shared_one)
    total = sums[0] + sums[1]
    star = "*" if l == 0 else ""
    conds = [_record(f"Theta{star}_f", sums[0]), _record(f"Theta{star}_g", sums[1])]
    bound = 9 if l >= 2 else 10 if l == 1 else 15
    conds.append(Condition.check(f"Theta{star}_f + Theta{star}_g > {bound} - (n+m)", total, "gt", bound - (n + m)))
    return pre, conds, []


def _gate_jj_b3(p):
    n, m, k, l = p["n"], p["m"], p["k"], p["l"]
    pre = [Condition.check("m >= 1", m, "ge", 1), Condition.check("n >= 1", n, "ge", 1),
           Condition.check("gcd(m, n) = 1", gcd(m, n), "eq", 1)]
    base = {2: Fraction(4), 1: Fraction(9, 2), 0: Fraction(7)}[min(l, 2)]
    first = 2 * m + base + base / (k + 1)
    bound = max(first, Fraction(4 * m + 1))
    conds = [_record(f"2m + {base} + {base}/(k+1)", first), _record("threshold max{..., 4m+1}", bound),
             Condition.check("n > threshold", n, "gt", bound)]
    return pre, conds, []


def _gate_jj_b5(p):
    n, m, k, l, q = p["n"], p["m"], p["k"], p["l"], p["q"]
    pre = [Condition.check("m >= 1", m, "ge", 1), Condition.check("n > 4m + 1", n, "gt", 4 * m + 1),
           Condition.check("gcd(m, n) = 1", gcd(m, n), "eq", 1)]
    a = n - 2 * m - 1
    b = (n - 2 * m) * q + n - 2 * m - 1
    weight_bound = Fraction(3, 2) + Fraction(2, a) + Fraction(1, b)
    degree_bound = (2 * m + Fraction(4, k + 1) + Fraction(4, (k + 1) * a) + Fraction(2, (k + 1) * b))
    conds = [
        _record("n - 2m - 1", a),
        _record("(n-2m)q + n - 2m - 1", b),
        _record("weight bound 3/2 + 2/(n-2m-1) + 1/((n-2m)q+n-2m-1)", weight_bound),
        _record("degree bound 2m + 4/(k+1) + 4/((k+1)(n-2m-1)) + 2/((k+1)((n-2m)q+n-2m-1))", degree_bound),
        Condition.check("l >= weight bound", l, "ge", weight_bound),
        Condition.check("n > degree bound", n, "gt", degree_bound),
    ]
    return pre, conds, []


def _yi_hypothesis(p):
    n, k, m = p["n"], p["k"], p["m"]
    return [Condition.check("n >= 4", n, "ge", 4), Condition.check("k >= 1", k, "ge", 1),
            Condition.check("m >= k + 1", m, "ge", k + 1)]


def _gate_ar_b2(p):
    n, l = p["n"], p["l"]
    if l >= 2:
        lhs = (n - 2) * (2 * n * n * l - 5 * n * l - 3 * n + l + 1)
        conds = [Condition.check("(n-2)(2n^2 l - 5nl - 3n + l + 1) > 6(n-1)l", lhs, "gt", 6 * (n - 1) * l)]
    elif l == 1:
        conds = [Condition.check("n >= 5", n, "ge", 5)]
    else:
        conds = [Condition.check("n >= 7", n, "ge", 7)]
    return _yi_hypothesis(p), conds, []


def _gate_ar_b1(p):
    n, l = p["n"], p["l"]
    conds = [Condition.check("n >= 4", n, "ge", 4)] if l >= 1 else [Condition.check("n >= 5", n, "ge", 5)]
    return _yi_hypothesis(p), conds, ["entire functions only"]


def _gate_mm_b1(p):
    m, n, pw, k, l = p["m"], p["n"], p["p"], p["k"], p["l"]
    pre = [Condition.check("m >= 1", m, "ge", 1), Condition.check("n >= 1", n, "ge", 1)]
    lam = min(Fraction(m * (n - 2) - 1), Fraction((1 + k) * l * (n - 2) - 1))
    mu = Fraction(1) if pw == 0 else min(Fraction(1, pw), Fraction(1))
    gap = lam - 2 * mu
    conds = [
        _record("lambda = min{m(n-2)-1, (1+k)l(n-2)-1}", lam),
        _record("mu = min{1/p, 1}", mu),
        Condition.check("lambda - 2mu > 0", gap, "gt", 0),
    ]
    notes = ["p = 0 is read as 1/p = infinity, so mu = 1"] if pw == 0 else []
    if gap <= 0:
        return pre, conds, notes + ["threshold undefined because lambda - 2mu <= 0"]
    if pw >= 2:
        bound, text = 6 + 6 * (mu + 1) / gap, "6 + 6(mu+1)/(lambda-2mu)"
    elif pw == 1:
        bound, text = Fraction(13, 2) + 7 * (mu + 1) / gap, "13/2 + 7(mu+1)/(lambda-2mu)"
    else:
        bound, text = 6 + 3 * mu + 6 * (mu + 1) ** 2 / gap, "6 + 3mu + 6(mu+1)^2/(lambda-2mu)"
    conds += [_record(f"threshold {text}", bound), Condition.check("n > threshold", n, "gt", bound)]
    return pre, conds, notes


_THETA_INF = ("theta_inf_f", "theta_inf_g")
_THETA_ALL = ("theta_0_f", "theta_inf_f", "theta_1_f", "theta_0_g", "theta_inf_g", "theta_1_g")

_GATES: dict[str, _Gate] = {
    "fujimoto-6D": _Gate(("n", "k"), (), ("entire", "im"), False, ("min_q",), _gate_6d),
    "fujimoto-6E": _Gate(("n", "k", "l"), (), ("entire",), True, ("min_q",), _gate_6e),
    "banerjee-6F": _Gate(("n", "k", "l"), _THETA_INF, (), True, ("min_q",), _gate_6f),
    "thesis-amt1.1": _Gate(("n", "m", "l"), _THETA_ALL, (), False, (), _gate_amt11),
    "thesis-amibcha": _Gate(("m", "n", "l"), (), ("entire",), True, (), _gate_amibcha),
    "thesis-saptami": _Gate(("m", "n", "l"), _THETA_INF, (), True, (), _gate_saptami),
    "jj-thB3": _Gate(("n", "m", "k", "l"), (), (), False, (), _gate_jj_b3),
    "jj-thB5": _Gate(("n", "m", "k", "l", "q"), (), (), False, (), _gate_jj_b5),
    "ar-thB1": _Gate(("n", "m", "k", "l"), (), (), False, (), _gate_ar_b1),
    "ar-thB2": _Gate(("n", "m", "k", "l"), (), (), False, (), _gate_ar_b2),
    "mm-thB1": _Gate(("m", "n", "p", "k", "l"), (), (), False, (), _gate_mm_b1),
}

GATE_IDS = tuple(_GATES)


def gate_parameters(gate_id: str) -> dict:
    """Parameter names a gate reads, grouped by kind."""
    g = _lookup(gate_id)
    return {"integers": list(g.ints), "deficiencies": list(g.thetas), "flags": list(g.flags),
            "optional": list(g.optional), "weight_may_be_inf": g.weight_may_be_inf}


def _lookup(gate_id: str) -> _Gate:
    try:
        return _GATES[gate_id]
    except KeyError:
        raise GateParameterError(f"unknown gate {gate_id!r}; known gates: {', '.join(GATE_IDS)}") from None


def check_urs_gate(gate_id: str, params: dict) -> Certificate:
    gate = _lookup(gate_id)
    known = set(gate.ints) | set(gate.thetas) | set(gate.flags) | set(gate.optional)
    unknown = sorted(set(params) - known)
    if unknown:
        raise GateParameterError(f"gate {gate_id} does not take parameter(s) {', '.join(unknown)}")
    parsed = {}
    for name in gate.ints:
        if name not in params:
            raise GateParameterError(f"gate {gate_id} needs parameter {name}")
        parsed[name] = _parse_int(name, params[name], allow_inf=(name == "l" and gate.weight_may_be_inf))
    for name in gate.optional:
        if name in params:
            parsed[name] = _parse_int(name, params[name])
    for name in gate.thetas:
        if name not in params:
            raise GateParameterError(f"gate {gate_id} needs deficiency {name}")
        parsed[name] = _parse_theta(name, params[name])
    for name in gate.flags:
        if name in params:
            parsed[name] = _parse_flag(name, params[name])
    pre, conds, notes = gate.evaluate(parsed)
    info = {k: v for k, v in parsed.items()}
    return conclude(gate_id, pre + conds, notes, info, preconditions=len(pre))
