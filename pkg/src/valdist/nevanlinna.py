"""Proximity, counting and characteristic functions, and the classical identities.

All circle means are computed by adaptive quadrature in theta, with panel
breaks at the sign changes of log|f| (where log+ has a kink) and at the
arguments of zeros and poles close to the circle (where log|f| has a
logarithmic spike). A radius that passes within ``on_circle_rtol`` of a zero,
pole or a-point is nudged outward by the relative ``perturb`` factor, and the
result records that it happened.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy import integrate, optimize

from .config import DEFAULTS, Config
from .gaussian import as_gaussian
from .models import INFINITY, FunctionModel, Rational, UnsupportedModelError, is_infinity, parse_model

__all__ = [
    "QuadratureError",
    "log_plus",
    "proximity",
    "counting",
    "characteristic",
    "CharacteristicRow",
    "CharacteristicTable",
    "check_jensen",
    "check_cartan",
    "check_first_fundamental",
    "estimate_order",
    "geometric_radii",
]

TWO_PI = 2.0 * math.pi


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach its target within the panel budget."""


def log_plus(x):
    """log+ x = max(log x, 0) for x > 0 (array friendly)."""
    with np.errstate(divide="ignore"):
        return np.maximum(np.log(x), 0.0)


def _model(f) -> FunctionModel:
    return parse_model(f) if isinstance(f, str) else f


def _cfg(config: Config | None, quad_target: float | None = None) -> Config:
    cfg = config or DEFAULTS
    return cfg.with_overrides(quad_target=quad_target)


def geometric_radii(rmin: float, rmax: float, points: int) -> list[float]:
    if not 0 < rmin < rmax or points < 2:
        raise ValueError("need 0 < rmin < rmax and at least two points")
    return [float(r) for r in np.geomspace(rmin, rmax, points)]


# -- singular points and radius safety ---------------------------------------


def _special_points(f: FunctionModel, a, r: float) -> list[tuple[complex, int]]:
    """Points where the proximity integrand for (f, a) is singular, within 2r."""
    reach = 2.0 * r
    pts = []
    try:
        pts += f.poles(reach)
    except UnsupportedModelError:
        pass
    try:
        if is_infinity(a):
            pts += f.a_points(0, reach)
        else:
            pts += f.a_points(a, reach)
    except UnsupportedModelError:
        pass
    return pts


def _safe_radius(points, r: float, cfg: Config) -> tuple[float, bool]:
    perturbed = False
    for _ in range(8):
        if not any(abs(abs(z) - r) <= cfg.on_circle_rtol * r for z, _ in points):
            return r, perturbed
        r *= 1.0 + cfg.perturb
        perturbed = True
    return r, perturbed


# -- circle quadrature ---------------------------------------------------------


@dataclass(frozen=True)
class CircleMean:
    value: float
    error: float
    panels: int


def _breakpoints(log_abs, r: float, kernel: str, singular_args: list[float], negligible: float,
                 grid: int = 4096) -> list[float]:
    """Panel ends: singular arguments plus the sign changes of log|f|.

    Sign changes where |log|f|| stays below ``negligible`` on both sides are
    skipped: the kink they introduce is far below the quadrature target.
    """
    cuts = {0.0, TWO_PI}
    for t in singular_args:
        cuts.add(t % TWO_PI)
    if kernel != "plain":
        theta = np.linspace(0.0, TWO_PI, grid + 1)
        vals = log_abs(r * np.exp(1j * theta))
        finite = np.isfinite(vals)

        def g(t):
            return float(log_abs(np.array([r * complex(math.cos(t), math.sin(t))]))[0])

        for k in range(grid):
            lo, hi = vals[k], vals[k + 1]
            if not (finite[k] and finite[k + 1]) or lo == 0.0:
                if lo == 0.0:
                    cuts.add(float(theta[k]))
                continue
            if (lo < 0) != (hi < 0) and hi != 0.0 and max(abs(lo), abs(hi)) > negligible:
                cuts.add(float(optimize.brentq(g, theta[k], theta[k + 1], xtol=1e-15)))
    out = sorted(cuts)
    return [t for i, t in enumerate(out) if i == 0 or t - out[i - 1] > 1e-13]


def _circle_mean(f: FunctionModel, r: float, kernel: str, singular: list[tuple[complex, int]],
                 cfg: Config, negate: bool = False) -> CircleMean:
    """(1/2pi) * integral over theta of kernel(+-log|f(r e^{i theta})|)."""
    sign = -1.0 if negate else 1.0

    def log_abs(z):
        return sign * f.log_abs(z)

    near = [z for z, _ in singular if abs(abs(z) - r) <= 0.25 * r and z != 0]
    args = []
    for z in near:
        # geometrically graded cuts resolve the log spike of a point just off the circle
        t0, step = math.atan2(z.imag, z.real), max(abs(abs(z) - r) / r, 1e-12)
        args.append(t0)
        while step < 0.5:
            args += [t0 - step, t0 + step]
            step *= 4.0
    cuts = _breakpoints(log_abs, r, kernel, args, cfg.quad_target * 1e-3)
    clip = kernel != "plain"

    def integrand(t):
        v = sign * f.log_value_scalar(r * complex(math.cos(t), math.sin(t))).real
        return max(v, 0.0) if clip else v

    panels = len(cuts) - 1
    per_panel = cfg.quad_target * TWO_PI / panels
    total, err = 0.0, 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            out = integrate.quad(integrand, a, b, epsabs=per_panel, epsrel=0.0, limit=cfg.quad_budget,
                                 full_output=1)
        value, e = out[0], out[1]
        if not math.isfinite(value) or e > max(per_panel, 1e-14 * abs(value)) * 10:
            raise QuadratureError(f"panel [{a:.6g}, {b:.6g}] at r={r:g}: error estimate {e:.3g} exceeds target")
        total += value
        err += e
    return CircleMean(total / TWO_PI, err / TWO_PI, panels)


# -- public operations ---------------------------------------------------------


@dataclass(frozen=True)
class ProximityResult:
    value: float
    error: float
    radius: float
    perturbed: bool


def proximity(f, a=INFINITY, r: float = 1.0, quad_target: float | None = None,
              config: Config | None = None) -> ProximityResult:
    """m(r, a; f): mean of log+|f| (a = infinity) or of log+ 1/|f - a|."""
    if r <= 0:
        raise ValueError("radius must be positive")
    f = _model(f)
    cfg = _cfg(config, quad_target)
    singular = _special_points(f, a, r)
    r_used, perturbed = _safe_radius(singular, r, cfg)
    if is_infinity(a):
        res = _circle_mean(f, r_used, "plus", singular, cfg)
    else:
        res = _circle_mean(f.minus(a), r_used, "plus", singular, cfg, negate=True)
    return ProximityResult(res.value, res.error, r_used, perturbed)


def _counting_from_points(points, r: float, origin_order: int | None = None) -> float:
    total = 0.0
    at_origin = 0
    for z, k in points:
        if abs(z) <= 1e-13:
            at_origin += k
        elif abs(z) <= r:
            total += k * math.log(r / abs(z))
    if origin_order is not None:
        at_origin = origin_order
    return total + at_origin * math.log(r)


@dataclass(frozen=True)
class CountingResult:
    value: float
    radius: float
    perturbed: bool
    points: int


def _a_point_order_at_origin(f: Rational, a) -> int:
    if is_infinity(a):
        return f.den.trailing_order()
    shifted = f.rf - as_gaussian(a)
    return shifted.num.trailing_order()


def counting(f, a=INFINITY, r: float = 1.0, config: Config | None = None) -> CountingResult:
    """N(r, a; f) for a rational model, from exact multiplicities."""
    f = _model(f)
    if not isinstance(f, Rational):
        raise UnsupportedModelError("counting needs a rational model")
    if r <= 0:
        raise ValueError("radius must be positive")
    cfg = _cfg(config)
    pts = f.a_points(a, max(2.0 * r, 1.0))
    r_used, perturbed = _safe_radius(pts, r, cfg)
    value = _counting_from_points(pts, r_used, _a_point_order_at_origin(f, a))
    return CountingResult(value, r_used, perturbed, sum(k for z, k in pts if abs(z) <= r_used))


def _pole_counting(f: FunctionModel, r: float) -> float:
    if isinstance(f, Rational):
        return _counting_from_points(f.poles(r), r, f.den.trailing_order())
    return _counting_from_points(f.poles(r), r)


@dataclass(frozen=True)
class CharacteristicRow:
    r: float
    m: float
    N: float
    T: float
    err: float
    perturbed: bool = False


@dataclass(frozen=True)
class CharacteristicTable:
    model: str
    rows: tuple[CharacteristicRow, ...] = field(default_factory=tuple)

    @property
    def radii(self) -> list[float]:
        return [row.r for row in self.rows]

    @property
    def T(self) -> list[float]:
        return [row.T for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "m", "N", "T", "err"])
        for row in self.rows:
            writer.writerow([repr(row.r), repr(row.m), repr(row.N), repr(row.T), repr(row.err)])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "columns": ["r", "m", "N", "T", "err"],
            "rows": [[row.r, row.m, row.N, row.T, row.err] for row in self.rows],
            "perturbed_radii": [row.r for row in self.rows if row.perturbed],
        }


def characteristic(f, radii, quad_target: float | None = None, config: Config | None = None) -> CharacteristicTable:
    """T(r, f) = m(r, f) + N(r, f) over increasing radii."""
    f = _model(f)
    radii = [float(r) for r in radii]
    if any(r <= 0 for r in radii) or any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly increasing")
    cfg = _cfg(config, quad_target)
    rows = []
    for r in radii:
        m = proximity(f, INFINITY, r, config=cfg)
        N = _pole_counting(f, m.radius)
        rows.append(CharacteristicRow(m.radius, m.value, N, m.value + N, m.error, m.perturbed))
    return CharacteristicTable(f.render(), tuple(rows))


@dataclass(frozen=True)
class JensenResult:
    residual: float
    integral: float
    formula: float
    radius: float
    perturbed: bool
    error: float


def check_jensen(f, R: float, quad_target: float | None = None, config: Config | None = None) -> JensenResult:
    """Compare the circle mean of log|f| with its zero/pole expression."""
    f = _model(f)
    if not isinstance(f, Rational):
        raise UnsupportedModelError("Jensen check needs a rational model")
    if f.rf.is_zero():
        raise UnsupportedModelError("f is identically zero")
    cfg = _cfg(config, quad_target)
    divisor = f.divisor(max(4.0 * R, 1.0))
    R_used, perturbed = _safe_radius(divisor, R, cfg)
    integral = _circle_mean(f, R_used, "plain", divisor, cfg)
    order, lead = f.laurent_leading()
    formula = math.log(abs(complex(lead))) + order * math.log(R_used)
    for z, k in divisor:
        if 1e-13 < abs(z) < R_used:
            formula += k * math.log(R_used / abs(z))
    return JensenResult(abs(integral.value - formula), integral.value, formula, R_used, perturbed, integral.error)


@dataclass(frozen=True)
class CartanResult:
    residual: float
    characteristic: float
    cartan_mean: float
    samples: int


def check_cartan(f, r: float, samples: int = 4096, quad_target: float | None = None,
                 config: Config | None = None) -> CartanResult:
    """T(r, f) against the mean of N(r, e^{i phi}; f) plus log+|f(0)|."""
    f = _model(f)
    if not isinstance(f, Rational):
        raise UnsupportedModelError("Cartan check needs a rational model")
    f0 = f.value_at_zero()
    if f0 is None or not f0:
        raise UnsupportedModelError("Cartan check needs f(0) finite and nonzero")
    cfg = _cfg(config, quad_target)
    T = characteristic(f, [r], config=cfg).rows[0]
    r = T.r
    log_f0 = math.log(abs(complex(f0)))
    if f.is_constant:
        return CartanResult(abs(T.T - max(log_f0, 0.0)), T.T, max(log_f0, 0.0), samples)
    num = np.array(f.num.to_complex() + [0j] * (f.den.degree - f.num.degree))
    den = np.array(f.den.to_complex() + [0j] * (f.num.degree - f.den.degree))
    total = 0.0
    for j in range(samples):
        w = complex(math.cos(TWO_PI * j / samples), math.sin(TWO_PI * j / samples))
        coeffs = (num - w * den)[::-1]
        for root in np.roots(coeffs):
            if abs(root) < r:
                total += math.log(r / abs(root)) if abs(root) > 1e-14 else math.log(r)
    mean = total / samples + max(log_f0, 0.0)
    return CartanResult(abs(T.T - mean), T.T, mean, samples)


@dataclass(frozen=True)
class FirstFundamentalResult:
    max_drift: float
    radii: tuple[float, ...]
    deltas: tuple[float, ...]


def check_first_fundamental(f, a, radii, quad_target: float | None = None,
                            config: Config | None = None) -> FirstFundamentalResult:
    """Spread of T(r, 1/(f - a)) - T(r, f) over the upper half of the radii."""
    f = _model(f)
    if is_infinity(a):
        raise ValueError("a must be finite")
    shifted = f.minus(a)
    if isinstance(shifted, Rational) and shifted.rf.is_zero():
        raise ValueError("f - a is identically zero")
    g = shifted.reciprocal()
    cfg = _cfg(config, quad_target)
    tf = characteristic(f, radii, config=cfg)
    tg = characteristic(g, radii, config=cfg)
    deltas = [rg.T - rf.T for rf, rg in zip(tf.rows, tg.rows)]
    upper = deltas[len(deltas) // 2:]
    return FirstFundamentalResult(max(upper) - min(upper), tuple(tf.radii), tuple(deltas))


@dataclass(frozen=True)
class OrderResult:
    order: float
    table: CharacteristicTable
    fit_radii: tuple[float, ...]


def estimate_order(f, radii, quad_target: float | None = None, config: Config | None = None) -> OrderResult:
    """Least-squares slope of log+ T(r) against log r over the upper half of the radii."""
    radii = [float(r) for r in radii]
    if len(radii) < 8:
        raise ValueError("order estimation needs at least 8 radii")
    ratios = [b / a for a, b in zip(radii, radii[1:])]
    if max(ratios) - min(ratios) > 1e-6 * max(ratios):
        raise ValueError("radii must form a geometric sequence")
    table = characteristic(f, radii, quad_target, config)
    upper = table.rows[len(table.rows) // 2:]
    x = np.log([row.r for row in upper])
    y = np.array([max(math.log(row.T), 0.0) if row.T > 0 else 0.0 for row in upper])
    slope = float(np.polyfit(x, y, 1)[0])
    return OrderResult(slope, table, tuple(row.r for row in upper))
