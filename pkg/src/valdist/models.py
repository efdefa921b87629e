"""Closed-form function models for the Nevanlinna numerics.

A model is a small expression tree over two leaf kinds, rational functions
of z and exp(P(z)) for a polynomial P, combined by sums, products, quotients
and constant shifts. Every node evaluates a branch of log f on numpy arrays,
which keeps |f| representable long after f itself has overflowed, and
enumerates its zeros and poles (with orders) inside a disc whenever that is
decidable from the closed form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gaussian import GaussianRational, as_gaussian
from .parser import ParseError, Parser, PolyAlgebra
from .poly import Polynomial
from .ratfunc import RationalFunction
from .roots import roots_numeric

__all__ = [
    "INFINITY",
    "UnsupportedModelError",
    "FunctionModel",
    "Rational",
    "ExpPoly",
    "Shift",
    "Sum",
    "Product",
    "Quotient",
    "parse_model",
    "log_poly",
]

INFINITY = "inf"


class UnsupportedModelError(ValueError):
    """The requested quantity is not computable for this model kind."""


def is_infinity(a) -> bool:
    return isinstance(a, str) and a.strip().lower() in ("inf", "infinity", "oo") or (
        isinstance(a, float) and math.isinf(a))


def log_poly(coeffs: list[complex], z: np.ndarray) -> np.ndarray:
    """A branch of log p(z) (coefficients low degree first) without overflow.

    For |z| > 1 the polynomial is evaluated as z^d q(1/z) with q reversed.
    """
    z = np.asarray(z, dtype=complex)
    deg = len(coeffs) - 1
    out = np.empty_like(z)
    inner = np.abs(z) <= 1
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        if inner.any():
            zi = z[inner]
            acc = np.zeros_like(zi)
            for c in reversed(coeffs):
                acc = acc * zi + c
            out[inner] = np.log(acc)
        outer = ~inner
        if outer.any():
            zo = z[outer]
            w = 1.0 / zo
            acc = np.zeros_like(zo)
            for c in coeffs:
                acc = acc * w + c
            out[outer] = deg * np.log(zo) + np.log(acc)
    return out


def _clog(w: complex) -> complex:
    return cmath.log(w) if w else complex(-math.inf, 0.0)


def log_poly_scalar(coeffs: list[complex], z: complex) -> complex:
    """Scalar twin of :func:`log_poly` (used inside adaptive quadrature)."""
    if abs(z) <= 1:
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return _clog(acc)
    w = 1.0 / z
    acc = 0j
    for c in coeffs:
        acc = acc * w + c
    return (len(coeffs) - 1) * cmath.log(z) + _clog(acc)


def _logaddexp_scalar(a: complex, b: complex) -> complex:
    if a.real < b.real:
        a, b = b, a
    if a.real == -math.inf:
        return a
    d = b - a
    if d.real < -745.0:
        return a
    return a + _clog(1.0 + cmath.exp(d))


def _logaddexp(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """log(e^a + e^b) for complex arrays, stable for huge real parts."""
    swap = a.real < b.real
    hi = np.where(swap, b, a)
    lo = np.where(swap, a, b)
    with np.errstate(invalid="ignore", over="ignore", divide="ignore"):
        out = hi + np.log1p(np.exp(lo - hi))
    return np.where(np.isneginf(hi.real), hi, out)


def _combine(points: list[tuple[complex, int]], tol: float = 1e-9) -> list[tuple[complex, int]]:
    """Merge orders of coincident points; drop points whose orders cancel."""
    merged: list[list] = []
    for z, k in sorted(points, key=lambda p: (round(p[0].real, 9), round(p[0].imag, 9))):
        for entry in merged:
            if abs(entry[0] - z) <= tol * max(1.0, abs(z)):
                entry[1] += k
                break
        else:
            merged.append([z, k])
    return [(z, k) for z, k in merged if k != 0]


def _within(points, r):
    return [(z, k) for z, k in points if abs(z) <= r]


class FunctionModel:
    kind = "abstract"

    def log_value(self, z) -> np.ndarray:
        raise NotImplementedError

    def log_value_scalar(self, z: complex) -> complex:
        return complex(self.log_value(np.array([z]))[0])

    def log_abs(self, z) -> np.ndarray:
        return self.log_value(z).real

    def __call__(self, z):
        with np.errstate(over="ignore"):
            return np.exp(self.log_value(z))

    def divisor(self, r: float) -> list[tuple[complex, int]]:
        """Zeros (positive order) and poles (negative order) in |z| <= r."""
        raise UnsupportedModelError(f"zeros of {self.kind} models are not enumerable")

    def poles(self, r: float) -> list[tuple[complex, int]]:
        return [(z, -k) for z, k in self.divisor(r) if k < 0]

    def a_points(self, a, r: float) -> list[tuple[complex, int]]:
        """Solutions of f(z) = a in |z| <= r with multiplicity; a may be infinity."""
        if is_infinity(a):
            return self.poles(r)
        if complex(a) == 0:
            return [(z, k) for z, k in self.divisor(r) if k > 0]
        raise UnsupportedModelError(f"a-points of {self.kind} models are not enumerable")

    @property
    def is_rational(self) -> bool:
        return False

    @property
    def is_constant(self) -> bool:
        return False

    def minus(self, a) -> "FunctionModel":
        """The model f - a."""
        return Shift(self, -as_gaussian(a)) if complex(a) != 0 else self

    def reciprocal(self) -> "FunctionModel":
        return Quotient(Rational(RationalFunction(1)), self)

    def render(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}({self.render()!r})"


@dataclass(frozen=True, eq=False, repr=False)
class Rational(FunctionModel):
    rf: RationalFunction
    kind = "rational"

    @property
    def num(self) -> Polynomial:
        return self.rf.num

    @property
    def den(self) -> Polynomial:
        return self.rf.den

    @property
    def is_rational(self) -> bool:
        return True

    @property
    def is_constant(self) -> bool:
        return self.rf.num.degree <= 0 and self.rf.den.degree == 0

    @cached_property
    def _num_c(self):
        return self.num.to_complex()

    @cached_property
    def _den_c(self):
        return self.den.to_complex()

    def log_value(self, z):
        z = np.asarray(z, dtype=complex)
        if self.num.is_zero():
            return np.full(z.shape, -np.inf + 0j)
        return log_poly(self._num_c, z) - log_poly(self._den_c, z)

    def log_value_scalar(self, z):
        if self.num.is_zero():
            return complex(-math.inf, 0.0)
        return log_poly_scalar(self._num_c, z) - log_poly_scalar(self._den_c, z)

    @cached_property
    def _divisor(self):
        pts = []
        if not self.num.is_zero() and self.num.degree > 0:
            pts += [(e.location, e.multiplicity) for e in roots_numeric(self.num)]
        if self.den.degree > 0:
            pts += [(e.location, -e.multiplicity) for e in roots_numeric(self.den)]
        return pts

    def divisor(self, r):
        if self.num.is_zero():
            raise UnsupportedModelError("the zero function has no divisor")
        return _within(self._divisor, r)

    def a_points(self, a, r):
        if is_infinity(a):
            return self.poles(r)
        shifted = self.rf - as_gaussian(a)
        if shifted.is_zero():
            raise UnsupportedModelError(f"function is identically {a}")
        if shifted.num.degree == 0:
            return []
        return _within([(e.location, e.multiplicity) for e in roots_numeric(shifted.num)], r)

    def minus(self, a):
        return Rational(self.rf - as_gaussian(a))

    def reciprocal(self):
        return Rational(RationalFunction(1) / self.rf)

    def value_at_zero(self):
        """f(0) exactly, or None for a pole."""
        if self.den.coeff(0) == 0:
            return None
        return self.num.coeff(0) / self.den.coeff(0)

    def laurent_leading(self) -> tuple[int, GaussianRational]:
        """(order at 0, leading Laurent coefficient) read off the reduced form."""
        kn, kd = self.num.trailing_order(), self.den.trailing_order()
        return kn - kd, self.num.coeff(kn) / self.den.coeff(kd)

    def render(self):
        return self.rf.render("z")


@dataclass(frozen=True, eq=False, repr=False)
class ExpPoly(FunctionModel):
    inner: Polynomial
    kind = "exp-poly"

    @cached_property
    def _coeffs(self):
        return self.inner.to_complex() or [0j]

    @property
    def is_constant(self) -> bool:
        return self.inner.is_zero() or self.inner.degree == 0

    def log_value(self, z):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(self._coeffs):
            acc = acc * z + c
        return acc

    def log_value_scalar(self, z):
        acc = 0j
        for c in reversed(self._coeffs):
            acc = acc * z + c
        return acc

    def divisor(self, r):
        return []

    def a_points(self, a, r):
        if is_infinity(a) or complex(a) == 0:
            return []
        if self.is_constant:
            raise UnsupportedModelError("a-points of a constant")
        log_a = cmath.log(complex(a))
        coeffs = self._coeffs
        bound = sum(abs(c) * r**j for j, c in enumerate(coeffs)) + abs(log_a)
        kmax = int(math.ceil(bound / (2 * math.pi))) + 1
        found = []
        for k in range(-kmax, kmax + 1):
            target = log_a + 2j * math.pi * k
            if abs(target) > bound:
                continue
            shifted = list(coeffs)
            shifted[0] -= target
            for root in np.roots(shifted[::-1]):
                if abs(root) <= r:
                    found.append((complex(root), 1))
        return found

    def render(self):
        return f"exp({self.inner.render('z')})"


@dataclass(frozen=True, eq=False, repr=False)
class Shift(FunctionModel):
    """f + c for a constant c."""

    base: FunctionModel
    c: GaussianRational
    kind = "shift"

    def log_value(self, z):
        logf = self.base.log_value(z)
        if not self.c:
            return logf
        return _logaddexp(logf, np.full(logf.shape, cmath.log(complex(self.c))))

    @cached_property
    def _log_c(self):
        return cmath.log(complex(self.c)) if self.c else complex(-math.inf, 0.0)

    def log_value_scalar(self, z):
        return _logaddexp_scalar(self.base.log_value_scalar(z), self._log_c)

    def divisor(self, r):
        zeros = self.base.a_points(-self.c, r)
        return _combine(zeros + [(z, -k) for z, k in self.base.poles(r)])

    def poles(self, r):
        return self.base.poles(r)

    def a_points(self, a, r):
        if is_infinity(a):
            return self.poles(r)
        return self.base.a_points(as_gaussian(a) - self.c, r)

    def minus(self, a):
        return Shift(self.base, self.c - as_gaussian(a))

    def render(self):
        return f"({self.base.render()}) + ({self.c})"


@dataclass(frozen=True, eq=False, repr=False)
class Sum(FunctionModel):
    left: FunctionModel
    right: FunctionModel
    kind = "sum"

    def log_value(self, z):
        return _logaddexp(self.left.log_value(z), self.right.log_value(z))

    def log_value_scalar(self, z):
        return _logaddexp_scalar(self.left.log_value_scalar(z), self.right.log_value_scalar(z))

    def poles(self, r):
        pl, pr = self.left.poles(r), self.right.poles(r)
        for z, k in pl:
            for w, j in pr:
                if abs(z - w) <= 1e-9 * max(1.0, abs(z)) and k == j:
                    raise UnsupportedModelError("coincident poles of equal order may cancel in a sum")
        return _combine([(z, -k) for z, k in pl] + [(w, -j) for w, j in pr], tol=1e-9)

    def render(self):
        return f"({self.left.render()}) + ({self.right.render()})"


def _constant_value(model) -> GaussianRational | None:
    if isinstance(model, Rational) and model.is_constant:
        return model.num.coeff(0)
    return None


@dataclass(frozen=True, eq=False, repr=False)
class Product(FunctionModel):
    left: FunctionModel
    right: FunctionModel
    kind = "product"

    def log_value(self, z):
        return self.left.log_value(z) + self.right.log_value(z)

    def log_value_scalar(self, z):
        return self.left.log_value_scalar(z) + self.right.log_value_scalar(z)

    def divisor(self, r):
        return _combine(self.left.divisor(r) + self.right.divisor(r))

    def poles(self, r):
        try:
            return [(z, -k) for z, k in self.divisor(r) if k < 0]
        except UnsupportedModelError:
            # an exp factor has neither zeros nor poles, so it cannot cancel anything
            for x, y in ((self.left, self.right), (self.right, self.left)):
                if isinstance(x, ExpPoly):
                    return y.poles(r)
            raise

    def a_points(self, a, r):
        for const, other in ((self.left, self.right), (self.right, self.left)):
            k = _constant_value(const)
            if k and not is_infinity(a):
                return other.a_points(as_gaussian(a) / k, r)
        return super().a_points(a, r)

    def render(self):
        return f"({self.left.render()}) * ({self.right.render()})"


@dataclass(frozen=True, eq=False, repr=False)
class Quotient(FunctionModel):
    left: FunctionModel
    right: FunctionModel
    kind = "quotient"

    def log_value(self, z):
        return self.left.log_value(z) - self.right.log_value(z)

    def log_value_scalar(self, z):
        return self.left.log_value_scalar(z) - self.right.log_value_scalar(z)

    def divisor(self, r):
        return _combine(self.left.divisor(r) + [(z, -k) for z, k in self.right.divisor(r)])

    def poles(self, r):
        try:
            return [(z, -k) for z, k in self.divisor(r) if k < 0]
        except UnsupportedModelError:
            # k/g with k constant: the poles are exactly the zeros of g
            if _constant_value(self.left):
                return self.right.a_points(0, r)
            raise

    def a_points(self, a, r):
        k = _constant_value(self.left)
        if k is not None and k and not is_infinity(a):
            if complex(a) == 0:
                return self.right.poles(r)
            return self.right.a_points(k / as_gaussian(a), r)
        return super().a_points(a, r)

    def reciprocal(self):
        return Quotient(self.right, self.left)

    def render(self):
        return f"({self.left.render()}) / ({self.right.render()})"


# -- parser ------------------------------------------------------------------


class ModelAlgebra(PolyAlgebra):
    """Builds FunctionModel trees; rational sub-expressions stay exact."""

    def __init__(self, var: str = "z"):
        super().__init__(var)

    def number(self, n):
        return Rational(super().number(n))

    def imag(self):
        return Rational(super().imag())

    def variable(self, name, pos):
        return Rational(super().variable(name, pos))

    def call(self, name, arg, pos):
        if name != "exp":
            raise ParseError(f"unknown function {name!r} (only exp is available)", pos)
        if not (isinstance(arg, Rational) and arg.den.degree == 0):
            raise ParseError("exp argument must be a polynomial in z", pos)
        return ExpPoly(arg.num / arg.den.lc)

    def add(self, a, b):
        if isinstance(a, Rational) and isinstance(b, Rational):
            return Rational(a.rf + b.rf)
        for x, y in ((a, b), (b, a)):
            c = _constant_value(y)
            if c is not None:
                return x.minus(-c) if c else x
        return Sum(a, b)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if isinstance(a, Rational) and isinstance(b, Rational):
            return Rational(a.rf * b.rf)
        if isinstance(a, ExpPoly) and isinstance(b, ExpPoly):
            return ExpPoly(a.inner + b.inner)
        return Product(a, b)

    def div(self, a, b, pos):
        if isinstance(a, Rational) and isinstance(b, Rational):
            if b.rf.is_zero():
                raise ParseError("division by zero", pos)
            return Rational(a.rf / b.rf)
        if isinstance(a, ExpPoly) and isinstance(b, ExpPoly):
            return ExpPoly(a.inner - b.inner)
        if _constant_value(b) == 0:
            raise ParseError("division by zero", pos)
        return Quotient(a, b)

    def neg(self, a):
        if isinstance(a, Rational):
            return Rational(-a.rf)
        return Product(Rational(RationalFunction(-1)), a)

    def power(self, a, k):
        if isinstance(a, Rational):
            return Rational(a.rf**k)
        if isinstance(a, ExpPoly):
            return ExpPoly(a.inner * k)
        if k == 0:
            return Rational(RationalFunction(1))
        out = a
        for _ in range(k - 1):
            out = Product(out, a)
        return out


def parse_model(text: str) -> FunctionModel:
    """Parse e.g. ``"z/(1-z^2)"``, ``"exp(z^2)"`` or ``"1/(exp(z) - 1)"``."""
    return Parser(text, ModelAlgebra("z")).parse()
