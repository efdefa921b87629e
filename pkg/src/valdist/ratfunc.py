"""Reduced rational functions over Q(i)."""

from __future__ import annotations

from .gaussian import GaussianRational, as_gaussian
from .poly import Polynomial, gcd_monic

__all__ = ["RationalFunction", "rf_derivative_in_z", "rf_equal"]


class RationalFunction:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial([as_gaussian(num)])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([as_gaussian(den)])
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Polynomial(), Polynomial([1])
        else:
            g = gcd_monic(num, den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lc = den.lc
            if lc != 1:
                num = num / lc
                den = den / lc
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __add__(self, other):
        other = _coerce(other)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return RationalFunction(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return RationalFunction(1) / self ** (-k)
        return RationalFunction(self.num**k, self.den**k)

    def derivative(self) -> "RationalFunction":
        """d/du of num/den."""
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __eq__(self, other):
        if isinstance(other, (RationalFunction, Polynomial, int, GaussianRational)):
            other = _coerce(other)
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def render(self, var: str = "u") -> str:
        if self.den.degree == 0:
            return self.num.render(var)
        return f"({self.num.render(var)})/({self.den.render(var)})"

    def __repr__(self):
        return f"RationalFunction({self.render()!r})"


def _coerce(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction(x)


def rf_derivative_in_z(f: RationalFunction, c) -> RationalFunction:
    """Derivative in z of f(u) with u = exp(c z): (df/du) * c * u."""
    c = as_gaussian(c)
    return f.derivative() * RationalFunction(Polynomial([0, c]))


def rf_equal(f, g) -> bool:
    """Exact identity test by cross multiplication."""
    f, g = _coerce(f), _coerce(g)
    return f.num * g.den == g.num * f.den
