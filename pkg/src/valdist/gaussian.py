"""Exact complex numbers with rational real and imaginary parts."""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["GaussianRational", "as_gaussian", "parse_scalar"]


class GaussianRational:
    """An element ``re + im*i`` of Q(i).

    Both parts are :class:`fractions.Fraction`, which already keeps
    numerator and denominator coprime with a positive denominator, so
    structural equality is value equality.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if not isinstance(re, Fraction):
            re = _to_fraction(re)
        if not isinstance(im, Fraction):
            im = _to_fraction(im)
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- predicates -------------------------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self):
        return self.im == 0

    def is_integer(self):
        return self.re.denominator == 1 and self.im.denominator == 1

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re, 0)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not other.im:
            return GaussianRational(self.re / other.re, self.im / other.re)
        d = other.re * other.re + other.im * other.im
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussianRational(1) / (self ** -k)
        result = GaussianRational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, exact."""
        return self.re * self.re + self.im * self.im

    # -- comparison / hashing --------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- conversion -------------------------------------------------------

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_fraction(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self} is not real")
        return self.re

    def __repr__(self):
        return f"GaussianRational({str(self)!r})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"


def _imag_str(x: Fraction) -> str:
    if x == 1:
        return "i"
    if x == -1:
        return "-i"
    return f"{x}i"


def _to_fraction(x) -> Fraction:
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        # floats are dyadic rationals; the conversion is exact
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to a rational")


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction, Rational)):
        return GaussianRational(x)
    return NotImplemented


def as_gaussian(x) -> GaussianRational:
    """Coerce ints, Fractions, floats, complex or strings to Q(i)."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, complex):
        return GaussianRational(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, str):
        return parse_scalar(x)
    return GaussianRational(x)


_TERM = re.compile(r"([+-]?)\s*(\d+(?:/\d+)?)?\s*(i?)")


def parse_scalar(text: str) -> GaussianRational:
    """Parse exact scalar strings such as ``"96/25"``, ``"1/2+3i"``, ``"-i"``."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    re_part = Fraction(0)
    im_part = Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        sign, num, imag = m.groups()
        if not num and not imag:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        if pos > 0 and not sign:
            raise ValueError(f"malformed scalar {text!r} at position {pos}")
        value = Fraction(num) if num else Fraction(1)
        if sign == "-":
            value = -value
        if imag:
            im_part += value
        else:
            re_part += value
        pos = m.end()
    return GaussianRational(re_part, im_part)
