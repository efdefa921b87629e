"""Dense univariate polynomials over Q(i), with exact gcd machinery.

Coefficients are stored low degree first; the zero polynomial has no
coefficients and no degree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .gaussian import GaussianRational, as_gaussian

__all__ = [
    "Polynomial",
    "ZeroPolynomialError",
    "gcd_monic",
    "squarefree_decomposition",
    "squarefree_part",
    "resultant",
    "discriminant",
    "multiplication_charpoly",
    "power_sums",
    "root_sum",
]

_ZERO = GaussianRational(0)
_ONE = GaussianRational(1)


class ZeroPolynomialError(ValueError):
    """Raised when an operation is undefined for the zero polynomial."""


class Polynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_gaussian(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls([c])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> "Polynomial":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_gaussian(r), 1])
        return p

    # -- structure --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ZeroPolynomialError("degree of the zero polynomial is undefined")
        return len(self.coeffs) - 1

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lc(self) -> GaussianRational:
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> GaussianRational:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def monic(self) -> "Polynomial":
        lc = self.lc
        if lc == 1:
            return self
        return Polynomial(c / lc for c in self.coeffs)

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.coeffs)

    def trailing_order(self) -> int:
        """Multiplicity of 0 as a root."""
        if not self.coeffs:
            raise ZeroPolynomialError("zero polynomial")
        k = 0
        while not self.coeffs[k]:
            k += 1
        return k

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            a, b = self.coeffs, other.coeffs
            if not a or not b:
                return Polynomial()
            out = [_ZERO] * (len(a) + len(b) - 1)
            for i, x in enumerate(a):
                if not x:
                    continue
                for j, y in enumerate(b):
                    out[i + j] = out[i + j] + x * y
            return Polynomial(out)
        try:
            s = as_gaussian(other)
        except TypeError:
            return NotImplemented
        return Polynomial(c * s for c in self.coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # scalar division only; polynomial division goes through divmod
        if isinstance(other, Polynomial):
            return NotImplemented
        s = as_gaussian(other)
        return Polynomial(c / s for c in self.coeffs)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Polynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dv = other.coeffs
        n = len(dv) - 1
        inv = _ONE / dv[-1]
        if len(r) - 1 < n:
            return Polynomial(), self
        q = [_ZERO] * (len(r) - n)
        for k in range(len(r) - 1, n - 1, -1):
            c = r[k] * inv
            q[k - n] = c
            if c:
                for j in range(n + 1):
                    r[k - n + j] = r[k - n + j] - c * dv[j]
        return Polynomial(q), Polynomial(r[:n])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other: "Polynomial") -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divides(self, other: "Polynomial") -> bool:
        """True iff ``self`` divides ``other``."""
        return (other % self).is_zero()

    def derivative(self) -> "Polynomial":
        return Polynomial(c * k for k, c in enumerate(self.coeffs) if k)

    def antiderivative(self) -> "Polynomial":
        return Polynomial([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def compose(self, inner: "Polynomial") -> "Polynomial":
        result = Polynomial()
        for c in reversed(self.coeffs):
            result = result * inner + Polynomial([c])
        return result

    def shift(self, c) -> "Polynomial":
        """Return p(z - c)."""
        return self.compose(Polynomial([-as_gaussian(c), 1]))

    def __call__(self, x):
        if isinstance(x, (GaussianRational, int, Fraction)):
            x = as_gaussian(x)
            acc = _ZERO
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * x + complex(c)
        return acc

    # -- comparison / conversion ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        try:
            return self.coeffs == Polynomial([as_gaussian(other)]).coeffs
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def to_complex(self) -> list[complex]:
        """Coefficients as complex floats, low degree first."""
        return [complex(c) for c in self.coeffs]

    def __repr__(self):
        return f"Polynomial({self.render()!r})"

    def render(self, var: str = "z") -> str:
        from .parser import render_polynomial

        return render_polynomial(self, var)

    __str__ = render


def _coerce(x):
    if isinstance(x, Polynomial):
        return x
    try:
        return Polynomial([as_gaussian(x)])
    except TypeError:
        return NotImplemented


# -- gcd, resultant ----------------------------------------------------------


def _prem(a: Polynomial, b: Polynomial) -> Polynomial:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b."""
    delta = a.degree - b.degree + 1
    return (a * (b.lc ** delta)) % b


def _subresultant_prs(a: Polynomial, b: Polynomial) -> list[Polynomial]:
    """Subresultant polynomial remainder sequence (Collins / Brown).

    Requires deg a >= deg b and b nonzero. Exact division by the
    beta factors keeps coefficient growth polynomial.
    """
    seq = [a, b]
    g = _ONE
    h = _ONE
    while not b.is_zero() and b.degree > 0:
        delta = a.degree - b.degree
        r = _prem(a, b)
        if r.is_zero():
            break
        beta = g * h**delta
        a, b = b, r / beta
        g = a.lc
        h = g**delta / h ** (delta - 1) if delta else h
        seq.append(b)
    return seq


def gcd_monic(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor."""
    if p.is_zero() and q.is_zero():
        raise ZeroPolynomialError("gcd of two zero polynomials")
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.degree < q.degree:
        p, q = q, p
    last = _subresultant_prs(p, q)[-1]
    if last.degree == 0:
        return Polynomial([1])
    return last.monic()


def resultant(a: Polynomial, b: Polynomial) -> GaussianRational:
    """Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a."""
    if a.is_zero() or b.is_zero():
        return _ZERO
    da, db = a.degree, b.degree
    if da == 0 and db == 0:
        return _ONE
    if db == 0:
        return b.lc**da
    if da == 0:
        return a.lc**db
    s = _ONE
    if da < db:
        a, b = b, a
        if da % 2 and db % 2:
            s = -s
    g = _ONE
    h = _ONE
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 and b.degree % 2:
            s = -s
        r = _prem(a, b)
        a = b
        if r.is_zero():
            return _ZERO
        b = r / (g * h**delta)
        g = a.lc
        h = h ** (1 - delta) * g**delta
        if b.degree == 0:
            da = a.degree
            return s * h ** (1 - da) * b.lc**da


def discriminant(p: Polynomial) -> GaussianRational:
    """Classical discriminant (-1)^(n(n-1)/2) Res(p, p') / lc(p)."""
    if p.is_zero() or p.degree < 1:
        raise ValueError("discriminant needs a polynomial of degree >= 1")
    n = p.degree
    if n == 1:
        return _ONE
    r = resultant(p, p.derivative()) / p.lc
    return -r if (n * (n - 1) // 2) % 2 else r


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic pairwise coprime squarefree factors with multiplicities.

    ``prod(f**k) * lc(p) == p``. Factors equal to 1 are omitted.
    """
    if p.is_zero() or p.degree < 1:
        raise ValueError("squarefree decomposition needs degree >= 1")
    f = p.monic()
    df = f.derivative()
    a = gcd_monic(f, df)
    b = f.exact_div(a)
    c = df.exact_div(a)
    d = c - b.derivative()
    out = []
    k = 1
    while not (b.degree == 0):
        a = gcd_monic(b, d)
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        if a.degree > 0:
            out.append((a, k))
        k += 1
    return out


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic product of the distinct irreducible factors of p."""
    result = Polynomial([1])
    for f, _ in squarefree_decomposition(p):
        result = result * f
    return result


# -- quotient-ring helpers -----------------------------------------------------


def _mult_matrix(p: Polynomial, s: Polynomial) -> list[list[GaussianRational]]:
    d = s.degree
    r = p % s
    cols = []
    for j in range(d):
        col = (r * Polynomial.monomial(j)) % s
        cols.append([col.coeff(i) for i in range(d)])
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def multiplication_charpoly(p: Polynomial, s: Polynomial) -> Polynomial:
    """Characteristic polynomial of multiplication by p on Q(i)[z]/(s).

    Equals prod (w - p(alpha)) over the roots alpha of s, with multiplicity,
    i.e. Res_z(s(z), w - p(z)) / lc(s)^deg(p) up to sign. Computed with the
    Faddeev-LeVerrier recursion.
    """
    d = s.degree
    if d == 0:
        return Polynomial([1])
    m = _mult_matrix(p, s)
    coeffs = [_ZERO] * (d + 1)
    coeffs[d] = _ONE
    mk = [[_ZERO] * d for _ in range(d)]
    for k in range(1, d + 1):
        # mk <- M @ mk_prev + c_{d-k+1} I
        prev = mk
        mk = [[_ZERO] * d for _ in range(d)]
        for i in range(d):
            row = m[i]
            for j in range(d):
                acc = _ZERO
                for t in range(d):
                    if row[t] and prev[t][j]:
                        acc = acc + row[t] * prev[t][j]
                mk[i][j] = acc
            mk[i][i] = mk[i][i] + coeffs[d - k + 1]
        tr = _ZERO
        for i in range(d):
            for t in range(d):
                if m[i][t] and mk[t][i]:
                    tr = tr + m[i][t] * mk[t][i]
        coeffs[d - k] = -tr / k
    return Polynomial(coeffs)


def power_sums(s: Polynomial, count: int) -> list[GaussianRational]:
    """Newton power sums p_0..p_{count-1} of the roots of s."""
    s = s.monic()
    d = s.degree
    # s = z^d + a_1 z^(d-1) + ... + a_d
    a = [s.coeff(d - j) for j in range(d + 1)]
    ps = [GaussianRational(d)]
    for k in range(1, count):
        acc = _ZERO
        for j in range(1, min(k - 1, d) + 1):
            acc = acc + a[j] * ps[k - j]
        if k <= d:
            acc = acc + a[k] * k
        ps.append(-acc)
    return ps


def root_sum(p: Polynomial, s: Polynomial) -> GaussianRational:
    """Sum of p(alpha) over the roots alpha of s (with multiplicity).

    Reduces p modulo s and combines its coefficients with Newton power sums.
    """
    r = p % s
    if r.is_zero():
        return _ZERO
    ps = power_sums(s, len(r.coeffs))
    acc = _ZERO
    for j, c in enumerate(r.coeffs):
        acc = acc + c * ps[j]
    return acc

