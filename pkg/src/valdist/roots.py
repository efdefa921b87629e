"""Numeric root location with exactly recovered multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .config import DEFAULTS
from .gaussian import GaussianRational
from .poly import Polynomial, squarefree_decomposition

__all__ = ["RootEntry", "RootSet", "RootFindingError", "roots_numeric", "locate_factor_roots", "rational_roots"]


class RootFindingError(RuntimeError):
    def __init__(self, factor: Polynomial, message: str):
        super().__init__(f"{message} (factor {factor.render()})")
        self.factor = factor


@dataclass(frozen=True)
class RootEntry:
    location: complex
    multiplicity: int
    source: Polynomial


@dataclass(frozen=True)
class RootSet:
    entries: tuple[RootEntry, ...]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    @property
    def locations(self) -> list[complex]:
        return [e.location for e in self.entries]

    @property
    def total_multiplicity(self) -> int:
        return sum(e.multiplicity for e in self.entries)


def _scaled_residual(f: Polynomial, x: complex) -> float:
    cs = f.to_complex()
    scale = max(abs(c) for c in cs)
    acc = 0j
    for c in reversed(cs):
        acc = acc * x + c / scale
    return abs(acc) / (1.0 + abs(x)) ** f.degree


def locate_factor_roots(f: Polynomial, tol: float | None = None, max_iter: int | None = None,
                        dps: int = 30) -> list[mpmath.mpc]:
    """Roots of a squarefree factor by Durand-Kerner iteration at ``dps`` digits."""
    tol = DEFAULTS.root_tol if tol is None else tol
    max_iter = DEFAULTS.root_max_iter if max_iter is None else max_iter
    if f.degree == 1:
        r = -f.coeff(0) / f.coeff(1)
        return [mpmath.mpc(mpmath.mpf(r.re.numerator) / r.re.denominator,
                           mpmath.mpf(r.im.numerator) / r.im.denominator)]
    with mpmath.workdps(dps):
        coeffs = [mpmath.mpc(mpmath.mpf(c.re.numerator) / c.re.denominator,
                             mpmath.mpf(c.im.numerator) / c.im.denominator)
                  for c in reversed(f.coeffs)]
        try:
            found = mpmath.polyroots(coeffs, maxsteps=max_iter, extraprec=2 * dps)
        except mpmath.libmp.libhyper.NoConvergence as exc:
            raise RootFindingError(f, f"no convergence within {max_iter} iterations") from exc
    for r in found:
        if _scaled_residual(f, complex(r)) > tol:
            raise RootFindingError(f, f"residual above {tol:g}")
    return list(found)


def _order_key(z: complex):
    return (round(z.real, 9), round(z.imag, 9))


def roots_numeric(p: Polynomial, tol: float | None = None, max_iter: int | None = None) -> RootSet:
    """Roots of p; multiplicities come from the exact squarefree decomposition."""
    if p.is_zero() or p.degree < 1:
        raise ValueError("roots_numeric needs a polynomial of degree >= 1")
    entries = []
    for factor, mult in squarefree_decomposition(p):
        for r in locate_factor_roots(factor, tol, max_iter):
            entries.append(RootEntry(complex(r), mult, factor))
    entries.sort(key=lambda e: _order_key(e.location))
    return RootSet(tuple(entries))


def rational_roots(f: Polynomial, approx: list[complex], max_den: int = 10**6) -> list[GaussianRational] | None:
    """Try to recover every root of f exactly from numeric approximations.

    Returns None unless each candidate is verified as an exact root.
    """
    if f.degree == 1:
        return [-f.coeff(0) / f.coeff(1)]
    out = []
    for z in approx:
        cand = GaussianRational(Fraction(z.real).limit_denominator(max_den),
                                Fraction(z.imag).limit_denominator(max_den))
        if f(cand):
            return None
        out.append(cand)
    if len(set(out)) != f.degree:
        return None
    return out
