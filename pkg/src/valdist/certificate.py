"""Auditable verdicts: every decision is a recorded comparison that can be replayed."""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .gaussian import GaussianRational

__all__ = ["Condition", "Certificate", "CERTIFIED", "NOT_CERTIFIED", "NOT_APPLICABLE", "NUMERIC_ONLY",
           "encode_value"]

CERTIFIED = "certified"
NOT_CERTIFIED = "not-certified"
NOT_APPLICABLE = "not-applicable"
NUMERIC_ONLY = "numeric-only"

_RELATIONS = {
    "gt": operator.gt,
    "ge": operator.ge,
    "lt": operator.lt,
    "le": operator.le,
    "eq": operator.eq,
    "ne": operator.ne,
}
_SYMBOLS = {"gt": ">", "ge": ">=", "lt": "<", "le": "<=", "eq": "==", "ne": "!="}


@dataclass(frozen=True)
class Condition:
    text: str
    relation: str
    lhs: Any
    rhs: Any
    holds: bool
    numeric: bool = False

    @classmethod
    def check(cls, text: str, lhs, relation: str, rhs, numeric: bool = False) -> "Condition":
        return cls(text, relation, lhs, rhs, bool(_RELATIONS[relation](lhs, rhs)), numeric)

    def replay(self) -> bool:
        return bool(_RELATIONS[self.relation](self.lhs, self.rhs))

    @property
    def margin(self) -> float | None:
        if not self.numeric:
            return None
        return float(self.lhs) - float(self.rhs)

    def to_dict(self) -> dict:
        out = {
            "condition": self.text,
            "relation": _SYMBOLS[self.relation],
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "holds": self.holds,
        }
        if self.numeric:
            out["numeric"] = True
            out["margin"] = self.margin
        return out


@dataclass(frozen=True)
class Certificate:
    criterion: str
    verdict: str
    trace: tuple[Condition, ...] = ()
    precision: str = "exact"
    notes: tuple[str, ...] = ()
    info: dict = field(default_factory=dict)
    children: tuple["Certificate", ...] = ()

    @property
    def certified(self) -> bool:
        return self.verdict == CERTIFIED

    def replay(self) -> bool:
        """Re-evaluate every recorded condition (recursively) against its verdict."""
        ok = all(c.replay() == c.holds for c in self.trace)
        if self.verdict == CERTIFIED:
            ok = ok and all(c.holds for c in self.trace)
        return ok and all(ch.replay() for ch in self.children)

    def to_dict(self) -> dict:
        out = {
            "criterion": self.criterion,
            "verdict": self.verdict,
            "precision": self.precision,
            "trace": [c.to_dict() for c in self.trace],
        }
        if self.notes:
            out["notes"] = list(self.notes)
        if self.info:
            out["info"] = {k: encode_value(v) for k, v in self.info.items()}
        if self.children:
            out["children"] = [c.to_dict() for c in self.children]
        return out


def conclude(criterion: str, trace: list[Condition], notes=(), info=None,
             preconditions: int = 0) -> Certificate:
    """Build a certificate from a trace.

    The first ``preconditions`` conditions are hypotheses: if one fails the
    verdict is not-applicable rather than not-certified.
    """
    info = info or {}
    numeric = any(c.numeric for c in trace)
    if not all(c.holds for c in trace[:preconditions]):
        verdict = NOT_APPLICABLE
    elif all(c.holds for c in trace):
        verdict = NUMERIC_ONLY if numeric else CERTIFIED
    else:
        verdict = NOT_CERTIFIED
    return Certificate(criterion, verdict, tuple(trace), "numeric" if numeric else "exact",
                       tuple(notes), dict(info))


def encode_value(v):
    """JSON-friendly rendering of exact and numeric operands."""
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, GaussianRational):
        if v.is_real() and v.re.denominator == 1:
            return v.re.numerator
        return str(v)
    if isinstance(v, float):
        if v == float("inf"):
            return "inf"
        return v
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): encode_value(x) for k, x in v.items()}
    return str(v)
