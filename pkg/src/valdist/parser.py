"""Recursive-descent parser for polynomial and rational-function expressions.

Grammar (whitespace insignificant)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/')? factor)*      # juxtaposition multiplies
    factor := base ('^' nat)?
    base   := var | literal | 'i' | '(' expr ')' | name '(' expr ')'
    literal:= integer

``a/b`` of two literals is therefore exact rational division. Function
calls (``name(...)``) are only accepted when the caller's algebra defines
them; plain polynomial parsing has none.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .gaussian import GaussianRational
from .poly import Polynomial
from .ratfunc import RationalFunction

__all__ = ["ParseError", "parse_expression", "parse_polynomial", "render_polynomial", "Parser"]


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> list[Token]:
    out = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            out.append(Token("num", num, start))
        elif name is not None:
            # split "zi" / "iz" style juxtapositions of single letters
            if len(name) > 1 and name not in ("exp",):
                for k, ch in enumerate(name):
                    out.append(Token("name", ch, start + k))
            else:
                out.append(Token("name", name, start))
        else:
            out.append(Token("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(Token("end", "", n))
    return out


class PolyAlgebra:
    """Builds RationalFunction values in a single declared variable."""

    def __init__(self, var: str):
        self.var = var

    def number(self, n: int):
        return RationalFunction(Polynomial([n]))

    def imag(self):
        return RationalFunction(Polynomial([GaussianRational(0, 1)]))

    def variable(self, name: str, pos: int):
        if name != self.var:
            raise ParseError(f"unknown symbol {name!r} (variable is {self.var!r})", pos)
        return RationalFunction(Polynomial.x())

    def call(self, name: str, arg, pos: int):
        raise ParseError(f"function {name!r} not allowed in polynomial expressions", pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b, pos: int):
        if b.is_zero():
            raise ParseError("division by the zero polynomial", pos)
        return a / b

    def neg(self, a):
        return -a

    def power(self, a, k: int):
        return a**k


class Parser:
    def __init__(self, text: str, algebra):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.alg = algebra

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.kind != "op" or t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)
        return self.advance()

    def parse(self):
        if self.tok.kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        if self.tok.kind != "end":
            raise ParseError(f"unexpected token {self.tok.text!r}", self.tok.pos)
        return value

    def expr(self):
        negate = False
        if self.tok.kind == "op" and self.tok.text in "+-":
            negate = self.advance().text == "-"
        value = self.term()
        if negate:
            value = self.alg.neg(value)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = self.alg.add(value, rhs) if op == "+" else self.alg.sub(value, rhs)
        return value

    def _starts_factor(self) -> bool:
        t = self.tok
        return t.kind in ("num", "name") or (t.kind == "op" and t.text == "(")

    def term(self):
        value = self.factor()
        while True:
            t = self.tok
            if t.kind == "op" and t.text == "*":
                self.advance()
                value = self.alg.mul(value, self.factor())
            elif t.kind == "op" and t.text == "/":
                self.advance()
                pos = self.tok.pos
                value = self.alg.div(value, self.factor(), pos)
            elif self._starts_factor():
                value = self.alg.mul(value, self.factor())
            else:
                return value

    def factor(self):
        base = self.base()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind != "num":
                raise ParseError("exponent must be a natural number", t.pos)
            self.advance()
            base = self.alg.power(base, int(t.text))
        return base

    def base(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            return self.alg.number(int(t.text))
        if t.kind == "name":
            self.advance()
            if self.tok.kind == "op" and self.tok.text == "(" and len(t.text) > 1:
                self.advance()
                arg = self.expr()
                self.expect(")")
                return self.alg.call(t.text, arg, t.pos)
            if t.text == "i":
                return self.alg.imag()
            return self.alg.variable(t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_expression(text: str, var: str = "z"):
    """Parse to a Polynomial when the result is polynomial, else a RationalFunction."""
    rf = Parser(text, PolyAlgebra(var)).parse()
    if rf.den.degree == 0:
        return rf.num / rf.den.lc
    return rf


def parse_polynomial(text: str, var: str = "z") -> Polynomial:
    value = parse_expression(text, var)
    if isinstance(value, RationalFunction):
        raise ParseError("expression is not a polynomial", 0)
    return value


def _coeff_str(c: GaussianRational) -> str:
    if c.is_real() and c.re.denominator == 1:
        return str(c.re)
    return f"({_scalar_src(c)})"


def _frac_src(x: Fraction) -> str:
    return str(x)


def _scalar_src(c: GaussianRational) -> str:
    if c.is_real():
        return _frac_src(c.re)
    im = c.im
    im_txt = "i" if im == 1 else ("-i" if im == -1 else f"{_frac_src(im)}*i")
    if not c.re:
        return im_txt
    sign = "" if im_txt.startswith("-") else "+"
    return f"{_frac_src(c.re)}{sign}{im_txt}"


def render_polynomial(p: Polynomial, var: str = "z") -> str:
    """Render in the input grammar; the output re-parses to ``p``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(p.degree, -1, -1):
        c = p.coeff(k)
        if not c:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        if not mono:
            txt = _coeff_str(c)
        elif c == 1:
            txt = mono
        elif c == -1:
            txt = f"-{mono}"
        else:
            txt = f"{_coeff_str(c)}*{mono}"
        parts.append(txt)
    out = parts[0]
    for txt in parts[1:]:
        out += f" - {txt[1:]}" if txt.startswith("-") else f" + {txt}"
    return out
