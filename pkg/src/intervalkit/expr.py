"""Univariate arithmetic expressions in ``x``.

Grammar (left-associative binary operators)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' uint)?
    atom   := number | 'x' | '(' expr ')'

``^`` binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.
Expressions evaluate over intervals (natural extension, powers as exact
ranges) and, with :func:`eval_ad`, carry a derivative enclosure along.
"""

from __future__ import annotations

import math
import re
import sys
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import NamedTuple, Union

from . import core
from .core import Interval, int_pow
from .errors import ParseError


class Var:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Var()"

    def __eq__(self, other):
        return isinstance(other, Var)

    def __hash__(self):
        return hash("Var")


_UNSIGNED = re.compile(r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")


def literal_enclosure(text: str) -> Interval:
    """Smallest float interval around a decimal literal: a point if exact."""
    exact = Fraction(text)
    try:
        f = float(exact)
    except OverflowError:
        return Interval(sys.float_info.max, math.inf)
    fe = Fraction(f)
    if fe == exact:
        return Interval(f, f)
    if fe < exact:
        return Interval(f, math.nextafter(f, math.inf))
    return Interval(math.nextafter(f, -math.inf), f)


@dataclass(frozen=True)
class Const:
    """A nonnegative decimal literal, kept as written."""

    text: str
    enclosure: Interval = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if not _UNSIGNED.fullmatch(self.text):
            raise ValueError(f"not an unsigned decimal literal: {self.text!r}")
        object.__setattr__(self, "enclosure", literal_enclosure(self.text))

    @classmethod
    def of(cls, value) -> Union[Const, Neg]:
        """Literal for a finite float, written out exactly."""
        v = float(value)
        if not math.isfinite(v):
            raise ValueError(f"not a finite number: {v!r}")
        c = cls(str(Decimal(abs(v))))
        return Neg(c) if v < 0 else c


@dataclass(frozen=True)
class Neg:
    arg: Expr


@dataclass(frozen=True)
class Add:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div:
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow:
    base: Expr
    exponent: int

    def __post_init__(self):
        if isinstance(self.exponent, bool) or not isinstance(self.exponent, int) or self.exponent < 0:
            raise ValueError("exponent must be a nonnegative integer")


Expr = Union[Const, Var, Neg, Add, Sub, Mul, Div, Pow]

_BINARY = {Add: "+", Sub: "-", Mul: "*", Div: "/"}


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<var>x)|(?P<op>[-+*/^()]))"
)


class _Tok(NamedTuple):
    kind: str  # 'num', 'var', an operator character, or 'end'
    text: str
    offset: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos),
                             {"number", "x", "(", "-"})
        start = m.start(m.lastgroup)
        kind = m.lastgroup if m.lastgroup != "op" else m.group("op")
        toks.append(_Tok(kind, m.group(m.lastgroup), _byte_offset(text, start)))
        pos = m.end()
    toks.append(_Tok("end", "", _byte_offset(text, len(text))))
    return toks


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, expected):
        t = self.peek()
        what = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"unexpected {what}", t.offset, expected)

    def expr(self):
        node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.take().kind
            rhs = self.factor()
            node = Mul(node, rhs) if op == "*" else Div(node, rhs)
        return node

    def factor(self):
        if self.peek().kind == "-":
            self.take()
            return Neg(self.factor())
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            t = self.peek()
            if t.kind != "num" or not t.text.isdigit():
                self.fail({"unsigned integer"})
            self.take()
            return Pow(base, int(t.text))
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.take()
            return Const(t.text)
        if t.kind == "var":
            self.take()
            return Var()
        if t.kind == "(":
            self.take()
            node = self.expr()
            if self.peek().kind != ")":
                self.fail({")", "+", "-", "*", "/", "^"})
            self.take()
            return node
        self.fail({"number", "x", "(", "-"})


def parse(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.peek().kind != "end":
        p.fail({"+", "-", "*", "/", "^", "end of input"})
    return node


def to_string(e: Expr) -> str:
    """Fully parenthesised text that parses back to the same tree."""
    if isinstance(e, Const):
        return e.text
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Neg):
        return f"(-{to_string(e.arg)})"
    if isinstance(e, Pow):
        return f"({to_string(e.base)}^{e.exponent})"
    return f"({to_string(e.left)} {_BINARY[type(e)]} {to_string(e.right)})"


# -- evaluation --------------------------------------------------------------

def eval_interval(e: Expr, X: Interval) -> Interval:
    """Natural interval extension of ``e`` over ``X``."""
    if isinstance(e, Const):
        return e.enclosure
    if isinstance(e, Var):
        return X
    if isinstance(e, Neg):
        return -eval_interval(e.arg, X)
    if isinstance(e, Pow):
        return int_pow(eval_interval(e.base, X), e.exponent)
    u = eval_interval(e.left, X)
    v = eval_interval(e.right, X)
    if isinstance(e, Add):
        return core.add(u, v)
    if isinstance(e, Sub):
        return core.sub(u, v)
    if isinstance(e, Mul):
        return core.mul(u, v)
    return core.div(u, v)


def eval_real(e: Expr, x: float) -> float:
    """Plain floating-point evaluation, used as a reference."""
    if isinstance(e, Const):
        return float(e.text)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -eval_real(e.arg, x)
    if isinstance(e, Pow):
        return eval_real(e.base, x) ** e.exponent
    u = eval_real(e.left, x)
    v = eval_real(e.right, x)
    if isinstance(e, Add):
        return u + v
    if isinstance(e, Sub):
        return u - v
    if isinstance(e, Mul):
        return u * v
    return u / v


class AdPair(NamedTuple):
    value: Interval
    deriv: Interval


_ZERO = Interval(0.0, 0.0)
_ONE = Interval(1.0, 1.0)


def eval_ad(e: Expr, X: Interval) -> AdPair:
    """Value and derivative enclosures over ``X`` by forward propagation."""
    if isinstance(e, Const):
        return AdPair(e.enclosure, _ZERO)
    if isinstance(e, Var):
        return AdPair(X, _ONE)
    if isinstance(e, Neg):
        u = eval_ad(e.arg, X)
        return AdPair(-u.value, -u.deriv)
    if isinstance(e, Pow):
        u = eval_ad(e.base, X)
        n = e.exponent
        if n == 0:
            return AdPair(_ONE, _ZERO)
        factor = core.mul(Interval.point(float(n)), int_pow(u.value, n - 1))
        return AdPair(int_pow(u.value, n), core.mul(factor, u.deriv))
    u = eval_ad(e.left, X)
    v = eval_ad(e.right, X)
    if isinstance(e, Add):
        return AdPair(core.add(u.value, v.value), core.add(u.deriv, v.deriv))
    if isinstance(e, Sub):
        return AdPair(core.sub(u.value, v.value), core.sub(u.deriv, v.deriv))
    if isinstance(e, Mul):
        d = core.add(core.mul(u.deriv, v.value), core.mul(u.value, v.deriv))
        return AdPair(core.mul(u.value, v.value), d)
    value = core.div(u.value, v.value)
    num = core.sub(core.mul(u.deriv, v.value), core.mul(u.value, v.deriv))
    return AdPair(value, core.div(num, int_pow(v.value, 2)))
