"""Division by intervals that contain zero.

Two readings of the divisor are supported. ``CONTAINMENT`` treats the
divisor as the closed set it is, so when both operands contain zero the
quotient must hold every value of ``0/0`` and is the whole line.
``SET_BASED`` drops the divisor value 0 before dividing, which is what a
divisor that is open at zero means. Results are always closures; the
library never returns open intervals.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple, Union

from . import _rounding as rnd
from .core import EMPTY, Interval, _check, div, hull, parse_interval
from .errors import InvalidEncoding

INF = math.inf


class ZeroSemantics(enum.Enum):
    CONTAINMENT = "containment"
    SET_BASED = "setbased"


@dataclass(frozen=True)
class Single:
    interval: Interval


@dataclass(frozen=True)
class Pair:
    """Two disjoint unbounded pieces ``[-inf, left.hi]`` and ``[right.lo, inf]``."""

    left: Interval
    right: Interval

    def __post_init__(self):
        if not (self.left.lo == -INF and self.right.hi == INF and self.left.hi < self.right.lo):
            raise ValueError(f"malformed pair {self.left} | {self.right}")


class _Whole:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "WHOLE_LINE"

    def __reduce__(self):
        return (_Whole, ())


WHOLE_LINE = _Whole()

ExtendedDivResult = Union[type(EMPTY), Single, Pair, _Whole]


def components(r) -> list[Interval]:
    """The result as a list of closed intervals (0, 1 or 2 of them)."""
    if r is EMPTY:
        return []
    if r is WHOLE_LINE:
        return [Interval(-INF, INF)]
    if isinstance(r, Single):
        return [r.interval]
    return [r.left, r.right]


def format_result(r) -> str:
    if r is EMPTY:
        return "empty"
    if r is WHOLE_LINE:
        return "entire"
    if isinstance(r, Single):
        return str(r.interval)
    return f"{r.left} | {r.right}"


def _over_positive(a: Interval, top: float) -> Interval:
    """Closure of a / y for y in (0, top]."""
    if a.lo >= 0.0:
        if a.hi == 0.0:
            return Interval(0.0, 0.0)
        return Interval(rnd.div_rd(a.lo, top), INF)
    if a.hi <= 0.0:
        return Interval(-INF, rnd.div_ru(a.hi, top))
    return Interval(-INF, INF)


def _over_negative(a: Interval, bottom: float) -> Interval:
    """Closure of a / y for y in [bottom, 0)."""
    if a.lo >= 0.0:
        if a.hi == 0.0:
            return Interval(0.0, 0.0)
        return Interval(-INF, rnd.div_ru(a.lo, bottom))
    if a.hi <= 0.0:
        return Interval(rnd.div_rd(a.hi, bottom), INF)
    return Interval(-INF, INF)


def _normalise(pieces):
    pieces = sorted(pieces, key=lambda p: p.lo)
    if not pieces:
        return EMPTY
    if len(pieces) == 2 and pieces[0].hi < pieces[1].lo:
        return Pair(pieces[0], pieces[1])
    h = pieces[0]
    for p in pieces[1:]:
        h = hull(h, p)
    if h.lo == -INF and h.hi == INF:
        return WHOLE_LINE
    return Single(h)


def ediv(a: Interval, b: Interval, sem: ZeroSemantics = ZeroSemantics.SET_BASED):
    _check(a, b)
    sem = ZeroSemantics(sem)
    if not (b.lo <= 0.0 <= b.hi):
        return Single(div(a, b))
    a_has_zero = a.lo <= 0.0 <= a.hi
    if sem is ZeroSemantics.CONTAINMENT and a_has_zero:
        return WHOLE_LINE
    pieces = []
    if b.lo < 0.0:
        pieces.append(_over_negative(a, b.lo))
    if b.hi > 0.0:
        pieces.append(_over_positive(a, b.hi))
    return _normalise(pieces)


class SignedZeroReading(NamedTuple):
    interval: Interval
    lo_open_at_zero: bool
    hi_open_at_zero: bool


def interpret_signed_zero(lo: float, hi: float) -> SignedZeroReading:
    """Read an endpoint pair whose zero endpoints carry openness in the sign.

    ``(a, +0)`` is ``[a, 0]`` and ``(a, -0)`` is ``[a, 0[`` for ``a < 0``;
    ``(-0, b)`` is ``[0, b]`` and ``(+0, b)`` is ``]0, b]`` for ``b > 0``.
    """
    lo, hi = float(lo), float(hi)
    lo_open = hi_open = False
    if hi == 0.0:
        if not lo < 0.0:
            raise InvalidEncoding(f"zero upper endpoint needs lo < 0, got lo={lo!r}")
        hi_open = math.copysign(1.0, hi) < 0
    if lo == 0.0:
        if not hi > 0.0:
            raise InvalidEncoding(f"zero lower endpoint needs hi > 0, got hi={hi!r}")
        lo_open = math.copysign(1.0, lo) > 0
    return SignedZeroReading(Interval(lo, hi), lo_open, hi_open)


def ediv_encoded(a: Interval, b_lo: float, b_hi: float):
    """Divide by a signed-zero encoded divisor.

    A divisor that is open at its zero endpoint is divided with
    ``SET_BASED`` semantics, a closed one with ``CONTAINMENT``.
    """
    reading = interpret_signed_zero(b_lo, b_hi)
    open_at_zero = reading.lo_open_at_zero or reading.hi_open_at_zero
    sem = ZeroSemantics.SET_BASED if open_at_zero else ZeroSemantics.CONTAINMENT
    return ediv(a, reading.interval, sem)


def parse_result(text: str):
    text = text.strip()
    if text == "empty":
        return EMPTY
    if text == "entire":
        return WHOLE_LINE
    if "|" in text:
        left, right = text.split("|")
        return Pair(parse_interval(left), parse_interval(right))
    return Single(parse_interval(text))

