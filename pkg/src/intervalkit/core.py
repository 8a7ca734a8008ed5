"""Classical closed intervals with outward-rounded arithmetic.

Endpoints are binary64 values; either end may be infinite. Every
arithmetic result encloses the exact set result. Empty sets only come out
of :func:`intersect` and are represented by the :data:`EMPTY` sentinel,
never by an endpoint encoding.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Union

from . import _rounding as rnd
from .errors import (
    IndeterminateForm,
    InfiniteEndpoint,
    IntervalError,
    ReversedEndpoints,
    ZeroInDivisor,
)

INF = math.inf


class _Empty:
    """The empty set. Arithmetic on it is a TypeError by design."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "EMPTY"

    def __str__(self):
        return "empty"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()


@dataclass(frozen=True)
class Interval:
    """The closed interval ``[lo, hi]`` with ``lo <= hi``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise IntervalError("NaN endpoint")
        if lo > hi:
            raise ReversedEndpoints(f"lo={lo!r} > hi={hi!r}")
        if lo == INF or hi == -INF:
            raise IntervalError(f"degenerate infinite interval [{lo}, {hi}]")
        # normalise -0.0 so printing and equality stay canonical
        object.__setattr__(self, "lo", lo + 0.0)
        object.__setattr__(self, "hi", hi + 0.0)

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(x, x)

    def __str__(self):
        return format_interval(self.lo, self.hi)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __contains__(self, x):
        return contains(self, x)

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __pow__(self, n):
        return int_pow(self, n)

    @property
    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def width(self) -> float:
        return rnd.sub_ru(self.hi, self.lo)

    @property
    def mid(self) -> float:
        _require_finite(self)
        m = 0.5 * self.lo + 0.5 * self.hi
        # keep the midpoint inside even after underflow in the halves
        return min(max(m, self.lo), self.hi)

    @property
    def rad(self) -> float:
        _require_finite(self)
        return 0.5 * rnd.sub_ru(self.hi, self.lo)

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))


MaybeInterval = Union[Interval, _Empty]


class Geometry(NamedTuple):
    width: float
    mid: float
    rad: float
    mag: float


def make(lo: float, hi: float) -> Interval:
    return Interval(lo, hi)


def _coerce(x):
    if isinstance(x, Interval):
        return x
    if x is EMPTY:
        raise TypeError("arithmetic on the empty set is not defined")
    if isinstance(x, (int, float)):
        return Interval(x, x)
    return NotImplemented


def _check(*xs):
    for x in xs:
        if not isinstance(x, Interval):
            raise TypeError(f"expected Interval, got {type(x).__name__}")


def _require_finite(*xs):
    for x in xs:
        if not x.is_finite:
            raise InfiniteEndpoint(f"{x} has an infinite endpoint")


def add(a: Interval, b: Interval) -> Interval:
    _check(a, b)
    if (a.lo == -INF and b.lo == INF) or (a.hi == INF and b.hi == -INF):
        raise IndeterminateForm(f"{a} + {b}")
    return Interval(rnd.add_rd(a.lo, b.lo), rnd.add_ru(a.hi, b.hi))


def sub(a: Interval, b: Interval) -> Interval:
    _check(a, b)
    if (a.lo == -INF and b.hi == -INF) or (a.hi == INF and b.lo == INF):
        raise IndeterminateForm(f"{a} - {b}")
    return Interval(rnd.sub_rd(a.lo, b.hi), rnd.sub_ru(a.hi, b.lo))


def add_sub(a: Interval, b: Interval, which: str) -> Interval:
    if which == "+":
        return add(a, b)
    if which == "-":
        return sub(a, b)
    raise ValueError(f"unknown operator {which!r}")


def _endpoint_hull(pairs, op):
    lo = min(op(x, y, False) for x, y in pairs)
    hi = max(op(x, y, True) for x, y in pairs)
    return Interval(lo, hi)


def mul(a: Interval, b: Interval) -> Interval:
    """Product over the four endpoint pairs; 0 * inf counts as 0."""
    _check(a, b)
    pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
    return _endpoint_hull(pairs, rnd.mul)


def reciprocal(b: Interval) -> Interval:
    _check(b)
    if b.lo <= 0.0 <= b.hi:
        raise ZeroInDivisor(f"0 in {b}")
    return Interval(rnd.div_rd(1.0, b.hi), rnd.div_ru(1.0, b.lo))


def div(a: Interval, b: Interval) -> Interval:
    """Classical quotient, defined only for divisors excluding zero."""
    _check(a, b)
    if b.lo <= 0.0 <= b.hi:
        raise ZeroInDivisor(f"0 in {b}")
    if a.is_finite and b.is_finite:
        pairs = ((a.lo, b.lo), (a.lo, b.hi), (a.hi, b.lo), (a.hi, b.hi))
        return _endpoint_hull(pairs, rnd.div)
    # inf/inf has no endpoint meaning; go through the reciprocal instead
    return mul(a, reciprocal(b))


def int_pow(a: Interval, n: int) -> Interval:
    """Exact range ``{x**n : x in a}``, rounded outward."""
    _check(a)
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise ValueError(f"exponent must be a nonnegative int, got {n!r}")
    if n == 0:
        return Interval(1.0, 1.0)
    lo, hi = a.lo, a.hi
    if lo >= 0.0:
        return Interval(rnd.pow_nonneg(lo, n, False), rnd.pow_nonneg(hi, n, True))
    if hi <= 0.0:
        if n % 2 == 0:
            return Interval(rnd.pow_nonneg(-hi, n, False), rnd.pow_nonneg(-lo, n, True))
        return Interval(-rnd.pow_nonneg(-lo, n, True), -rnd.pow_nonneg(-hi, n, False))
    # lo < 0 < hi
    if n % 2 == 0:
        return Interval(0.0, max(rnd.pow_nonneg(-lo, n, True), rnd.pow_nonneg(hi, n, True)))
    return Interval(-rnd.pow_nonneg(-lo, n, True), rnd.pow_nonneg(hi, n, True))


def intersect(a: Interval, b: Interval) -> MaybeInterval:
    _check(a, b)
    lo = max(a.lo, b.lo)
    hi = min(a.hi, b.hi)
    if lo > hi:
        return EMPTY
    return Interval(lo, hi)


def hull(a: MaybeInterval, b: MaybeInterval) -> MaybeInterval:
    if a is EMPTY:
        return b
    if b is EMPTY:
        return a
    return Interval(min(a.lo, b.lo), max(a.hi, b.hi))


def intersect_hull(a: Interval, b: Interval, which: str) -> MaybeInterval:
    if which in ("∩", "intersect", "meet"):
        return intersect(a, b)
    if which in ("hull", "∪"):
        return hull(a, b)
    raise ValueError(f"unknown set operation {which!r}")


def dist(a: Interval, b: Interval) -> float:
    """Max of the endpoint deviations (the usual interval metric)."""
    _check(a, b)
    _require_finite(a, b)
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def geometry(a: Interval) -> Geometry:
    return Geometry(a.width, a.mid, a.rad, a.mag)


def contains(a: Interval, x: float) -> bool:
    return a.lo <= x <= a.hi


def subset(a: Interval, b: Interval) -> bool:
    return b.lo <= a.lo and a.hi <= b.hi


def interior(a: Interval, b: Interval) -> bool:
    """True when ``a`` lies in the topological interior of ``b``."""
    lo_ok = b.lo == -INF or b.lo < a.lo
    hi_ok = b.hi == INF or a.hi < b.hi
    return lo_ok and hi_ok


# -- text form ---------------------------------------------------------------

def format_float(x: float) -> str:
    if x == INF:
        return "inf"
    if x == -INF:
        return "-inf"
    return format(x + 0.0, ".17g")


def format_interval(lo: float, hi: float) -> str:
    return f"[{format_float(lo)},{format_float(hi)}]"


_NUM = r"[+-]?(?:inf|(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
_PAIR_RE = re.compile(rf"^\s*\[\s*({_NUM})\s*,\s*({_NUM})\s*\]\s*$", re.IGNORECASE)


def parse_endpoints(text: str) -> tuple[float, float]:
    """Split ``"[lo,hi]"`` into two floats without any order check."""
    m = _PAIR_RE.match(text)
    if not m:
        raise IntervalError(f"cannot parse interval {text!r}")
    return float(m.group(1)), float(m.group(2))


def parse_interval(text: str) -> Interval:
    lo, hi = parse_endpoints(text)
    return Interval(lo, hi)
