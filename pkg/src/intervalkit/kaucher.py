"""Kaucher complete interval arithmetic over proper and improper intervals.

A :class:`KInterval` is any pair of finite reals; it is *improper* when
``lo > hi``. Addition makes the set an abelian group, multiplication is
given by the sign-class table below, and inclusion (``kleq``) turns it into
a lattice where ``meet`` of disjoint intervals is improper instead of empty.

Rounding is outward in the inclusion order: ``lo`` down, ``hi`` up, for
proper and improper results alike.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import _rounding as rnd
from .core import Interval, format_interval, int_pow as _core_int_pow, parse_endpoints
from .errors import IntervalError, Unsupported, ZeroInProDivisor


@dataclass(frozen=True)
class KInterval:
    lo: float
    hi: float

    def __post_init__(self):
        lo = float(self.lo)
        hi = float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise IntervalError(f"Kaucher intervals need finite endpoints, got [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo + 0.0)
        object.__setattr__(self, "hi", hi + 0.0)

    @classmethod
    def point(cls, x: float) -> KInterval:
        return cls(x, x)

    @classmethod
    def from_interval(cls, x: Interval) -> KInterval:
        return cls(x.lo, x.hi)

    def to_interval(self) -> Interval:
        """The classical interval; fails for improper values."""
        return Interval(self.lo, self.hi)

    @property
    def is_proper(self) -> bool:
        return self.lo <= self.hi

    @property
    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def __str__(self):
        return format_interval(self.lo, self.hi)

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __add__(self, other):
        return kadd(self, _kcoerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ksub(self, _kcoerce(other))

    def __rsub__(self, other):
        return ksub(_kcoerce(other), self)

    def __mul__(self, other):
        return kmul(self, _kcoerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return kdiv(self, _kcoerce(other))

    def __neg__(self):
        return KInterval(-self.hi, -self.lo)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    def __le__(self, other):
        return kleq(self, other)

    def __ge__(self, other):
        return kleq(other, self)


def _kcoerce(x):
    if isinstance(x, KInterval):
        return x
    if isinstance(x, Interval):
        return KInterval(x.lo, x.hi)
    if isinstance(x, (int, float)):
        return KInterval(x, x)
    return NotImplemented


def kparse(text: str) -> KInterval:
    lo, hi = parse_endpoints(text)
    return KInterval(lo, hi)


class SignClass(enum.Enum):
    P = "P"
    NEG_P = "-P"
    Z = "Z"
    DUAL_Z = "dual Z"


def sign_class(k: KInterval) -> SignClass:
    lo, hi = k.lo, k.hi
    if lo >= 0 and hi >= 0:
        return SignClass.P
    if lo <= 0 and hi <= 0:
        return SignClass.NEG_P
    if lo < 0 < hi:
        return SignClass.Z
    return SignClass.DUAL_Z


def dual(k: KInterval) -> KInterval:
    return KInterval(k.hi, k.lo)


def pro(k: KInterval) -> KInterval:
    return KInterval(min(k.lo, k.hi), max(k.lo, k.hi))


def opp(k: KInterval) -> KInterval:
    return KInterval(-k.lo, -k.hi)


def dual_pro_opp(k: KInterval, which: str) -> KInterval:
    return {"dual": dual, "pro": pro, "opp": opp}[which](k)


def kadd(a: KInterval, b: KInterval) -> KInterval:
    return KInterval(rnd.add_rd(a.lo, b.lo), rnd.add_ru(a.hi, b.hi))


def alg_sub(a: KInterval, b: KInterval) -> KInterval:
    """The group difference: the unique ``c`` with ``b + c == a``."""
    return KInterval(rnd.sub_rd(a.lo, b.lo), rnd.sub_ru(a.hi, b.hi))


def ksub(a: KInterval, b: KInterval) -> KInterval:
    """``a + opp(dual(b))``; equals classical subtraction on proper operands."""
    return KInterval(rnd.sub_rd(a.lo, b.hi), rnd.sub_ru(a.hi, b.lo))


_P, _NP, _Z, _DZ = SignClass.P, SignClass.NEG_P, SignClass.Z, SignClass.DUAL_Z


def _table_product(a, b, op):
    """Kaucher product via the 16-case sign-class table.

    ``op(i, j, up)`` returns the directed-rounded product of endpoint ``i``
    of ``a`` and endpoint ``j`` of ``b`` (0 = lo, 1 = hi).
    """
    ca, cb = sign_class(a), sign_class(b)

    def lo(i, j):
        return op(i, j, False)

    def hi(i, j):
        return op(i, j, True)

    if cb is _P:
        if ca is _P:
            return lo(0, 0), hi(1, 1)
        if ca is _Z:
            return lo(0, 1), hi(1, 1)
        if ca is _NP:
            return lo(0, 1), hi(1, 0)
        return lo(0, 0), hi(1, 0)
    if cb is _Z:
        if ca is _P:
            return lo(1, 0), hi(1, 1)
        if ca is _Z:
            return min(lo(0, 1), lo(1, 0)), max(hi(0, 0), hi(1, 1))
        if ca is _NP:
            return lo(0, 1), hi(0, 0)
        return 0.0, 0.0
    if cb is _NP:
        if ca is _P:
            return lo(1, 0), hi(0, 1)
        if ca is _Z:
            return lo(1, 0), hi(0, 0)
        if ca is _NP:
            return lo(1, 1), hi(0, 0)
        return lo(1, 1), hi(0, 1)
    # b is dual Z
    if ca is _P:
        return lo(0, 0), hi(0, 1)
    if ca is _Z:
        return 0.0, 0.0
    if ca is _NP:
        return lo(1, 1), hi(1, 0)
    return max(lo(0, 0), lo(1, 1)), min(hi(0, 1), hi(1, 0))


def kmul(a: KInterval, b: KInterval) -> KInterval:
    ae, be = (a.lo, a.hi), (b.lo, b.hi)

    def op(i, j, up):
        return rnd.mul(ae[i], be[j], up)

    return KInterval(*_table_product(a, b, op))


def _require_zero_free(b: KInterval):
    if min(b.lo, b.hi) <= 0.0 <= max(b.lo, b.hi):
        raise ZeroInProDivisor(f"0 in pro({b})")


def reciprocal(b: KInterval) -> KInterval:
    """``[1/hi, 1/lo]``: the classical reciprocal, extended to improper ``b``."""
    _require_zero_free(b)
    return KInterval(rnd.div_rd(1.0, b.hi), rnd.div_ru(1.0, b.lo))


def alg_inverse(b: KInterval) -> KInterval:
    """``[1/lo, 1/hi]``: the unique ``c`` with ``b * c == [1, 1]``."""
    _require_zero_free(b)
    return KInterval(rnd.div_rd(1.0, b.lo), rnd.div_ru(1.0, b.hi))


def inverses(b: KInterval, which: str) -> KInterval:
    if which == "reciprocal":
        return reciprocal(b)
    if which in ("alg_inverse", "algebraic"):
        return alg_inverse(b)
    raise ValueError(f"unknown inverse {which!r}")


def kdiv(a: KInterval, b: KInterval) -> KInterval:
    """``a * reciprocal(b)``, with each endpoint computed as one quotient."""
    _require_zero_free(b)
    ae = (a.lo, a.hi)
    # endpoint j of reciprocal(b) is 1 / (endpoint 1-j of b)
    be = (b.hi, b.lo)
    r = KInterval(1.0 / b.hi, 1.0 / b.lo)  # only the sign class is read

    def op(i, j, up):
        return rnd.div(ae[i], be[j], up)

    return KInterval(*_table_product(a, r, op))


def meet(a: KInterval, b: KInterval) -> KInterval:
    return KInterval(max(a.lo, b.lo), min(a.hi, b.hi))


def join(a: KInterval, b: KInterval) -> KInterval:
    return KInterval(min(a.lo, b.lo), max(a.hi, b.hi))


def meet_join(a: KInterval, b: KInterval, which: str) -> KInterval:
    if which in ("∧", "meet"):
        return meet(a, b)
    if which in ("∨", "join"):
        return join(a, b)
    raise ValueError(f"unknown lattice operation {which!r}")


def kleq(a: KInterval, b: KInterval) -> bool:
    """Inclusion ``a ⊆ b``, valid for proper and improper operands."""
    return b.lo <= a.lo and a.hi <= b.hi


def kdist(a: KInterval, b: KInterval) -> float:
    return max(abs(a.lo - b.lo), abs(a.hi - b.hi))


def kint_pow(a: KInterval, n: int) -> KInterval:
    if not a.is_proper:
        raise Unsupported(f"integer power of improper interval {a}")
    r = _core_int_pow(Interval(a.lo, a.hi), n)
    return KInterval(r.lo, r.hi)
