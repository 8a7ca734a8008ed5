"""Directed rounding for binary64 without touching the FPU rounding mode.

Each operation is evaluated in round-to-nearest, the sign of the rounding
error is recovered exactly (TwoSum, Dekker's product, or an exact rational
comparison outside the safe exponent range), and the result is moved one
ulp only when it landed on the wrong side of the exact value. Exact
results are returned unchanged.
"""

import math
from fractions import Fraction

INF = math.inf

_SPLITTER = 134217729.0  # 2**27 + 1
_SAFE_HI = 2.0 ** 995
_SAFE_LO = 2.0 ** -960


def _direct(r, err, up):
    # err is the sign (or value) of exact - r
    if up:
        return math.nextafter(r, INF) if err > 0 else r
    return math.nextafter(r, -INF) if err < 0 else r


def _two_sum_err(a, b, s):
    bb = s - a
    return (a - (s - bb)) + (b - bb)


def _split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod_err(a, b, p):
    ah, al = _split(a)
    bh, bl = _split(b)
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _in_safe_range(*xs):
    for x in xs:
        ax = abs(x)
        if ax != 0.0 and not (_SAFE_LO < ax < _SAFE_HI):
            return False
    return True


def _overflow_err(r):
    # finite operands, infinite result: exact value is finite
    return -1.0 if r > 0 else 1.0


def add(a, b, up):
    """a + b rounded down (up=False) or up (up=True).

    Callers are responsible for rejecting inf + (-inf).
    """
    s = a + b
    if math.isinf(a) or math.isinf(b):
        return s
    if math.isinf(s):
        return _direct(s, _overflow_err(s), up)
    return _direct(s, _two_sum_err(a, b, s), up) + 0.0


def sub(a, b, up):
    return add(a, -b, up)


def mul(a, b, up):
    """a * b with directed rounding; 0 * inf is taken as 0."""
    if a == 0.0 or b == 0.0:
        return 0.0
    p = a * b
    if math.isinf(a) or math.isinf(b):
        return p
    if math.isinf(p):
        return _direct(p, _overflow_err(p), up)
    if _in_safe_range(a, b, p):
        err = _two_prod_err(a, b, p)
    else:
        exact = Fraction(a) * Fraction(b)
        err = (exact > Fraction(p)) - (exact < Fraction(p))
    return _direct(p, err, up) + 0.0


def div(a, b, up):
    """a / b with directed rounding; b must be nonzero.

    Infinite operands follow the limit rules (finite/inf = 0); inf/inf is
    not defined here and callers avoid it.
    """
    if a == 0.0:
        return 0.0
    if math.isinf(b):
        if math.isinf(a):
            raise ArithmeticError("inf / inf")
        return 0.0
    q = a / b
    if math.isinf(a):
        return q
    if math.isinf(q):
        return _direct(q, _overflow_err(q), up)
    if _in_safe_range(a, b, q):
        p = q * b
        rem = (a - p) - _two_prod_err(q, b, p)
        # exact - q = rem / b
        err = rem if b > 0 else -rem
    else:
        exact = Fraction(a) / Fraction(b)
        err = (exact > Fraction(q)) - (exact < Fraction(q))
    return _direct(q, err, up) + 0.0


def add_rd(a, b):
    return add(a, b, False)


def add_ru(a, b):
    return add(a, b, True)


def sub_rd(a, b):
    return add(a, -b, False)


def sub_ru(a, b):
    return add(a, -b, True)


def mul_rd(a, b):
    return mul(a, b, False)


def mul_ru(a, b):
    return mul(a, b, True)


def div_rd(a, b):
    return div(a, b, False)


def div_ru(a, b):
    return div(a, b, True)


def pow_nonneg(x, n, up):
    """x**n for x >= 0, rounded in the requested direction."""
    r = 1.0
    for _ in range(n):
        r = mul(r, x, up)
    return r
