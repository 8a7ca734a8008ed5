import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import interval, point_in, shrink
from intervalkit import core
from intervalkit.core import EMPTY, Interval, make
from intervalkit.errors import (
    InfiniteEndpoint,
    ReversedEndpoints,
    ZeroInDivisor,
)

INF = math.inf


def I(lo, hi):
    return Interval(lo, hi)


# -- construction ------------------------------------------------------------

def test_make_examples():
    assert make(1, 2) == I(1, 2)
    assert make(-INF, 0) == I(-INF, 0)
    with pytest.raises(ReversedEndpoints):
        make(2, 1)


@pytest.mark.parametrize("lo,hi", [(INF, INF), (-INF, -INF), (math.nan, 1.0), (0.0, math.nan)])
def test_make_rejects_degenerate_infinities_and_nan(lo, hi):
    with pytest.raises(ValueError):
        make(lo, hi)


def test_negative_zero_is_normalised():
    x = make(-0.0, -0.0)
    assert math.copysign(1.0, x.lo) == 1.0 and math.copysign(1.0, x.hi) == 1.0


def test_empty_is_a_sentinel_not_an_interval():
    assert not isinstance(EMPTY, Interval)
    assert not EMPTY
    with pytest.raises(TypeError):
        core.add(EMPTY, I(1, 2))


# -- arithmetic examples -----------------------------------------------------

def test_add_sub_examples():
    assert core.add_sub(I(1, 2), I(3, 4), "+") == I(4, 6)
    assert core.add_sub(I(1, 2), I(1, 2), "-") == I(-1, 1)
    assert core.add(I(0, 1), I(-INF, 0)) == I(-INF, 1)


def test_unbounded_sums_stay_unbounded():
    assert core.add(I(0, INF), I(-INF, 0)) == I(-INF, INF)
    assert core.sub(I(0, INF), I(0, INF)) == I(-INF, INF)


def test_mul_examples():
    assert core.mul(I(-1, 2), I(2, 3)) == I(-3, 6)
    assert core.mul(I(-1, 2), I(1, 3)) == I(-3, 6)
    assert core.mul(I(0, 0), I(5, 9)) == I(0, 0)


def test_mul_zero_times_infinity_is_zero():
    assert core.mul(I(0, 0), I(-INF, INF)) == I(0, 0)
    assert core.mul(I(0, 1), I(1, INF)) == I(0, INF)


def test_div_examples():
    assert core.div(I(1, 2), I(2, 4)) == I(0.25, 1)
    assert core.div(I(1, 1), I(1, 1)) == I(1, 1)
    with pytest.raises(ZeroInDivisor):
        core.div(I(0, 1), I(0, 1))


def test_int_pow_examples():
    assert core.int_pow(I(0, 1), 2) == I(0, 1)
    assert core.int_pow(I(-1, 2), 2) == I(0, 4)
    assert core.mul(I(-1, 2), I(-1, 2)) == I(-2, 4)
    assert core.int_pow(I(-2, -1), 3) == I(-8, -1)
    assert core.int_pow(I(-3, 5), 0) == I(1, 1)


def test_set_operation_examples():
    assert core.intersect_hull(I(1, 2), I(3, 4), "∩") is EMPTY
    assert core.intersect(I(1, 3), I(2, 4)) == I(2, 3)
    assert core.intersect_hull(I(1, 2), I(3, 4), "hull") == I(1, 4)
    assert core.hull(EMPTY, I(1, 2)) == I(1, 2)


def test_dist_examples():
    assert core.dist(I(0, 1), I(0, 1)) == 0
    assert core.dist(I(0, 1), I(1, 3)) == 2
    assert core.dist(I(-1, 1), I(0, 0)) == 1
    with pytest.raises(InfiniteEndpoint):
        core.dist(I(0, INF), I(0, 1))


def test_geometry_and_contains():
    assert tuple(core.geometry(I(1, 3))) == (2, 2, 1, 3)
    assert core.contains(I(0, 1), 0)
    assert not core.contains(I(0, 1), 1.5)
    assert 1.0 in I(0, 1)


# -- text form ---------------------------------------------------------------

def test_text_form():
    assert str(I(1, 2)) == "[1,2]"
    assert str(I(-INF, 0.1)) == "[-inf,0.10000000000000001]"
    assert core.parse_interval(" [ -inf , 3e-2 ] ") == I(-INF, 0.03)


@given(st.floats(allow_nan=False), st.floats(allow_nan=False))
def test_text_round_trip(a, b):
    lo, hi = min(a, b), max(a, b)
    if lo == INF or hi == -INF:
        return
    x = I(lo, hi)
    assert core.parse_interval(str(x)) == x


# -- properties --------------------------------------------------------------

def _ops():
    return [
        ("+", core.add),
        ("-", core.sub),
        ("*", core.mul),
        ("/", core.div),
    ]


def _random_pair(rng):
    kind = rng.random()
    if kind < 0.5:
        return interval(rng), interval(rng)
    # arbitrary doubles over several decades
    def r():
        a = rng.uniform(-1, 1) * 10.0 ** rng.randint(-8, 8)
        b = rng.uniform(-1, 1) * 10.0 ** rng.randint(-8, 8)
        return I(min(a, b), max(a, b))
    return r(), r()


def test_inclusion_isotonicity():
    rng = random.Random(1)
    for _ in range(10_000):
        A, B = _random_pair(rng)
        a, b = shrink(rng, A), shrink(rng, B)
        for name, op in _ops():
            if name == "/" and B.lo <= 0.0 <= B.hi:
                continue
            assert core.subset(op(a, b), op(A, B)), (name, a, b, A, B)


def test_containment_soundness():
    rng = random.Random(2)
    for _ in range(10_000):
        a, b = _random_pair(rng)
        x, y = point_in(rng, a), point_in(rng, b)
        for name, op in _ops():
            if name == "/" and b.lo <= 0.0 <= b.hi:
                continue
            r = op(a, b)
            # compare against the exact rational point result
            fx, fy = Fraction(x), Fraction(y)
            q = {"+": fx + fy, "-": fx - fy, "*": fx * fy, "/": fx / fy if y else None}[name]
            assert Fraction(r.lo) <= q <= Fraction(r.hi), (name, a, b, x, y)


def test_outward_rounding_contains_double_precision_result():
    rng = random.Random(3)
    with mpmath.workprec(106):
        for _ in range(1_000):
            a, b = _random_pair(rng)
            for name, op in _ops():
                if name == "/" and b.lo <= 0.0 <= b.hi:
                    continue
                r = op(a, b)
                ends = []
                for p in (a.lo, a.hi):
                    for q in (b.lo, b.hi):
                        P, Q = mpmath.mpf(p), mpmath.mpf(q)
                        ends.append({"+": P + Q, "-": P - Q, "*": P * Q, "/": P / Q}[name])
                if name in "+-":
                    ends = [ends[0], ends[3]] if name == "+" else [ends[1], ends[2]]
                assert mpmath.mpf(r.lo) <= min(ends) and max(ends) <= mpmath.mpf(r.hi), (name, a, b)
            n = rng.randint(0, 5)
            r = core.int_pow(a, n)
            pts = [mpmath.mpf(a.lo) ** n, mpmath.mpf(a.hi) ** n]
            if a.lo < 0.0 < a.hi:
                pts.append(mpmath.mpf(0) ** n)
            assert mpmath.mpf(r.lo) <= min(pts) and max(pts) <= mpmath.mpf(r.hi)


def test_int_pow_is_exact_range():
    rng = random.Random(4)
    for _ in range(2_000):
        a = interval(rng, span=4, bits=2)
        n = rng.randint(1, 6)
        # extremes of x^n sit at the endpoints or at 0
        cand = [a.lo, a.hi] + ([0.0] if a.lo <= 0.0 <= a.hi else [])
        vals = [Fraction(x) ** n for x in cand]
        r = core.int_pow(a, n)
        # small dyadic endpoints: the powers are representable, so no widening
        assert Fraction(r.lo) == min(vals) and Fraction(r.hi) == max(vals), (a, n)
        grid = [a.lo + (a.hi - a.lo) * k / 64 for k in range(65)]
        assert all(r.lo <= x ** n <= r.hi for x in grid)


def test_additive_cancellation():
    rng = random.Random(5)
    for _ in range(10_000):
        a, b, c = interval(rng), interval(rng), interval(rng)
        # a + c = b + c must force a = b; force equality half the time
        if rng.random() < 0.5:
            b = a
        if core.add(a, c) == core.add(b, c):
            assert a == b


def test_metric_axioms():
    rng = random.Random(6)
    for _ in range(10_000):
        a, b, c = interval(rng), interval(rng), interval(rng)
        if rng.random() < 0.1:
            b = a
        d = core.dist(a, b)
        assert d >= 0
        assert (d == 0) == (a == b)
        assert d == core.dist(b, a)
        # dyadic endpoints: all distances exact
        assert core.dist(a, c) <= d + core.dist(b, c)


def test_nested_interval_principle():
    rng = random.Random(7)
    for _ in range(1_000):
        X = interval(rng)
        seq = [X]
        for _ in range(99):
            seq.append(shrink(rng, seq[-1]) if rng.random() < 0.8 else seq[-1])
        cap = seq[0]
        for x in seq[1:]:
            cap = core.intersect(cap, x)
        assert cap is not EMPTY
        d = [core.dist(x, cap) for x in seq]
        assert all(p >= q for p, q in zip(d, d[1:]))


@given(st.integers(-1000, 1000), st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_interval_operators_match_functions(p, q, r):
    a = I(min(p, q), max(p, q))
    b = I(min(q, r), max(q, r))
    assert a + b == core.add(a, b)
    assert a - b == core.sub(a, b)
    assert a * b == core.mul(a, b)
    assert -a == core.sub(I(0, 0), a)
    assert a ** 2 == core.int_pow(a, 2)

