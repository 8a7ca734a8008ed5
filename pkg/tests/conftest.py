"""Shared random generators for the property suites.

Endpoints are dyadic rationals (small multiples of a power of two) so that
sums, differences and most products are exact in double precision; the
algebraic laws can then be checked with ``==`` instead of a tolerance.
"""

import random
import sys

import pytest

from intervalkit.core import Interval
from intervalkit.kaucher import KInterval
from intervalkit.solvers import ILinearSystem, spectral_radius_nonneg
from intervalkit.solvers.linear import identity, ksub_matrix, mag_matrix


def dyadic(rng: random.Random, span: int = 64, bits: int = 4) -> float:
    return rng.randint(-span << bits, span << bits) / (1 << bits)


def interval(rng: random.Random, **kw) -> Interval:
    a, b = dyadic(rng, **kw), dyadic(rng, **kw)
    return Interval(min(a, b), max(a, b))


def kinterval(rng: random.Random, **kw) -> KInterval:
    return KInterval(dyadic(rng, **kw), dyadic(rng, **kw))


def zero_free(rng: random.Random, **kw) -> KInterval:
    """Kaucher interval whose proper projection excludes zero."""
    while True:
        k = kinterval(rng, **kw)
        if not min(k.lo, k.hi) <= 0.0 <= max(k.lo, k.hi):
            return k


def shrink(rng: random.Random, x: Interval) -> Interval:
    """A random sub-interval of a finite interval."""
    p, q = rng.uniform(x.lo, x.hi), rng.uniform(x.lo, x.hi)
    return Interval(min(p, q), max(p, q))


def point_in(rng: random.Random, x: Interval) -> float:
    r = rng.random()
    if r < 0.1:
        return x.lo
    if r < 0.2:
        return x.hi
    return min(max(rng.uniform(x.lo, x.hi), x.lo), x.hi)


@pytest.fixture
def rng():
    return random.Random(20241016)


def contracting_system(rng: random.Random, n: int, rho_max: float = 0.9):
    """Random proper system with rho(mag(I - A)) < rho_max.

    Diagonal entries sit around 1, off-diagonal ones around 0, so the
    fixed-point forms used by the outer estimators contract.
    """
    while True:
        A = []
        for i in range(n):
            row = []
            for j in range(n):
                c = rng.uniform(0.7, 1.3) if i == j else rng.uniform(-0.4, 0.4) / n
                r = rng.uniform(0.0, 0.2) / n
                row.append([c - r, c + r])
            A.append(row)
        b = []
        for _ in range(n):
            c, r = rng.uniform(-3, 3), rng.uniform(0.0, 1.5)
            b.append([c - r, c + r])
        sys = ILinearSystem(A, b)
        rho = spectral_radius_nonneg(mag_matrix(ksub_matrix(identity(n), sys.A)))
        if rho < rho_max:
            return sys


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS:
            terminalreporter.write_line(line)
