"""Interval linear systems: formal solutions and solution-set estimates.

All four estimators reduce to finding a *formal* solution of an interval
equation in Kaucher arithmetic, i.e. a vector that turns the equation into
an identity:

=================  ==========================  ==========================
estimate           equation solved formally    engine
=================  ==========================  ==========================
outer united       x = (I - A) x + b           fixed-point iteration
inner united       (dual A) x = b              Kaucher Gauss-Seidel
inner tolerable    A x = b                     Kaucher Gauss-Seidel
outer tolerable    x = (I - dual A) x + b      fixed-point iteration
=================  ==========================  ==========================

Outer boxes are certified by checking ``C x + d ⊆ x`` under outward
rounding (slightly inflating ``x`` if needed). Inner boxes are certified by
checking ``G x ⊆ b`` with ``G = A`` (tolerable) or ``G = dual A`` (united),
after nudging the candidate a few ulps inward.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse.csgraph import connected_components

from .. import _rounding as rnd
from .. import core
from ..core import EMPTY, Interval
from ..errors import (
    DimensionMismatch,
    Improper,
    IntervalError,
    NoConvergence,
    NotContracting,
    NotVerified,
    SingularMidpoint,
    TooManySingularSamples,
    ZeroInProDivisor,
)
from ..extended import ZeroSemantics, components, ediv
from ..kaucher import (
    KInterval,
    alg_inverse,
    alg_sub,
    dual,
    kadd,
    kdist,
    kint_pow,
    kleq,
    kmul,
    ksub,
)

KVector = tuple  # of KInterval
KMatrix = tuple  # of KVector rows

_ZERO = KInterval(0.0, 0.0)
_ONE = KInterval(1.0, 1.0)


@dataclass(frozen=True)
class SolverConfig:
    tol: float = 1e-12
    verify_tol: float = 1e-9
    max_iter: int = 10_000
    max_n: int = 64


DEFAULT_CONFIG = SolverConfig()


def _as_k(v) -> KInterval:
    if isinstance(v, KInterval):
        return v
    if isinstance(v, Interval):
        return KInterval(v.lo, v.hi)
    if isinstance(v, (int, float)):
        return KInterval(v, v)
    lo, hi = v
    return KInterval(lo, hi)


def kvector(entries) -> KVector:
    return tuple(_as_k(e) for e in entries)


def kmatrix(rows) -> KMatrix:
    m = tuple(kvector(r) for r in rows)
    if not m or not m[0]:
        raise DimensionMismatch("empty matrix")
    if any(len(r) != len(m[0]) for r in m):
        raise DimensionMismatch("ragged matrix")
    return m


def is_proper(v) -> bool:
    if isinstance(v, KInterval):
        return v.is_proper
    return all(is_proper(e) for e in v)


@dataclass(frozen=True)
class ILinearSystem:
    A: KMatrix
    b: KVector

    def __post_init__(self):
        object.__setattr__(self, "A", kmatrix(self.A))
        object.__setattr__(self, "b", kvector(self.b))
        if len(self.A) != len(self.b):
            raise DimensionMismatch(f"A has {len(self.A)} rows but b has {len(self.b)} entries")

    @property
    def n(self) -> int:
        return len(self.A[0])

    @property
    def is_square(self) -> bool:
        return len(self.A) == self.n

    @property
    def is_proper(self) -> bool:
        return is_proper(self.A) and is_proper(self.b)


@dataclass(frozen=True)
class EstimateReport:
    x: KVector
    verified: bool
    residual: float
    iterations: int
    rho_estimate: float
    steps: tuple = field(default=(), repr=False)

    @property
    def is_proper(self) -> bool:
        return is_proper(self.x)


# -- basic linear algebra ----------------------------------------------------

def identity(n: int) -> KMatrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def kdual_matrix(A: KMatrix) -> KMatrix:
    return tuple(tuple(dual(a) for a in row) for row in A)


def ksub_matrix(A: KMatrix, B: KMatrix) -> KMatrix:
    return tuple(tuple(ksub(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(A, B))


def kmatvec(A: KMatrix, x: KVector) -> KVector:
    if len(A[0]) != len(x):
        raise DimensionMismatch(f"matrix has {len(A[0])} columns, vector has {len(x)} entries")
    out = []
    for row in A:
        acc = _ZERO
        for a, xj in zip(row, x):
            acc = kadd(acc, kmul(a, xj))
        out.append(acc)
    return tuple(out)


def residual(A: KMatrix, x: KVector, b: KVector) -> KVector:
    if len(A) != len(b):
        raise DimensionMismatch("A and b disagree in row count")
    return tuple(alg_sub(ax, bi) for ax, bi in zip(kmatvec(A, x), b))


def vdist(x: KVector, y: KVector) -> float:
    return max(kdist(a, b) for a, b in zip(x, y))


def mag_matrix(A: KMatrix) -> np.ndarray:
    return np.array([[a.mag for a in row] for row in A], dtype=float)


def spectral_radius_nonneg(M, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Perron root of an entrywise nonnegative square matrix.

    The root is the largest one over the irreducible diagonal blocks
    (strongly connected components of the graph of ``M``). On each block,
    power iteration runs on ``B + I``, which is primitive, and the
    Collatz-Wielandt ratios ``(Bx)_i / x_i`` bracket the root; the upper
    ratio is returned, so the value errs on the high side.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {M.shape}")
    if (M < 0).any() or not np.isfinite(M).all():
        raise ValueError("matrix must be finite and entrywise nonnegative")
    _, labels = connected_components(M > 0, directed=True, connection="strong")
    rho = 0.0
    for c in np.unique(labels):
        idx = np.flatnonzero(labels == c)
        rho = max(rho, _perron_irreducible(M[np.ix_(idx, idx)], tol, max_iter))
    return rho


def _perron_irreducible(B, tol, max_iter):
    if B.shape[0] == 1:
        return float(B[0, 0])
    x = np.ones(B.shape[0])
    for _ in range(max_iter):
        y = B @ x
        ratios = y / x
        upper, lower = float(ratios.max()), float(ratios.min())
        # below a few ulps of the root the ratios only carry rounding noise
        if upper - lower <= max(tol, 8 * np.finfo(float).eps * upper):
            return upper
        x = y + x
        x /= x.max()
    raise NoConvergence(f"power iteration did not settle in {max_iter} steps")


# -- fixed-point engine ------------------------------------------------------

def _check_contracting(C: KMatrix) -> float:
    rho = spectral_radius_nonneg(mag_matrix(C))
    if rho >= 1.0 - 1e-10:
        raise NotContracting(f"spectral radius estimate {rho!r} is not below 1")
    return rho


def _affine(C, x, d):
    return tuple(kadd(cx, di) for cx, di in zip(kmatvec(C, x), d))


def _inflate(x: KVector, y: KVector, k: int) -> KVector:
    # hull with the image, then pad every endpoint by the same absolute
    # amount: coupling lets large components push small ones, so ulps of
    # each endpoint separately are not enough
    scale = max(max(abs(yi.lo), abs(yi.hi), abs(xi.lo), abs(xi.hi)) for xi, yi in zip(x, y))
    pad = (1 << (2 * k)) * math.ulp(scale) if scale > 0.0 else math.ulp(0.0)
    out = []
    for xi, yi in zip(x, y):
        lo = rnd.sub_rd(min(xi.lo, yi.lo), pad)
        hi = rnd.add_ru(max(xi.hi, yi.hi), pad)
        out.append(KInterval(lo, hi))
    return tuple(out)


def _certify_outer(C, d, x, attempts=12):
    """Find x' ⊇ x with C x' + d ⊆ x' (rounded outward), or None."""
    for k in range(attempts):
        y = _affine(C, x, d)
        if all(kleq(yi, xi) for yi, xi in zip(y, x)):
            return x
        x = _inflate(x, y, k)
    return None


def fixed_point_iterate(C, d, x0=None, tol: float = 1e-12, max_iter: int = 10_000,
                        verify_tol: float = 1e-9) -> EstimateReport:
    """Formal solution of ``x = C x + d`` by plain iteration.

    The map is a contraction in the endpoint metric when the spectral
    radius of ``mag(C)`` is below one; that is checked first.
    """
    C = kmatrix(C)
    d = kvector(d)
    n = len(d)
    if len(C) != n or len(C[0]) != n:
        raise DimensionMismatch("C must be n x n with n = len(d)")
    rho = _check_contracting(C)
    x = kvector(x0) if x0 is not None else d
    steps = []
    for it in range(1, max_iter + 1):
        x_new = _affine(C, x, d)
        step = vdist(x_new, x)
        steps.append(step)
        x = x_new
        if step < tol:
            break
    else:
        raise NoConvergence(f"no convergence in {max_iter} iterations",
                            EstimateReport(x, False, math.inf, max_iter, rho, tuple(steps)))
    certified = _certify_outer(C, d, x)
    if certified is not None:
        x = certified
    res = vdist(_affine(C, x, d), x)
    verified = certified is not None and res <= verify_tol
    return EstimateReport(x, verified, res, it, rho, tuple(steps))


# -- formal Gauss-Seidel -----------------------------------------------------

def formal_gauss_seidel(G, h, cfg: SolverConfig = DEFAULT_CONFIG) -> KVector:
    """Candidate formal solution of ``G x = h`` by coordinate sweeps.

    Each sweep solves row ``i`` for ``x_i`` with the group operations of
    Kaucher arithmetic: ``x_i = inv(G_ii) * (h_i ⊖ sum_{j != i} G_ij x_j)``.
    The result is not verified here.
    """
    return _gauss_seidel(G, h, cfg)[0]


def _gauss_seidel(G, h, cfg):
    # returns (x, sweeps); the final sweep that only confirms is not counted
    G = kmatrix(G)
    h = kvector(h)
    n = len(h)
    if len(G) != n or len(G[0]) != n:
        raise DimensionMismatch("G must be n x n with n = len(h)")
    if n > cfg.max_n:
        raise IntervalError(f"system size {n} exceeds configured bound {cfg.max_n}")
    inv_diag = [alg_inverse(G[i][i]) for i in range(n)]  # raises ZeroInProDivisor
    x = list(h)
    for sweep in range(1, cfg.max_iter + 1):
        biggest = 0.0
        try:
            for i in range(n):
                acc = _ZERO
                for j in range(n):
                    if j != i:
                        acc = kadd(acc, kmul(G[i][j], x[j]))
                xi = kmul(inv_diag[i], alg_sub(h[i], acc))
                biggest = max(biggest, kdist(xi, x[i]))
                x[i] = xi
        except IntervalError:
            # endpoints overflowed: the sweep is diverging
            break
        if biggest < cfg.tol:
            return tuple(x), max(1, sweep - 1)
    raise NoConvergence("Kaucher Gauss-Seidel did not converge", tuple(x))


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class Verification:
    ok: bool
    residual: float


def verify_linear(G, h, x, tol: float = 1e-9) -> Verification:
    G, h, x = kmatrix(G), kvector(h), kvector(x)
    lhs = kmatvec(G, x)
    if len(lhs) != len(h):
        raise DimensionMismatch("G x and h differ in length")
    r = vdist(lhs, h)
    return Verification(r <= tol, r)


def verify_quadratic(a, b, c, x, tol: float = 1e-9) -> Verification:
    """Check ``a x^2 + b x = c`` for an interval ``x``; ``x^2`` is a range power."""
    a, b, c, x = (_as_k(v) for v in (a, b, c, x))
    lhs = kadd(kmul(a, kint_pow(x, 2)), kmul(b, x))
    r = kdist(lhs, c)
    return Verification(r <= tol, r)


def verify_formal_solution(kind: str, data: dict, x, tol: float = 1e-9) -> Verification:
    if kind == "linear":
        return verify_linear(data["G"], data["h"], x, tol)
    if kind == "quadratic":
        return verify_quadratic(data["a"], data["b"], data["c"], x, tol)
    raise ValueError(f"unknown equation kind {kind!r}")


# -- estimators --------------------------------------------------------------

def _require_proper_square(sys: ILinearSystem):
    if not sys.is_square:
        raise DimensionMismatch("square system required")
    if not sys.is_proper:
        raise IntervalError("A and b must be proper")


def _outer(sys, C, cfg):
    rep = fixed_point_iterate(C, sys.b, None, cfg.tol, cfg.max_iter, cfg.verify_tol)
    if not rep.is_proper:
        raise Improper("formal solution is improper", rep)
    return rep


def outer_united(sys: ILinearSystem, cfg: SolverConfig = DEFAULT_CONFIG) -> EstimateReport:
    _require_proper_square(sys)
    C = ksub_matrix(identity(sys.n), sys.A)
    return _outer(sys, C, cfg)


def outer_tolerable(sys: ILinearSystem, cfg: SolverConfig = DEFAULT_CONFIG) -> EstimateReport:
    _require_proper_square(sys)
    C = ksub_matrix(identity(sys.n), kdual_matrix(sys.A))
    return _outer(sys, C, cfg)


def _shrink(x: KVector, k: int) -> KVector:
    out = []
    for xi in x:
        lo, hi = xi.lo, xi.hi
        for _ in range(k):
            lo = math.nextafter(lo, math.inf)
            hi = math.nextafter(hi, -math.inf)
        out.append(KInterval(lo, hi))
    return tuple(out)


def _certify_inner(G, h, x):
    """Nudge a proper candidate inward until G x ⊆ h holds under rounding."""
    k = 0
    while k <= 1 << 12:
        xs = _shrink(x, k)
        if not is_proper(xs):
            return None
        if all(kleq(gx, hi) for gx, hi in zip(kmatvec(G, xs), h)):
            return xs
        k = 2 * k if k else 1
    return None


def _inner(sys, G, cfg):
    for i in range(sys.n):
        a = sys.A[i][i]
        if min(a.lo, a.hi) <= 0.0 <= max(a.lo, a.hi):
            raise ZeroInProDivisor(f"diagonal entry {i} contains zero: {a}")
    # informative only: the sweeps do not require a contraction
    rho = spectral_radius_nonneg(mag_matrix(ksub_matrix(identity(sys.n), G)))
    try:
        x, sweeps = _gauss_seidel(G, sys.b, cfg)
    except NoConvergence as exc:
        raise NoConvergence(str(exc), EstimateReport(exc.report, False, math.inf, cfg.max_iter, rho))
    check = verify_linear(G, sys.b, x, cfg.verify_tol)
    rep = EstimateReport(x, False, check.residual, sweeps, rho)
    if not is_proper(x):
        raise Improper("formal solution is improper; no inner box", rep)
    if not check.ok:
        raise NotVerified(f"residual {check.residual!r} above tolerance", rep)
    inner = _certify_inner(G, sys.b, x)
    if inner is None:
        raise NotVerified("inclusion certificate failed", rep)
    final = verify_linear(G, sys.b, inner, cfg.verify_tol)
    if not final.ok:
        raise NotVerified(f"residual {final.residual!r} above tolerance after certification", rep)
    return EstimateReport(inner, True, final.residual, sweeps, rho)


def inner_united(sys: ILinearSystem, cfg: SolverConfig = DEFAULT_CONFIG) -> EstimateReport:
    _require_proper_square(sys)
    return _inner(sys, kdual_matrix(sys.A), cfg)


def inner_tolerable(sys: ILinearSystem, cfg: SolverConfig = DEFAULT_CONFIG) -> EstimateReport:
    _require_proper_square(sys)
    return _inner(sys, sys.A, cfg)


ESTIMATORS = {
    "outer-united": outer_united,
    "inner-united": inner_united,
    "inner-tolerable": inner_tolerable,
    "outer-tolerable": outer_tolerable,
}


# -- point-level oracles -----------------------------------------------------

def _row_product(row, x) -> Interval:
    acc = Interval(0.0, 0.0)
    for a, xj in zip(row, x):
        acc = core.add(acc, core.mul(a.to_interval(), Interval(xj, xj)))
    return acc


def member(sys: ILinearSystem, x: Sequence[float], which: str) -> bool:
    """Is the point ``x`` in the united or tolerable solution set?

    Evaluated with outward-rounded interval arithmetic, so points within
    rounding distance of the boundary count as members.
    """
    if not sys.is_proper:
        raise IntervalError("membership needs a proper system")
    if len(x) != sys.n:
        raise DimensionMismatch(f"point has {len(x)} coordinates, system has {sys.n} unknowns")
    for row, bi in zip(sys.A, sys.b):
        ax = _row_product(row, x)
        bi = bi.to_interval()
        if which == "united":
            r = core.sub(ax, bi)
            if not r.lo <= 0.0 <= r.hi:
                return False
        elif which == "tolerable":
            if not core.subset(ax, bi):
                return False
        else:
            raise ValueError(f"unknown solution set {which!r}")
    return True


def _draw(rng: np.random.Generator, lo: np.ndarray, hi: np.ndarray, m: int) -> np.ndarray:
    """``m`` draws of an array of intervals: each entry is an endpoint with
    probability 1/2 (either end equally likely), uniform otherwise."""
    shape = (m,) + lo.shape
    at_end = rng.random(shape) < 0.5
    upper = rng.random(shape) < 0.5
    u = rng.random(shape)
    inside = np.minimum(lo + u * (hi - lo), hi)
    return np.where(at_end, np.where(upper, hi, lo), inside)


def sample_united(sys: ILinearSystem, n_samples: int, seed: int = 0,
                  max_retries: int = 1000) -> list[tuple[float, ...]]:
    """Monte-Carlo points of the united solution set.

    Point systems are drawn in batches from a generator seeded with
    ``seed``, so the output depends on the seed alone. Draws whose point
    system is singular, or whose floating-point solution fails
    :func:`member`, are redrawn; more than ``max_retries`` redraws in total
    is an error.
    """
    if not sys.is_square or not sys.is_proper:
        raise IntervalError("sampling needs a proper square system")
    n = sys.n
    if n > 6:
        raise IntervalError("sampling is limited to n <= 6")
    rng = np.random.default_rng(seed)
    A_lo = np.array([[a.lo for a in row] for row in sys.A])
    A_hi = np.array([[a.hi for a in row] for row in sys.A])
    b_lo = np.array([bi.lo for bi in sys.b])
    b_hi = np.array([bi.hi for bi in sys.b])
    out = []
    retries = 0
    while len(out) < n_samples:
        m = n_samples - len(out)
        A = _draw(rng, A_lo, A_hi, m)
        b = _draw(rng, b_lo, b_hi, m)
        with np.errstate(all="ignore"):
            good = np.linalg.cond(A) < 1e12
        retries += int(m - good.sum())
        A, b = A[good], b[good][..., None]
        if len(A):
            x = np.linalg.solve(A, b)
            # one refinement step tightens boundary samples
            x = (x + np.linalg.solve(A, b - A @ x))[..., 0]
            for row in x:
                pt = tuple(float(v) for v in row)
                if member(sys, pt, "united"):
                    out.append(pt)
                else:
                    retries += 1
        if retries > max_retries:
            raise TooManySingularSamples(f"{retries} rejected draws")
    return out


def precondition_midpoint_inverse(sys: ILinearSystem) -> ILinearSystem:
    """Return ``(R A, R b)`` with ``R`` the inverse of the midpoint matrix."""
    if not sys.is_square or not sys.is_proper:
        raise IntervalError("preconditioning needs a proper square system")
    mid = np.array([[a.to_interval().mid for a in row] for row in sys.A])
    try:
        if np.linalg.cond(mid) > 1e14:
            raise np.linalg.LinAlgError
        R = np.linalg.inv(mid)
    except np.linalg.LinAlgError:
        raise SingularMidpoint("midpoint matrix is singular") from None
    n = sys.n

    def combine(Rrow, column):
        acc = Interval(0.0, 0.0)
        for r, c in zip(Rrow, column):
            acc = core.add(acc, core.mul(Interval(float(r), float(r)), c.to_interval()))
        return KInterval(acc.lo, acc.hi)

    cols = [[sys.A[k][j] for k in range(n)] for j in range(n)]
    RA = tuple(tuple(combine(R[i], cols[j]) for j in range(n)) for i in range(n))
    Rb = tuple(combine(R[i], sys.b) for i in range(n))
    return ILinearSystem(RA, Rb)


def gauss_seidel_step(sys: ILinearSystem, X: Sequence) -> list:
    """One interval Gauss-Seidel sweep, intersecting with the box ``X``.

    A coordinate that becomes empty empties the whole box (no united
    solution lies in ``X``). Division uses the set-based reading of the
    diagonal unless the numerator also contains zero, in which case no
    contraction is possible for that coordinate.
    """
    if not sys.is_square or not sys.is_proper:
        raise IntervalError("Gauss-Seidel needs a proper square system")
    n = sys.n
    if len(X) != n:
        raise DimensionMismatch(f"box has {len(X)} coordinates, system has {n}")
    X = list(X)
    if any(xi is EMPTY for xi in X):
        return [EMPTY] * n
    for i in range(n):
        num = sys.b[i].to_interval()
        for j in range(n):
            if j != i:
                num = core.sub(num, core.mul(sys.A[i][j].to_interval(), X[j]))
        aii = sys.A[i][i].to_interval()
        if aii.lo <= 0.0 <= aii.hi and num.lo <= 0.0 <= num.hi:
            continue
        q = ediv(num, aii, ZeroSemantics.SET_BASED)
        new = EMPTY
        for comp in components(q):
            new = core.hull(new, core.intersect(comp, X[i]))
        if new is EMPTY:
            return [EMPTY] * n
        X[i] = new
    return X
