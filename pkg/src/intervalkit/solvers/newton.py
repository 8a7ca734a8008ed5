"""Interval Newton root enclosure with extended division.

Boxes are processed from a work list. For a box ``X`` with centre ``c``
the Newton image is ``N = c - f(c) / f'(X)``; the division may split into
two pieces when ``f'(X)`` contains zero, in which case both pieces become
new boxes. A box is certified when ``N`` falls back inside it.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .. import core
from ..core import EMPTY, Interval
from ..errors import BudgetExceeded, IntervalError, ZeroInDivisor
from ..expr import Expr, eval_ad, eval_interval, parse
from ..extended import WHOLE_LINE, ZeroSemantics, components, ediv


class RootStatus(enum.Enum):
    UNIQUE = "UniqueZeroProven"
    EXISTS = "ZeroExistsProven"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class RootBox:
    """A result box. ``witness`` is the box on which the certificate was
    obtained (``box`` lies inside it); ``None`` when undecided."""

    box: Interval
    status: RootStatus
    witness: Optional[Interval] = None


@dataclass(frozen=True)
class NewtonResult:
    boxes: tuple
    iterations: int


@dataclass(frozen=True)
class NewtonConfig:
    tol_width: float = 1e-12
    max_iter: int = 10_000
    max_boxes: int = 1_000


def _evaluate_at(f: Expr, X: Interval):
    """f over a point of X: the midpoint, else the 1/3 point, else None."""
    c = X.mid
    third = X.lo + (X.hi - X.lo) / 3.0
    for x in (c, third):
        try:
            return x, eval_interval(f, Interval(x, x))
        except ZeroInDivisor:
            continue
    return None


def newton_operator(f: Expr, X: Interval):
    """Return ``(c, f(c), f'(X), N)``; ``N`` is a list of closed pieces.

    ``None`` means nothing could be computed on this box (a pole of ``f``
    inside it).
    """
    at = _evaluate_at(f, X)
    if at is None:
        return None
    c, fc = at
    try:
        d = eval_ad(f, X).deriv
    except ZeroInDivisor:
        return None
    if fc.lo <= 0.0 <= fc.hi and d.lo <= 0.0 <= d.hi:
        # dropping the divisor value 0 is only sound when f(c) != 0
        q = WHOLE_LINE
    else:
        q = ediv(fc, d, ZeroSemantics.SET_BASED)
    if q is EMPTY:
        # f' vanishes on X and f(c) != 0: no constraint, keep the box
        q = WHOLE_LINE
    pieces = [core.sub(Interval(c, c), comp) for comp in components(q)]
    return c, fc, d, pieces


def _bisect(X: Interval):
    m = X.mid
    if m <= X.lo or m >= X.hi:
        return None
    return Interval(X.lo, m), Interval(m, X.hi)


def newton_solve(f, X0: Interval, cfg: NewtonConfig = NewtonConfig()) -> NewtonResult:
    """Enclose every zero of ``f`` in ``X0``.

    Returned boxes are sorted; each carries the strongest certificate
    obtained for it. A box that came out of ``X ∩ N(X)`` after a proof
    keeps the proof, since every zero of ``X`` lies in ``N(X)``.
    """
    if isinstance(f, str):
        f = parse(f)
    if not X0.is_finite:
        raise IntervalError("Newton needs a finite starting box")
    undecided = (RootStatus.UNDECIDED, None)
    work = deque([(X0, undecided)])
    done = []
    iterations = 0
    while work:
        if iterations >= cfg.max_iter:
            raise BudgetExceeded(f"more than {cfg.max_iter} Newton steps")
        if len(work) + len(done) > cfg.max_boxes:
            raise BudgetExceeded(f"more than {cfg.max_boxes} boxes")
        X, cert = work.popleft()
        status = cert[0]
        iterations += 1

        try:
            rng = eval_interval(f, X)
            if not rng.lo <= 0.0 <= rng.hi:
                continue
        except ZeroInDivisor:
            pass

        step = newton_operator(f, X)
        if step is None:
            halves = _bisect(X) if X.width >= cfg.tol_width else None
            if halves is None:
                done.append(RootBox(X, RootStatus.UNDECIDED))
            else:
                work.extend((h, undecided) for h in halves)
            continue
        _, _, d, pieces = step

        if len(pieces) == 1:
            N = pieces[0]
            if core.subset(N, X):
                if core.interior(N, X) and not d.lo <= 0.0 <= d.hi:
                    if status is not RootStatus.UNIQUE:
                        cert = (RootStatus.UNIQUE, X)
                elif status is RootStatus.UNDECIDED:
                    cert = (RootStatus.EXISTS, X)
                status = cert[0]

        kept = [core.intersect(p, X) for p in pieces]
        kept = [k for k in kept if k is not EMPTY]
        if not kept:
            continue
        if len(kept) == 2:
            work.extend((k, undecided) for k in kept)
            continue

        Y = kept[0]
        if Y.width < cfg.tol_width:
            done.append(RootBox(Y, *cert))
            continue
        if Y.width > 0.9 * X.width:
            if status is not RootStatus.UNDECIDED:
                # proven and no longer shrinking: rounding floor reached
                done.append(RootBox(Y, *cert))
                continue
            halves = _bisect(Y)
            if halves is None:
                done.append(RootBox(Y, *cert))
            else:
                work.extend((h, undecided) for h in halves)
            continue
        work.append((Y, cert))

    done.sort(key=lambda r: (r.box.lo, r.box.hi))
    return NewtonResult(tuple(done), iterations)


def certificate_holds(f, root: RootBox) -> bool:
    """Recompute the certificate of ``root`` on its witness box."""
    if isinstance(f, str):
        f = parse(f)
    if root.status is RootStatus.UNDECIDED:
        return True
    W = root.witness
    if W is None or not core.subset(root.box, W):
        return False
    step = newton_operator(f, W)
    if step is None or len(step[3]) != 1:
        return False
    N, d = step[3][0], step[2]
    if root.status is RootStatus.UNIQUE:
        return core.interior(N, W) and not d.lo <= 0.0 <= d.hi
    return core.subset(N, W)
