"""Verified interval numerics: classical and Kaucher interval arithmetic,
extended division, interval Newton, and formal-solution estimators for
interval linear systems."""

from .core import EMPTY, Interval, dist, hull, int_pow, intersect, make, parse_interval
from .errors import IntervalError
from .extended import WHOLE_LINE, Pair, Single, ZeroSemantics, ediv, interpret_signed_zero
from .kaucher import KInterval, alg_inverse, alg_sub, dual, kdist, kleq, kmul, kparse, meet, join, opp, pro

__version__ = "0.1.0"
