"""Certified bounds on the range of a function or one of its derivatives."""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .._rational import Q
from .. import expr as _expr
from .. import interval as ia
from ..exceptions import EmptyIntersection, PreconditionError
from .piecewise import Interval, PiecewisePoly, as_interval
from .poly import extreme_values

Number = Union[Fraction, float]


class Rigor(str, enum.Enum):
    EXACT = "Exact"
    INTERVAL = "IntervalEnclosure"
    SAMPLED = "Sampled"

    @property
    def rank(self) -> int:
        return {"Exact": 2, "IntervalEnclosure": 1, "Sampled": 0}[self.value]

    @classmethod
    def weakest(cls, items) -> "Rigor":
        items = list(items)
        if not items:
            return cls.EXACT
        return min(items, key=lambda r: r.rank)


@dataclass(frozen=True)
class RangeBound:
    """Bounds ``lo <= value <= hi``. Exact rigor carries rationals."""

    lo: Number
    hi: Number
    rigor: Rigor = Rigor.EXACT

    def __post_init__(self):
        if self.lo > self.hi:
            raise PreconditionError(f"range needs lo <= hi, got [{self.lo}, {self.hi}]")
        object.__setattr__(self, "rigor", Rigor(self.rigor))

    @classmethod
    def of(cls, lo, hi, rigor=Rigor.EXACT) -> "RangeBound":
        if Rigor(rigor) is Rigor.EXACT:
            return cls(Q(lo), Q(hi), rigor)
        return cls(lo, hi, rigor)

    @property
    def width(self):
        return self.hi - self.lo

    @property
    def center(self):
        return (self.lo + self.hi) / 2

    @property
    def half_width(self):
        return (self.hi - self.lo) / 2

    @property
    def sup_abs(self):
        return max(abs(self.lo), abs(self.hi))

    @property
    def is_exact(self) -> bool:
        return self.rigor is Rigor.EXACT

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def hull(self, other: "RangeBound") -> "RangeBound":
        return RangeBound(min(self.lo, other.lo), max(self.hi, other.hi), Rigor.weakest([self.rigor, other.rigor]))


def derivative_range(f: PiecewisePoly, k: int, interval=None) -> RangeBound:
    """Bounds on the k-th derivative of ``f`` over ``interval``.

    Each piece is treated on its closed cell with one-sided derivatives, so
    values at breakpoints never mix pieces. Extrema come from cell endpoints
    and the real roots of the (k+1)-th derivative, isolated exactly.
    """
    if k < 0:
        raise PreconditionError("derivative order must be non-negative")
    iv = f.interval if interval is None else as_interval(interval)
    if not iv.within(f.interval):
        raise EmptyIntersection(f"{iv} is not inside {f.interval}")
    lo = hi = None
    for s, t, p in f.cells():
        s, t = max(s, iv.a), min(t, iv.b)
        if s >= t:
            continue
        plo, phi = extreme_values(p.deriv(k), s, t)
        lo = plo if lo is None else min(lo, plo)
        hi = phi if hi is None else max(hi, phi)
    return RangeBound(lo, hi, Rigor.EXACT)


def sup_norm(f: PiecewisePoly, k: int = 0, interval=None) -> Fraction:
    return derivative_range(f, k, interval).sup_abs


def range_enclosure(e, k: int, interval, *, max_depth: int = 20, rel_change: float = 1e-3, max_cells: int = 4096) -> RangeBound:
    """Interval-arithmetic enclosure of the k-th derivative of an expression.

    The domain is bisected adaptively (only cells that can still move the
    outer bounds are split) until the hull width changes by less than
    ``rel_change`` relative between levels, or ``max_depth`` levels.
    """
    e = _expr.as_expr(e)
    d = _expr.derivative(e, k)
    iv = as_interval(interval)
    lo_f, hi_f = ia.round_down(iv.a), ia.round_up(iv.b)

    def enclose(a, b):
        return _expr.evaluate_interval(d, ia.FInterval(a, b))

    def point_value(x):
        try:
            return _expr.evaluate_interval(d, ia.FInterval(x))
        except Exception:
            return None

    cells = [(lo_f, hi_f, enclose(lo_f, hi_f))]
    prev_width = None
    for _ in range(max_depth):
        hull = ia.FInterval.hull(*(c[2] for c in cells))
        width = hull.width
        if prev_width is not None and math.isfinite(width):
            if width == 0 or abs(prev_width - width) <= rel_change * max(abs(width), 1e-300):
                break
        prev_width = width
        # values certainly attained (inner bounds) from cell midpoints
        inner_hi, inner_lo = -math.inf, math.inf
        for a, b, _enc in cells:
            pv = point_value(a + (b - a) / 2)
            if pv is not None:
                inner_hi = max(inner_hi, pv.lo)
                inner_lo = min(inner_lo, pv.hi)
        nxt = []
        for a, b, enc in cells:
            undecided = enc.hi > inner_hi or enc.lo < inner_lo
            m = a + (b - a) / 2
            if undecided and a < m < b and len(cells) + len(nxt) < max_cells:
                nxt.append((a, m, enclose(a, m)))
                nxt.append((m, b, enclose(m, b)))
            else:
                nxt.append((a, b, enc))
        cells = nxt
    hull = ia.FInterval.hull(*(c[2] for c in cells))
    return RangeBound(hull.lo, hull.hi, Rigor.INTERVAL)


def sampled_range(e, k: int, interval, samples: int = 10_000) -> RangeBound:
    """Range of the k-th derivative observed on a uniform grid (not rigorous)."""
    d = _expr.derivative(_expr.as_expr(e), k)
    iv = as_interval(interval)
    a, b = float(iv.a), float(iv.b)
    vals = [_expr.evaluate(d, a + (b - a) * i / (samples - 1)) for i in range(samples)]
    return RangeBound(min(vals), max(vals), Rigor.SAMPLED)
