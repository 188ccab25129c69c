"""Uniform access to functions in exact or floating point mode.

Exact mode works on :class:`PiecewisePoly` directly. Float mode wraps
expressions (and any piecewise polynomials they are mixed with) in
:class:`FloatFn`, whose integrals are computed with mpmath.
"""

from __future__ import annotations

from fractions import Fraction

import mpmath

from .._rational import Q
from .. import expr as _expr
from ..exceptions import NotPolynomial, DomainError, PreconditionError
from ..funcmodel import PiecewisePoly, Poly, RangeBound, Rigor, derivative_range, range_enclosure
from ..funcmodel.piecewise import Interval, as_interval

EXACT = "Exact"
FLOAT = "Float"

_DPS = 30


def _mpf(x):
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return mpmath.mpf(x)
    return mpmath.mpf(x)


class FloatFn:
    """A real function on [a, b] known through an mpmath evaluator."""

    def __init__(self, mp, interval: Interval, breaks=(), expr=None, pw=None):
        self._mp = mp
        self.interval = interval
        self.breaks = tuple(sorted({Q(t) for t in breaks if interval.a < t < interval.b}))
        self.expr = expr
        self.pw = pw

    @classmethod
    def from_expr(cls, e, interval):
        e = _expr.as_expr(e)
        return cls(lambda t: _expr.evaluate_mp(e, t), interval, expr=e)

    @classmethod
    def from_pw(cls, f: PiecewisePoly):
        pieces = [[_mpf(c) for c in p.c] for p in f.pieces]
        breaks = f.breaks

        def mp(t):
            i = 0
            while i < len(pieces) - 1 and t > _mpf(breaks[i + 1]):
                i += 1
            return mpmath.polyval(pieces[i][::-1], t)

        return cls(mp, f.interval, breaks=f.breaks, pw=f)

    @property
    def a(self):
        return self.interval.a

    @property
    def b(self):
        return self.interval.b

    def mp(self, t):
        return self._mp(t)

    def value(self, x, side: str = "left") -> float:
        if self.pw is not None:
            x = Q(x)
            v = self.pw.limit_right(x) if side == "right" else self.pw.limit_left(x)
            return float(v)
        with mpmath.workdps(_DPS):
            return float(self._mp(_mpf(x)))

    def derivative(self, k: int = 1) -> "FloatFn":
        if k == 0:
            return self
        if self.pw is not None:
            return FloatFn.from_pw(self.pw.derivative(k))
        if self.expr is not None:
            return FloatFn.from_expr(_expr.derivative(self.expr, k), self.interval)
        raise PreconditionError("derivative of a combined function is not available")

    def derivative_value(self, x, k: int, side: str = "left") -> float:
        return self.derivative(k).value(x, side)

    def range(self, k: int = 0) -> RangeBound:
        if self.pw is not None:
            r = derivative_range(self.pw, k)
            return RangeBound(_down(r.lo), _up(r.hi), Rigor.EXACT)
        if self.expr is not None:
            return range_enclosure(self.expr, k, self.interval)
        raise PreconditionError("range of a combined function is not available")

    def _combine(self, other, op):
        if isinstance(other, FloatFn):
            f, g = self._mp, other._mp
            return FloatFn(lambda t: op(f(t), g(t)), self.interval, self.breaks + other.breaks)
        c = _mpf(other)
        f = self._mp
        return FloatFn(lambda t: op(f(t), c), self.interval, self.breaks)

    def __mul__(self, other):
        return self._combine(other, lambda p, q: p * q)

    __rmul__ = __mul__

    def __add__(self, other):
        return self._combine(other, lambda p, q: p + q)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda p, q: p - q)

    def __rsub__(self, other):
        return self._combine(other, lambda p, q: q - p)

    def __neg__(self):
        f = self._mp
        return FloatFn(lambda t: -f(t), self.interval, self.breaks)

    def _segments(self):
        pts = [self.a, *self.breaks, self.b]
        return list(zip(pts, pts[1:]))

    def integrate(self) -> float:
        with mpmath.workdps(_DPS):
            total = mpmath.mpf(0)
            for s, t in self._segments():
                total += mpmath.quad(self._mp, [_mpf(s), _mpf(t)])
            return float(total)

    def abs_integral(self) -> float:
        with mpmath.workdps(_DPS):
            total = mpmath.mpf(0)
            for s, t in self._segments():
                pts = self._sign_changes(_mpf(s), _mpf(t))
                for u, v in zip(pts, pts[1:]):
                    total += abs(mpmath.quad(self._mp, [u, v]))
            return float(total)

    def _sign_changes(self, s, t, samples: int = 128):
        f = self._mp
        xs = [s + (t - s) * i / samples for i in range(samples + 1)]
        vals = [f(x) for x in xs]
        pts = [s]
        for i in range(samples):
            if vals[i] == 0 and 0 < i:
                pts.append(xs[i])
            elif vals[i] * vals[i + 1] < 0:
                lo, hi = xs[i], xs[i + 1]
                flo = vals[i]
                for _ in range(200):
                    mid = (lo + hi) / 2
                    fm = f(mid)
                    if fm == 0 or hi - lo < mpmath.mpf(10) ** (-_DPS + 2):
                        break
                    if (fm > 0) == (flo > 0):
                        lo, flo = mid, fm
                    else:
                        hi = mid
                pts.append((lo + hi) / 2)
        pts.append(t)
        return pts

    def mean(self) -> float:
        return self.integrate() / float(self.b - self.a)


def _down(v):
    from ..interval import round_down

    return round_down(Q(v))


def _up(v):
    from ..interval import round_up

    return round_up(Q(v))


# lifting -------------------------------------------------------------------


def try_exact(f, interval=None):
    """The exact piecewise form of ``f``, or None when it has none."""
    if f is None:
        return None
    if isinstance(f, PiecewisePoly):
        return f if interval is None else f.restrict(interval) if (f.a, f.b) != (interval.a, interval.b) else f
    if isinstance(f, Poly):
        return PiecewisePoly.single(f, interval)
    if isinstance(f, (int, Fraction)):
        return PiecewisePoly.constant(f, interval)
    if isinstance(f, (str, _expr.Expr)):
        e = _expr.as_expr(f)
        try:
            return _expr.lower_to_poly(e, interval)
        except (NotPolynomial, DomainError):
            return None
    return None


def to_float(f, interval):
    if isinstance(f, FloatFn):
        return f
    if isinstance(f, PiecewisePoly):
        return FloatFn.from_pw(f)
    if isinstance(f, Poly):
        return FloatFn.from_pw(PiecewisePoly.single(f, interval))
    if isinstance(f, (int, float, Fraction)):
        return FloatFn.from_pw(PiecewisePoly.constant(Q(f), interval))
    if isinstance(f, (str, _expr.Expr)):
        return FloatFn.from_expr(f, interval)
    raise TypeError(f"unsupported function type {type(f).__name__}")


def resolve_interval(interval, *fns) -> Interval:
    if interval is not None:
        return as_interval(interval)
    for f in fns:
        if isinstance(f, PiecewisePoly):
            return f.interval
    raise PreconditionError("an interval is required when no piecewise function fixes one")


def lift(interval, *fns):
    """Return ``(mode, interval, lifted...)``; exact only if every function is."""
    iv = resolve_interval(interval, *fns)
    exact = [try_exact(f, iv) if f is not None else None for f in fns]
    if all(e is not None for e, f in zip(exact, fns) if f is not None):
        return (EXACT, iv, *exact)
    return (FLOAT, iv, *[to_float(f, iv) if f is not None else None for f in fns])


def frange(F, k: int = 0) -> RangeBound:
    if isinstance(F, PiecewisePoly):
        return derivative_range(F, k)
    return F.range(k)


def coerce_range(r, mode) -> RangeBound | None:
    """Accept RangeBound, (lo, hi) pairs or ``"lo,hi"`` strings."""
    if r is None:
        return None
    if isinstance(r, RangeBound):
        if mode == EXACT and not isinstance(r.lo, (int, Fraction)):
            return RangeBound(Q(r.lo), Q(r.hi), r.rigor)
        return r
    if isinstance(r, str):
        r = r.split(",")
    lo, hi = r
    from .._rational import to_rational

    return RangeBound(to_rational(lo), to_rational(hi), Rigor.EXACT)


def check_range(F, k: int, r: RangeBound, what: str):
    """Reject a supplied range that misses a value of the k-th derivative at
    a cell endpoint (exact mode only; a cheap sanity check)."""
    if not isinstance(F, PiecewisePoly):
        return
    for s, t, p in F.cells():
        d = p.deriv(k)
        for v in (d(s), d(t)):
            if not r.lo <= v <= r.hi:
                raise PreconditionError(f"supplied range [{r.lo}, {r.hi}] does not bound {what} (value {v})")


def require_smooth(F, order: int, what: str = "f"):
    """Exact mode: derivatives 0..order must be continuous."""
    if isinstance(F, PiecewisePoly) and order >= 0 and F.continuity_order(order) < order:
        raise PreconditionError(f"{what} needs continuous derivatives up to order {order}")


def value(F, x, side="left"):
    if isinstance(F, PiecewisePoly):
        return F.limit_right(x) if side == "right" else F.limit_left(x)
    return F.value(x, side)


def deriv_value(F, x, k, side="left"):
    if isinstance(F, PiecewisePoly):
        return F.derivative_value(x, k, side)
    return F.derivative_value(x, k, side)


def isclose_zero(v, scale):
    return abs(v) <= 1e-12 * max(scale, 1e-300) or v == 0


__all__ = ["EXACT", "FLOAT", "FloatFn", "lift", "frange", "coerce_range"]
