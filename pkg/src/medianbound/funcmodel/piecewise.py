"""Exact piecewise polynomials on a closed rational interval."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .._rational import Q, to_rational
from ..exceptions import EmptyIntersection, PreconditionError
from . import poly as _poly
from .poly import Poly


@dataclass(frozen=True)
class Interval:
    a: Fraction
    b: Fraction

    def __init__(self, a, b):
        a, b = to_rational(a), to_rational(b)
        if not a < b:
            raise PreconditionError(f"interval needs a < b, got [{a}, {b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def width(self) -> Fraction:
        return self.b - self.a

    @property
    def mid(self) -> Fraction:
        return (self.a + self.b) / 2

    def __contains__(self, x) -> bool:
        return self.a <= x <= self.b

    def within(self, other: "Interval") -> bool:
        return other.a <= self.a and self.b <= other.b

    def __iter__(self):
        return iter((self.a, self.b))

    def __str__(self):
        return f"[{self.a}, {self.b}]"


def as_interval(value) -> Interval:
    if isinstance(value, Interval):
        return value
    a, b = value
    return Interval(a, b)


class PiecewisePoly:
    """Polynomial pieces on ``t0 < t1 < ... < tK``; piece ``i`` lives on
    ``[t_i, t_{i+1}]``. No continuity is assumed. Point values at an interior
    breakpoint come from the piece on its left, so a step written as
    ``-1 on [a, m], 1 on (m, b]`` evaluates to -1 at ``m``."""

    __slots__ = ("breaks", "pieces")

    def __init__(self, breakpoints: Sequence, pieces: Sequence):
        breaks = tuple(to_rational(t) for t in breakpoints)
        pieces = tuple(p if isinstance(p, Poly) else Poly(p) for p in pieces)
        if len(breaks) < 2:
            raise PreconditionError("need at least two breakpoints")
        if len(pieces) != len(breaks) - 1:
            raise PreconditionError("need exactly one piece per breakpoint gap")
        if any(s >= t for s, t in zip(breaks, breaks[1:])):
            raise PreconditionError("breakpoints must be strictly increasing")
        self.breaks = breaks
        self.pieces = pieces

    @classmethod
    def single(cls, p, interval) -> "PiecewisePoly":
        iv = as_interval(interval)
        return cls((iv.a, iv.b), (p if isinstance(p, Poly) else Poly(p),))

    @classmethod
    def constant(cls, value, interval) -> "PiecewisePoly":
        return cls.single(Poly.const(value), interval)

    @classmethod
    def identity(cls, interval) -> "PiecewisePoly":
        return cls.single(Poly.x(), interval)

    @classmethod
    def step(cls, interval, at, left, right) -> "PiecewisePoly":
        iv = as_interval(interval)
        return cls((iv.a, Q(at), iv.b), (Poly.const(left), Poly.const(right)))

    # basic views ----------------------------------------------------------

    @property
    def interval(self) -> Interval:
        return Interval(self.breaks[0], self.breaks[-1])

    @property
    def a(self) -> Fraction:
        return self.breaks[0]

    @property
    def b(self) -> Fraction:
        return self.breaks[-1]

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def cells(self):
        """Yield ``(s, t, poly)`` for each piece."""
        for i, p in enumerate(self.pieces):
            yield self.breaks[i], self.breaks[i + 1], p

    def __repr__(self):
        return f"PiecewisePoly({self.to_literal()!r})"

    def __eq__(self, other):
        return isinstance(other, PiecewisePoly) and self.breaks == other.breaks and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.breaks, self.pieces))

    def _check_point(self, x):
        if not self.a <= x <= self.b:
            raise PreconditionError(f"point {x} outside [{self.a}, {self.b}]")

    def piece_at(self, x, side: str = "left") -> int:
        """Index of the piece used at ``x``: the piece left of a breakpoint
        for ``side='left'``, right of it for ``side='right'``."""
        self._check_point(x)
        i = bisect_left(self.breaks, x)
        if i < len(self.breaks) and self.breaks[i] == x:
            if side == "left":
                return max(i - 1, 0)
            return min(i, len(self.pieces) - 1)
        return i - 1

    def value(self, x) -> Fraction:
        x = Q(x)
        return self.pieces[self.piece_at(x)](x)

    __call__ = value

    def limit_left(self, x) -> Fraction:
        x = Q(x)
        return self.pieces[self.piece_at(x, "left")](x)

    def limit_right(self, x) -> Fraction:
        x = Q(x)
        return self.pieces[self.piece_at(x, "right")](x)

    def eval_float(self, x: float) -> float:
        i = bisect_left(self.breaks, x)
        i = min(max(i - 1, 0), len(self.pieces) - 1)
        return self.pieces[i].eval_float(x)

    def derivative_value(self, x, k: int, side: str = "left") -> Fraction:
        x = Q(x)
        return self.pieces[self.piece_at(x, side)].deriv(k)(x)

    def continuity_order(self, max_order: int = 8) -> int:
        """Largest ``r`` such that derivatives ``0..r`` agree across every
        interior breakpoint (``-1`` when the function itself jumps)."""
        order = max_order
        for i in range(1, len(self.breaks) - 1):
            t = self.breaks[i]
            left, right = self.pieces[i - 1], self.pieces[i]
            r = -1
            while r < order and left.deriv(r + 1)(t) == right.deriv(r + 1)(t):
                r += 1
            order = min(order, r)
        return order

    @property
    def is_continuous(self) -> bool:
        return self.continuity_order(0) >= 0

    # construction ---------------------------------------------------------

    def refine(self, points) -> "PiecewisePoly":
        """Same function with extra breakpoints inserted."""
        extra = sorted({Q(p) for p in points if self.a < p < self.b} - set(self.breaks))
        if not extra:
            return self
        breaks, pieces = [self.breaks[0]], []
        j = 0
        for s, t, p in self.cells():
            while j < len(extra) and extra[j] < t:
                breaks.append(extra[j])
                pieces.append(p)
                j += 1
            breaks.append(t)
            pieces.append(p)
        return PiecewisePoly(breaks, pieces)

    def restrict(self, interval) -> "PiecewisePoly":
        iv = as_interval(interval)
        if not iv.within(self.interval):
            raise EmptyIntersection(f"{iv} is not inside {self.interval}")
        fine = self.refine((iv.a, iv.b))
        keep = [(s, t, p) for s, t, p in fine.cells() if iv.a <= s and t <= iv.b]
        return PiecewisePoly([keep[0][0]] + [t for _, t, _ in keep], [p for _, _, p in keep])

    def _binary(self, other, op) -> "PiecewisePoly":
        if not isinstance(other, PiecewisePoly):
            q = other if isinstance(other, Poly) else Poly.const(other)
            return PiecewisePoly(self.breaks, [op(p, q) for p in self.pieces])
        if (self.a, self.b) != (other.a, other.b):
            raise PreconditionError("piecewise operands must share their interval")
        pts = sorted(set(self.breaks) | set(other.breaks))
        left, right = self.refine(pts), other.refine(pts)
        return PiecewisePoly(pts, [op(p, q) for p, q in zip(left.pieces, right.pieces)])

    def __add__(self, other):
        return self._binary(other, lambda p, q: p + q)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda p, q: p - q)

    def __rsub__(self, other):
        return self._binary(other, lambda p, q: q - p)

    def __mul__(self, other):
        return self._binary(other, lambda p, q: p * q)

    __rmul__ = __mul__

    def __neg__(self):
        return PiecewisePoly(self.breaks, [-p for p in self.pieces])

    def derivative(self, k: int = 1) -> "PiecewisePoly":
        """Piecewise k-th derivative (one-sided at breakpoints)."""
        return PiecewisePoly(self.breaks, [p.deriv(k) for p in self.pieces])

    def simplify(self) -> "PiecewisePoly":
        """Merge neighbouring identical pieces."""
        breaks, pieces = [self.breaks[0]], []
        for s, t, p in self.cells():
            if pieces and pieces[-1] == p:
                breaks[-1] = t
            else:
                pieces.append(p)
                breaks.append(t)
        return PiecewisePoly(breaks, pieces)

    # measurements ---------------------------------------------------------

    def _cells_in(self, interval):
        if interval is None:
            return list(self.cells())
        iv = as_interval(interval)
        if iv.b < self.a or iv.a > self.b or not iv.within(self.interval):
            raise EmptyIntersection(f"{iv} is not inside {self.interval}")
        out = []
        for s, t, p in self.cells():
            lo, hi = max(s, iv.a), min(t, iv.b)
            if lo < hi:
                out.append((lo, hi, p))
        return out

    def integrate(self, interval=None) -> Fraction:
        """Exact integral over ``interval`` (default: the whole span)."""
        return sum((p.integral(s, t) for s, t, p in self._cells_in(interval)), Q(0))

    def abs_integral_bounds(self, interval=None) -> tuple[Fraction, Fraction]:
        lo = hi = Q(0)
        for s, t, p in self._cells_in(interval):
            a, b = _poly.abs_integral(p, s, t)
            lo += a
            hi += b
        return lo, hi

    def abs_integral(self, interval=None) -> Fraction:
        """Integral of |f|; exact when sign changes are rational, otherwise an
        upper enclosure tight to ~2**-64 relative."""
        return self.abs_integral_bounds(interval)[1]

    def mean(self) -> Fraction:
        return self.integrate() / (self.b - self.a)

    # text form ------------------------------------------------------------

    def to_literal(self) -> str:
        from ..expr import from_coefficients, serialize

        parts = [f"({s},{t}): {serialize(from_coefficients(p.c))}" for s, t, p in self.cells()]
        return "pw[" + "; ".join(parts) + "]"


def as_piecewise(f, interval=None) -> PiecewisePoly:
    """Coerce polynomials, constants and polynomial expressions."""
    if isinstance(f, PiecewisePoly):
        return f
    if isinstance(f, Poly):
        return PiecewisePoly.single(f, interval)
    if isinstance(f, (int, Fraction)):
        return PiecewisePoly.constant(f, interval)
    from ..expr import Expr, lower_to_poly

    if isinstance(f, Expr):
        return lower_to_poly(f, interval)
    raise TypeError(f"cannot treat {type(f).__name__} as a piecewise polynomial")
