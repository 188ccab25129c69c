"""Bounded-variation integrators: a piecewise polynomial plus finite jumps.

A jump record ``(t, left, point, right)`` overrides the value at ``t`` with
``point`` and states the one-sided limits there. At the left end ``a`` only
``point`` and ``right`` matter, at the right end ``b`` only ``left`` and
``point``. The Stieltjes mass and the variation contributed by a record are

    interior:  mass = right - left,  variation = |point - left| + |right - point|
    at a:      mass = right - point, variation = |right - point|
    at b:      mass = point - left,  variation = |point - left|
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .._rational import Q, to_rational
from ..exceptions import DiscontinuousAtJump, PreconditionError
from .piecewise import PiecewisePoly


@dataclass(frozen=True)
class Jump:
    t: Fraction
    left: Fraction
    point: Fraction
    right: Fraction

    def __init__(self, t, left, point, right):
        for name, v in (("t", t), ("left", left), ("point", point), ("right", right)):
            object.__setattr__(self, name, to_rational(v))


class BVFunction:
    __slots__ = ("base", "jumps")

    def __init__(self, base: PiecewisePoly, jumps: Sequence = ()):
        jumps = tuple(j if isinstance(j, Jump) else Jump(*j) for j in jumps)
        locs = [j.t for j in jumps]
        if any(s >= t for s, t in zip(locs, locs[1:])):
            raise PreconditionError("jump locations must be distinct and sorted")
        a, b = base.a, base.b
        for j in jumps:
            if not a <= j.t <= b:
                raise PreconditionError(f"jump at {j.t} outside [{a}, {b}]")
            if j.t > a and j.left != base.limit_left(j.t):
                raise PreconditionError(f"jump at {j.t}: left value {j.left} != left limit {base.limit_left(j.t)}")
            if j.t < b and j.right != base.limit_right(j.t):
                raise PreconditionError(f"jump at {j.t}: right value {j.right} != right limit {base.limit_right(j.t)}")
        located = set(locs)
        for t in base.breaks[1:-1]:
            if t not in located and base.limit_left(t) != base.limit_right(t):
                raise PreconditionError(f"base jumps at {t} without a jump record")
        self.base = base
        self.jumps = jumps

    @classmethod
    def from_piecewise(cls, f: PiecewisePoly) -> "BVFunction":
        """Promote a piecewise polynomial, turning its discontinuities into
        jump records that keep the left-piece point value."""
        jumps = []
        for t in f.breaks[1:-1]:
            left, right = f.limit_left(t), f.limit_right(t)
            if left != right:
                jumps.append(Jump(t, left, left, right))
        return cls(f, jumps)

    @property
    def a(self) -> Fraction:
        return self.base.a

    @property
    def b(self) -> Fraction:
        return self.base.b

    @property
    def interval(self):
        return self.base.interval

    def __repr__(self):
        return f"BVFunction({self.to_literal()!r})"

    def __eq__(self, other):
        return isinstance(other, BVFunction) and self.base == other.base and self.jumps == other.jumps

    def __hash__(self):
        return hash((self.base, self.jumps))

    def jump_at(self, t):
        for j in self.jumps:
            if j.t == t:
                return j
        return None

    def value(self, t) -> Fraction:
        t = Q(t)
        j = self.jump_at(t)
        return j.point if j is not None else self.base.value(t)

    __call__ = value

    def with_endpoint_value(self, end: str, value) -> "BVFunction":
        """Copy with the point value at ``a`` or ``b`` overridden."""
        value = to_rational(value)
        t = self.a if end == "a" else self.b
        others = [j for j in self.jumps if j.t != t]
        rec = Jump(t, self.base.limit_left(t), value, self.base.limit_right(t))
        return BVFunction(self.base, sorted(others + [rec], key=lambda j: j.t))

    def _mass(self, j: Jump) -> Fraction:
        if j.t == self.a:
            return j.right - j.point
        if j.t == self.b:
            return j.point - j.left
        return j.right - j.left

    def _jump_variation(self, j: Jump) -> Fraction:
        if j.t == self.a:
            return abs(j.right - j.point)
        if j.t == self.b:
            return abs(j.point - j.left)
        return abs(j.point - j.left) + abs(j.right - j.point)

    def total_variation_bounds(self) -> tuple[Fraction, Fraction]:
        lo, hi = self.base.derivative().abs_integral_bounds()
        jv = sum((self._jump_variation(j) for j in self.jumps), Q(0))
        return lo + jv, hi + jv

    def total_variation(self) -> Fraction:
        """Total variation over [a, b]; exact when the turning points of the
        smooth part are rational, otherwise an upper enclosure."""
        return self.total_variation_bounds()[1]

    def stieltjes(self, f: PiecewisePoly) -> Fraction:
        """Exact Riemann-Stieltjes integral of ``f`` against this function."""
        for j in self.jumps:
            if self.a < j.t < self.b and f.limit_left(j.t) != f.limit_right(j.t):
                raise DiscontinuousAtJump(f"integrand and integrator both jump at {j.t}")
        smooth = (f * self.base.derivative()).integrate()
        point_mass = Q(0)
        for j in self.jumps:
            if j.t == self.a:
                fv = f.limit_right(j.t)
            elif j.t == self.b:
                fv = f.limit_left(j.t)
            else:
                fv = f.value(j.t)
            point_mass += fv * self._mass(j)
        return smooth + point_mass

    def to_literal(self) -> str:
        jumps = ",".join(f"({j.t},{j.left},{j.point},{j.right})" for j in self.jumps)
        return f"bv[pieces: {self.base.to_literal()}; jumps: {jumps}]"


def total_variation(u: BVFunction) -> Fraction:
    return u.total_variation()


def stieltjes_integral(f: PiecewisePoly, u: BVFunction) -> Fraction:
    return u.stieltjes(f)
