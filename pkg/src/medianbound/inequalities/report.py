"""Bound reports, shift polynomials and the median shift."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .._rational import Q
from .. import expr as _expr
from ..funcmodel import PiecewisePoly, Poly, RangeBound, Rigor
from ._fn import EXACT, FLOAT, FloatFn

FLOAT_RTOL = 1e-9


@dataclass(frozen=True)
class BoundReport:
    """Both sides of one inequality instance.

    ``perturbation`` is the median term folded into ``lhs`` (zero for the
    classic forms). ``rigor`` is the weakest rigor among the ranges used.
    """

    ineq: str
    lhs: Any
    rhs: Any
    perturbation: Any = 0
    mode: str = EXACT
    rigor: Rigor = Rigor.EXACT
    params: dict = field(default_factory=dict)

    @property
    def ratio(self):
        if self.rhs == 0:
            return Q(0) if self.lhs == 0 else math.inf
        r = self.lhs / self.rhs
        return r

    @property
    def holds(self) -> bool:
        if self.mode == EXACT:
            return self.lhs <= self.rhs
        return float(self.lhs) <= float(self.rhs) + FLOAT_RTOL * max(1.0, abs(float(self.rhs)))

    @property
    def is_exact(self) -> bool:
        return self.mode == EXACT


def make_report(ineq, lhs, rhs, *, perturbation=0, mode=EXACT, ranges=(), params=None) -> BoundReport:
    rigor = Rigor.weakest([r.rigor for r in ranges if r is not None])
    if mode == FLOAT:
        lhs, rhs, perturbation = float(lhs), float(rhs), float(perturbation)
        if rigor is Rigor.EXACT:
            rigor = Rigor.INTERVAL
    return BoundReport(ineq, lhs, rhs, perturbation, mode, rigor, dict(params or {}))


@dataclass(frozen=True)
class ShiftPolynomial:
    """``x**n / n! + c[n-1] x**(n-1) + ... + c[0]``; its n-th derivative is 1.

    The conventional monic normalization is available as :meth:`monic`.
    """

    n: int
    lower: tuple = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("degree must be non-negative")
        lower = tuple(Q(c) for c in self.lower)
        if len(lower) > self.n:
            raise ValueError(f"at most {self.n} lower-order coefficients")
        object.__setattr__(self, "lower", lower + (Q(0),) * (self.n - len(lower)))

    @property
    def poly(self) -> Poly:
        return Poly(self.lower + (Q(1, math.factorial(self.n)),))

    def monic(self) -> Poly:
        return self.poly * math.factorial(self.n)

    def expr(self):
        return _expr.from_coefficients(self.poly.c)

    def __call__(self, x):
        return self.poly(Q(x))


def median_shift(g, n: int, r: RangeBound, p: ShiftPolynomial | None = None):
    """``g - ((r.lo + r.hi) / 2) * p``.

    If ``r`` bounds the n-th derivative of ``g`` then the result's n-th
    derivative lies in ``[-(r.hi - r.lo)/2, (r.hi - r.lo)/2]``.
    """
    p = ShiftPolynomial(n) if p is None else p
    if p.n != n:
        raise ValueError(f"shift polynomial has degree {p.n}, expected {n}")
    mu = (r.lo + r.hi) / 2
    if isinstance(g, PiecewisePoly):
        return g - p.poly * Q(mu)
    if isinstance(g, Poly):
        return g - p.poly * Q(mu)
    if isinstance(g, FloatFn):
        shift = FloatFn.from_pw(PiecewisePoly.single(p.poly, g.interval))
        return g - shift * mu
    if isinstance(g, (str, _expr.Expr)):
        e = _expr.as_expr(g)
        m = Q(mu) if isinstance(mu, (int, Fraction)) else Q(float(mu))
        if m == 0:
            return e
        return _expr.sub(e, _expr.from_coefficients((p.poly * m).c))
    raise TypeError(f"cannot shift {type(g).__name__}")
