"""Certified composite integration.

Each cell [s, t] contributes an estimate and a radius from the perturbed
order-n bounds evaluated at the cell midpoint, so the true integral lies in
``[estimate - radius, estimate + radius]`` whenever the per-cell derivative
ranges are rigorous.

Two arithmetic paths:

* polynomial input (piecewise or a polynomial expression) is handled in exact
  rationals, estimate included;
* any other expression is evaluated with outward-rounded interval arithmetic.
  The per-cell estimate is then itself an enclosure; its half-width is added
  to the radius and the final float estimate is rounded to nearest with the
  rounding error also added, so the certificate never understates.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import expr as _expr
from . import interval as ia
from ._rational import Q, to_rational
from .exceptions import DomainError, NonRigorousRange, PreconditionError
from .funcmodel import RangeBound, Rigor, derivative_range, range_enclosure, sampled_range
from .funcmodel.piecewise import Interval, as_interval
from .inequalities._fn import try_exact
from .inequalities.nth_degree import kernel_integrals

RULES = ("pmid", "interior_n", "boundary_n")


@dataclass(frozen=True)
class Partition:
    """Strictly increasing points a = x0 < x1 < ... < xN = b."""

    points: tuple

    def __post_init__(self):
        pts = tuple(to_rational(p) for p in self.points)
        if len(pts) < 2:
            raise PreconditionError("a partition needs at least one cell")
        if any(s >= t for s, t in zip(pts, pts[1:])):
            raise PreconditionError("partition points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @classmethod
    def uniform(cls, interval, cells: int) -> "Partition":
        iv = as_interval(interval)
        if cells < 1:
            raise PreconditionError("need at least one cell")
        return cls(tuple(iv.a + iv.width * i / cells for i in range(cells + 1)))

    @property
    def a(self):
        return self.points[0]

    @property
    def b(self):
        return self.points[-1]

    def __len__(self):
        return len(self.points) - 1

    def cells(self):
        return list(zip(self.points, self.points[1:]))


@dataclass(frozen=True)
class CertifiedIntegral:
    estimate: object
    radius: object
    partition: Partition
    rule: str
    n: int
    ranges: tuple
    cell_estimates: tuple = ()
    cell_radii: tuple = ()
    mode: str = "Exact"
    converged: bool = True
    tol: object = None

    @property
    def rigor(self) -> Rigor:
        return Rigor.weakest(r.rigor for r in self.ranges)

    @property
    def lo(self):
        return self.estimate - self.radius

    @property
    def hi(self):
        return self.estimate + self.radius

    def contains(self, value) -> bool:
        """Whether ``value`` lies inside the certified interval (exact test)."""
        v = Q(value) if isinstance(value, (int, float, Fraction)) else value
        return abs(Q(self.estimate) - v) <= Q(self.radius)


# per-cell evaluation --------------------------------------------------------


class _Integrand:
    """Point-derivative evaluation and per-cell ranges for one integrand."""

    def __init__(self, f, interval: Interval, range_method: str):
        self.interval = interval
        self.pw = try_exact(f, interval)
        self.range_method = range_method
        self.expr = None if self.pw is not None else _expr.as_expr(f)
        self._derivs = {}
        self._cache = {}

    @property
    def exact(self) -> bool:
        return self.pw is not None

    @property
    def mode(self) -> str:
        return "Exact" if self.exact else "Float"

    def _d(self, k):
        if k not in self._derivs:
            self._derivs[k] = self.pw.derivative(k) if self.exact else _expr.derivative(self.expr, k)
        return self._derivs[k]

    def deriv_at(self, x, k, side="left"):
        """Rational enclosure (lo, hi) of the k-th derivative at x."""
        key = (x, k, side)
        hit = self._cache.get(key)
        if hit is None:
            if self.exact:
                v = self.pw.derivative_value(x, k, side)
                hit = (v, v)
            else:
                try:
                    enc = _expr.evaluate_interval(self._d(k), ia.FInterval(Q(x)))
                except DomainError as exc:
                    raise DomainError(f"cannot evaluate derivative {k} at {x}: {exc}") from None
                if not enc.is_finite:
                    raise DomainError(f"derivative {k} is unbounded near {x}")
                hit = (Q(enc.lo), Q(enc.hi))
            self._cache[key] = hit
        return hit

    def cell_range(self, k, s, t) -> RangeBound:
        if self.exact:
            return derivative_range(self.pw, k, (s, t))
        if self.range_method == "sampled":
            return sampled_range(self.expr, k, (s, t), samples=257)
        return range_enclosure(self.expr, k, (s, t))


def _scaled(w, enc):
    lo, hi = w * enc[0], w * enc[1]
    return (lo, hi) if lo <= hi else (hi, lo)


def _cell(fn: _Integrand, rule: str, n: int, s, t, r: RangeBound):
    """Exact rational (estimate_lo, estimate_hi, radius) for one cell."""
    h = t - s
    m = (s + t) / 2
    lo_r, hi_r = Q(r.lo), Q(r.hi)
    mu = (lo_r + hi_r) / 2
    spread = max(hi_r - mu, mu - lo_r)
    if rule == "pmid":
        e = _scaled(h, fn.deriv_at(m, 0))
        return e[0], e[1], (hi_r - lo_r) * h * h / 8
    signed, absolute = kernel_integrals(m, n, (s, t))
    lo = hi = Q(0)
    if rule == "interior_n":
        for k in range(n):
            w = (Q(h, 2) ** (k + 1)) * (1 + (-1) ** k) / factorial(k + 1)
            if w:
                a, b = _scaled(w, fn.deriv_at(m, k))
                lo, hi = lo + a, hi + b
        pert = (-1) ** n * mu * signed
    else:
        for k in range(n):
            w = Q(h, 2) ** (k + 1) / factorial(k + 1)
            a1, b1 = _scaled(w, fn.deriv_at(s, k, "right"))
            a2, b2 = _scaled((-1) ** k * w, fn.deriv_at(t, k, "left"))
            lo, hi = lo + a1 + a2, hi + b1 + b2
        pert = mu * ((m - s) ** (n + 1) + (-1) ** n * (t - m) ** (n + 1)) / factorial(n + 1)
    return lo + pert, hi + pert, spread * absolute


def _check_rule(rule, n):
    if rule not in RULES:
        raise PreconditionError(f"unknown rule {rule!r}; expected one of {', '.join(RULES)}")
    if rule == "pmid":
        return 1
    if n is None or int(n) < 1:
        raise PreconditionError("rules interior_n and boundary_n need an order n >= 1")
    return int(n)


def _check_rigor(ranges, best_effort):
    if not best_effort and any(r.rigor is Rigor.SAMPLED for r in ranges):
        raise NonRigorousRange("sampled ranges give no certificate; pass best_effort=True to accept them")


def _assemble(fn, partition, rule, n, cells, converged=True, tol=None) -> CertifiedIntegral:
    ranges = tuple(c[3] for c in cells)
    est_exact = [(c[0] + c[1]) / 2 for c in cells]
    rad_exact = [c[2] + (c[1] - c[0]) / 2 for c in cells]
    total_est = sum(est_exact, Q(0))
    total_rad = sum(rad_exact, Q(0))
    if fn.exact:
        return CertifiedIntegral(total_est, total_rad, partition, rule, n, ranges, tuple(est_exact), tuple(rad_exact),
                                 "Exact", converged, tol)
    est = float(total_est)
    rad = ia.round_up(total_rad + abs(Q(est) - total_est))
    return CertifiedIntegral(est, rad, partition, rule, n, ranges, tuple(float(e) for e in est_exact),
                             tuple(ia.round_up(r) for r in rad_exact), "Float", converged, tol)


def _partition_for(interval, partition, cells):
    iv = as_interval(interval)
    if partition is None:
        partition = Partition.uniform(iv, 1 if cells is None else cells)
    elif not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    if (partition.a, partition.b) != (iv.a, iv.b):
        raise PreconditionError(f"partition spans [{partition.a}, {partition.b}], not {iv}")
    return iv, partition


def _run(f, interval, partition, cells, rule, n, ranges, best_effort, range_method):
    n = _check_rule(rule, n)
    iv, partition = _partition_for(interval, partition, cells)
    fn = _Integrand(f, iv, range_method)
    if fn.exact and fn.pw.continuity_order(n - 1) < n - 1:
        raise PreconditionError(f"f needs continuous derivatives up to order {n - 1}")
    k = 1 if rule == "pmid" else n
    spans = partition.cells()
    if ranges is None:
        ranges = [fn.cell_range(k, s, t) for s, t in spans]
    else:
        ranges = [r if isinstance(r, RangeBound) else RangeBound.of(*r) for r in ranges]
        if len(ranges) != len(spans):
            raise PreconditionError(f"{len(ranges)} ranges for {len(spans)} cells")
    _check_rigor(ranges, best_effort)
    out = [(*_cell(fn, rule, n, s, t, r), r) for (s, t), r in zip(spans, ranges)]
    return _assemble(fn, partition, rule, n, out)


def certified_midpoint(f, interval, partition=None, ranges=None, *, cells=None, best_effort=False,
                       range_method="enclosure") -> CertifiedIntegral:
    """Composite midpoint rule with radius Σ (Gamma_i - gamma_i) h_i^2 / 8,
    ``ranges[i]`` bounding f' on cell i (computed when omitted)."""
    return _run(f, interval, partition, cells, "pmid", 1, ranges, best_effort, range_method)


def certified_nth(f, interval, partition=None, n=1, variant="interior", ranges=None, *, cells=None,
                  best_effort=False, range_method="enclosure") -> CertifiedIntegral:
    """Composite order-n rule; ``variant`` is ``interior`` (derivatives at
    cell midpoints) or ``boundary`` (derivatives at cell endpoints)."""
    rule = variant if variant in RULES else f"{variant}_n"
    return _run(f, interval, partition, cells, rule, n, ranges, best_effort, range_method)


def adaptive_integrate(f, interval, tol, rule="pmid", n=1, max_cells=1024, *, best_effort=False,
                       range_method="enclosure") -> CertifiedIntegral:
    """Bisect the cell with the largest radius (leftmost on ties) until the
    total radius is at most ``tol`` or ``max_cells`` cells exist."""
    tol_q = Q(tol) if isinstance(tol, float) else to_rational(tol)
    if tol_q <= 0:
        raise PreconditionError("tol must be positive")
    if range_method == "sampled" and not best_effort:
        raise NonRigorousRange("sampled ranges give no certificate; pass best_effort=True to accept them")
    n = _check_rule(rule, n)
    iv = as_interval(interval)
    fn = _Integrand(f, iv, range_method)
    if fn.exact and fn.pw.continuity_order(n - 1) < n - 1:
        raise PreconditionError(f"f needs continuous derivatives up to order {n - 1}")
    k = 1 if rule == "pmid" else n

    def evaluate(s, t):
        r = fn.cell_range(k, s, t)
        lo, hi, rad = _cell(fn, rule, n, s, t, r)
        return (lo, hi, rad, r)

    def cost(c):
        return c[2] + (c[1] - c[0]) / 2

    cells = {(iv.a, iv.b): evaluate(iv.a, iv.b)}
    heap = [(-cost(cells[(iv.a, iv.b)]), iv.a, iv.b)]
    total = cost(cells[(iv.a, iv.b)])
    while total > tol_q and len(cells) < max(1, int(max_cells)):
        _, s, t = heapq.heappop(heap)
        m = (s + t) / 2
        old = cells.pop((s, t))
        total -= cost(old)
        for u, v in ((s, m), (m, t)):
            c = evaluate(u, v)
            cells[(u, v)] = c
            total += cost(c)
            heapq.heappush(heap, (-cost(c), u, v))
    spans = sorted(cells)
    partition = Partition((spans[0][0],) + tuple(t for _, t in spans))
    result = _assemble(fn, partition, rule, n, [cells[c] for c in spans], tol=tol)
    converged = Q(result.radius) <= tol_q
    return CertifiedIntegral(result.estimate, result.radius, result.partition, rule, n, result.ranges,
                             result.cell_estimates, result.cell_radii, result.mode, converged, tol)


__all__ = [
    "CertifiedIntegral",
    "Partition",
    "RULES",
    "adaptive_integrate",
    "certified_midpoint",
    "certified_nth",
]
