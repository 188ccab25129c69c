"""Exact function models and the measurements the bounds consume."""

from .bv import BVFunction, Jump, stieltjes_integral, total_variation
from .literals import parse_bv, parse_piecewise
from .piecewise import Interval, PiecewisePoly, as_interval, as_piecewise
from .poly import Poly, Root, real_roots
from .ranges import RangeBound, Rigor, derivative_range, range_enclosure, sampled_range, sup_norm


def integrate_exact(f: PiecewisePoly, interval=None):
    return f.integrate(interval)


__all__ = [
    "BVFunction",
    "Interval",
    "Jump",
    "PiecewisePoly",
    "Poly",
    "RangeBound",
    "Rigor",
    "Root",
    "as_interval",
    "as_piecewise",
    "derivative_range",
    "integrate_exact",
    "parse_bv",
    "parse_piecewise",
    "range_enclosure",
    "real_roots",
    "sampled_range",
    "stieltjes_integral",
    "sup_norm",
    "total_variation",
]
