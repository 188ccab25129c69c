"""Extremal instances at which the bounds are attained."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .._rational import Q
from ..funcmodel import PiecewisePoly, parse_bv
from ..inequalities import evaluate
from .generate import describe

UNIT = (Q(0), Q(1))


@dataclass(frozen=True)
class SharpnessCase:
    ineq: str
    construction: dict
    citation: str
    lhs: Fraction
    rhs: Fraction
    expected_ratio: Fraction = Q(1)

    @property
    def achieved_ratio(self):
        return self.lhs / self.rhs if self.rhs else Q(0)

    @property
    def sharp(self) -> bool:
        return self.achieved_ratio == self.expected_ratio


def _step():
    return PiecewisePoly.step(UNIT, Q(1, 2), -1, 1)


def _t():
    return PiecewisePoly.identity(UNIT)


_INDICATOR = "bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1),(1,1,0,0)]"
_THREE_POINT = "bv[pieces: pw[(0,1): 0]; jumps: (0,0,-1,0),(1,0,1,0)]"


def _constructions():
    step, t = _step(), _t()
    yield "zero_mean", {"f": step, "l": step}, "f = l = sign step at the midpoint; both sides equal b - a"
    yield "gruss_mean", {"f": step, "g": step}, "the zero-mean step pair read as a Grüss mean"
    yield "gruss", {"f": step, "g": step}, "classic Grüss extremal: f = g = sign step"
    yield "stieltjes", {"f": t, "u": parse_bv(_INDICATOR)}, "u = indicator of (0,1): ∫ t du = -1, total variation 2"
    yield "stieltjes_weighted", {"f": t, "u": parse_bv(_INDICATOR), "l": PiecewisePoly.constant(1, UNIT)}, \
        "weight l = 1 reduces the weighted form to the unweighted one"
    yield "gruss_stieltjes", {"f": t, "g": t, "u": parse_bv(_THREE_POINT)}, \
        "u = -1 at a, 0 inside, 1 at b with f = g = t"
    yield "ostrowski", {"f": t, "x": Q(1)}, "f = t evaluated at x = b"
    yield "trapezoid", {"f": t, "x": Q(0)}, "f = t with all weight on f(b) (x = a)"
    yield "ogruss", {"f": t, "g": step}, "f = t against the sign step; constant 1/8 attained"
    yield "cheby", {"f": t, "g": t}, "f = g = t; constant 1/12 attained"
    yield "interior_n", {"f": t, "x": Q(1), "n": 1}, "order one at x = b with f = t"
    yield "boundary_n", {"f": t, "x": Q(0), "n": 1}, "order one at x = a with f = t"


def sharpness_cases(ineq: str | None = None) -> list:
    """Evaluate every shipped extremal instance exactly (optionally only
    those for one inequality id)."""
    out = []
    for ineq_id, inputs, note in _constructions():
        if ineq is not None and ineq_id != ineq:
            continue
        rep = evaluate(ineq_id, interval=UNIT, **inputs)
        out.append(SharpnessCase(ineq_id, describe({"interval": UNIT, **inputs}), note, rep.lhs, rep.rhs))
    return out
