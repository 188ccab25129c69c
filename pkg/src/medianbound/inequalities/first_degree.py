"""Bounds driven by the range of the first derivative."""

from __future__ import annotations

from .._rational import Q, to_rational
from ..exceptions import PreconditionError
from ..funcmodel import PiecewisePoly, Poly
from ._fn import EXACT, FloatFn, check_range, coerce_range, frange, lift, require_smooth, value
from .report import BoundReport, make_report

HALF = Q(1, 2)
QUARTER = Q(1, 4)


def _point(x, iv):
    if x is None:
        raise PreconditionError("a point x is required")
    x = to_rational(x)
    if not iv.a <= x <= iv.b:
        raise PreconditionError(f"x = {x} lies outside [{iv.a}, {iv.b}]")
    return x


def _deriv_range(F, r, mode, k=1, what="f'"):
    r = coerce_range(r, mode)
    if r is None:
        return frange(F, k)
    check_range(F, k, r, what)
    return r


def _position(x, iv):
    """1/4 + ((x - mid)/(b - a))^2."""
    return QUARTER + ((x - iv.mid) / iv.width) ** 2


def _tee(iv, mode):
    """t - mid as a function on the interval."""
    p = PiecewisePoly.single(Poly((-iv.mid, 1)), iv)
    return p if mode == EXACT else FloatFn.from_pw(p)


def bound_ostrowski(f, x, interval=None, perturbed=False, r=None) -> BoundReport:
    """Classic: |f(x) - mean f| <= [1/4 + ((x-mid)/w)^2] · w · ‖f'‖.

    Perturbed by the median mu of the range [gamma, Gamma] of f':
    |f(x) - mean f - mu (x - mid)| <= [1/4 + ((x-mid)/w)^2] · w · (Gamma - gamma)/2.
    """
    mode, iv, F = lift(interval, f)
    require_smooth(F, 0)
    x = _point(x, iv)
    R = _deriv_range(F, r, mode)
    base = value(F, x, "right" if x == iv.a else "left") - F.mean()
    pos = _position(x, iv)
    params = {"a": iv.a, "b": iv.b, "x": x, "perturbed": bool(perturbed), "range": (R.lo, R.hi)}
    if perturbed:
        mu = (R.lo + R.hi) / 2
        pert = mu * (x - iv.mid)
        return make_report("ostrowski_pert", abs(base - pert), pos * iv.width * (R.hi - R.lo) / 2,
                           perturbation=pert, mode=mode, ranges=[R], params=params)
    return make_report("ostrowski", abs(base), pos * iv.width * R.sup_abs, mode=mode, ranges=[R], params=params)


def bound_trapezoid(f, x, interval=None, perturbed=False, r=None) -> BoundReport:
    """Generalised trapezoid: T(x) = ((x-a) f(a) + (b-x) f(b)) / w.

    Classic: |T(x) - mean f| <= [1/4 + ((x-mid)/w)^2] · w · ‖f'‖.
    Perturbed: the median term is mu (mid - x), the integral of mu (t - x)
    over [a, b] divided by w.
    """
    mode, iv, F = lift(interval, f)
    require_smooth(F, 0)
    x = _point(x, iv)
    R = _deriv_range(F, r, mode)
    trap = ((x - iv.a) * value(F, iv.a, "right") + (iv.b - x) * value(F, iv.b, "left")) / iv.width
    base = trap - F.mean()
    pos = _position(x, iv)
    params = {"a": iv.a, "b": iv.b, "x": x, "perturbed": bool(perturbed), "range": (R.lo, R.hi)}
    if perturbed:
        mu = (R.lo + R.hi) / 2
        pert = mu * (iv.mid - x)
        return make_report("trapezoid_pert", abs(base - pert), pos * iv.width * (R.hi - R.lo) / 2,
                           perturbation=pert, mode=mode, ranges=[R], params=params)
    return make_report("trapezoid", abs(base), pos * iv.width * R.sup_abs, mode=mode, ranges=[R], params=params)


def bound_ostrowski_gruss(f, g, interval=None, perturbed=False, rf=None, rg=None) -> BoundReport:
    """Classic: |mean(fg) - mean f mean g| <= (1/8) w (M - m) ‖f'‖ with [m, M]
    the range of g.

    Perturbed: subtract mu · mean((t - mid) g) inside; the bound becomes
    (1/16) w (M - m)(Gamma - gamma).
    """
    mode, iv, F, G = lift(interval, f, g)
    require_smooth(F, 0)
    RF = _deriv_range(F, rf, mode)
    rg = coerce_range(rg, mode)
    if rg is None:
        RG = frange(G, 0)
    else:
        check_range(G, 0, rg, "g")
        RG = rg
    cov = (F * G).mean() - F.mean() * G.mean()
    params = {"a": iv.a, "b": iv.b, "perturbed": bool(perturbed), "range": (RF.lo, RF.hi), "range_g": (RG.lo, RG.hi)}
    spread = RG.hi - RG.lo
    if perturbed:
        mu = (RF.lo + RF.hi) / 2
        pert = mu * (_tee(iv, mode) * G).mean()
        rhs = Q(1, 16) * iv.width * spread * (RF.hi - RF.lo)
        return make_report("ogruss_pert", abs(cov - pert), rhs, perturbation=pert, mode=mode, ranges=[RF, RG], params=params)
    rhs = Q(1, 8) * iv.width * spread * RF.sup_abs
    return make_report("ogruss", abs(cov), rhs, mode=mode, ranges=[RF, RG], params=params)


def bound_cheby(f, g, interval=None) -> BoundReport:
    """|mean(fg) - mean f mean g| <= (1/12) w^2 ‖f'‖ ‖g'‖."""
    mode, iv, F, G = lift(interval, f, g)
    require_smooth(F, 0)
    require_smooth(G, 0, "g")
    RF, RG = frange(F, 1), frange(G, 1)
    lhs = abs((F * G).mean() - F.mean() * G.mean())
    rhs = Q(1, 12) * iv.width ** 2 * RF.sup_abs * RG.sup_abs
    params = {"a": iv.a, "b": iv.b, "range": (RF.lo, RF.hi), "range_g": (RG.lo, RG.hi)}
    return make_report("cheby", lhs, rhs, mode=mode, ranges=[RF, RG], params=params)


__all__ = ["bound_ostrowski", "bound_trapezoid", "bound_ostrowski_gruss", "bound_cheby"]
