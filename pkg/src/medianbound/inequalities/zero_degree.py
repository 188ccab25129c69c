"""Bounds that use the range of f itself: zero-mean weights, Grüss forms and
Riemann-Stieltjes integrals against functions of bounded variation."""

from __future__ import annotations

from .._rational import Q
from ..exceptions import DegenerateIntegrator, NonZeroMean, SideConditionViolated
from ..funcmodel import BVFunction, PiecewisePoly, parse_bv
from ._fn import EXACT, FloatFn, check_range, coerce_range, frange, lift, require_smooth
from .report import BoundReport, make_report

HALF = Q(1, 2)
QUARTER = Q(1, 4)


def _range_of(F, r, mode, what="f"):
    r = coerce_range(r, mode)
    if r is None:
        return frange(F, 0)
    check_range(F, 0, r, what)
    return r


def _echo(iv, **extra):
    out = {"a": iv.a, "b": iv.b}
    out.update({k: v for k, v in extra.items() if v is not None})
    return out


def _cov(F, G):
    """mean(FG) - mean(F) mean(G)."""
    return (F * G).mean() - F.mean() * G.mean()


def bound_zero_mean(f, l, interval=None, r=None) -> BoundReport:
    """|∫ f l| <= (M - m)/2 · ∫|l| for a weight l with zero integral."""
    mode, iv, F, L = lift(interval, f, l)
    total = L.integrate()
    scale = L.abs_integral()
    if mode == EXACT:
        if total != 0:
            raise NonZeroMean(f"weight integrates to {total}, not 0")
    elif abs(total) > 1e-12 * scale:
        raise NonZeroMean(f"weight integrates to {total!r}, not 0")
    R = _range_of(F, r, mode)
    lhs = abs((F * L).integrate())
    rhs = HALF * (R.hi - R.lo) * scale
    return make_report("zero_mean", lhs, rhs, mode=mode, ranges=[R], params=_echo(iv, range=(R.lo, R.hi)))


def bound_gruss_mean(f, g, interval=None, r=None) -> BoundReport:
    """|mean(fg) - mean f mean g| <= (M - m)/2 · mean|g - mean g|."""
    mode, iv, F, G = lift(interval, f, g)
    R = _range_of(F, r, mode)
    lhs = abs(_cov(F, G))
    spread = (G - G.mean()).abs_integral() / (iv.b - iv.a)
    rhs = HALF * (R.hi - R.lo) * spread
    return make_report("gruss_mean", lhs, rhs, mode=mode, ranges=[R], params=_echo(iv, range=(R.lo, R.hi)))


def bound_gruss_classic(f, g, interval=None, rf=None, rg=None) -> BoundReport:
    """|mean(fg) - mean f mean g| <= (M - m)(N - n)/4."""
    mode, iv, F, G = lift(interval, f, g)
    RF = _range_of(F, rf, mode)
    RG = _range_of(G, rg, mode, "g")
    lhs = abs(_cov(F, G))
    rhs = QUARTER * (RF.hi - RF.lo) * (RG.hi - RG.lo)
    return make_report("gruss", lhs, rhs, mode=mode, ranges=[RF, RG], params=_echo(iv, range=(RF.lo, RF.hi), range_g=(RG.lo, RG.hi)))


# Stieltjes ---------------------------------------------------------------


def _as_bv(u) -> BVFunction:
    if isinstance(u, BVFunction):
        return u
    if isinstance(u, PiecewisePoly):
        return BVFunction.from_piecewise(u)
    if isinstance(u, str):
        return parse_bv(u)
    raise TypeError(f"expected a BV function, got {type(u).__name__}")


def stieltjes(F, u: BVFunction):
    """∫ F du for an exact or float F (F continuous at interior jumps)."""
    if isinstance(F, PiecewisePoly):
        return u.stieltjes(F)
    total = (F * FloatFn.from_pw(u.base.derivative())).integrate()
    for j in u.jumps:
        side = "right" if j.t == u.a else "left"
        total += F.value(j.t, side) * float(u._mass(j))
    return total


def _sup_abs(F):
    return frange(F, 0).sup_abs


def bound_stieltjes(f, u, r=None, l=None, interval=None) -> BoundReport:
    """|∫ f du| <= (M - m)/2 · V(u) when u(a) = u(b); with a weight l,
    |∫ f l du| <= (M - m)/2 · ‖l‖ · V(u) when ∫ l du = 0."""
    u = _as_bv(u)
    iv = u.interval if interval is None else interval
    mode, iv, F, L = lift(iv, f, l)
    require_smooth(F, 0)
    R = _range_of(F, r, mode)
    var = u.total_variation()
    if L is None:
        if u.value(u.a) != u.value(u.b):
            raise SideConditionViolated(f"needs u(a) = u(b); got u(a) = {u.value(u.a)}, u(b) = {u.value(u.b)}")
        lhs = abs(stieltjes(F, u))
        rhs = HALF * (R.hi - R.lo) * var
        ineq = "stieltjes"
    else:
        require_smooth(L, 0, "l")
        side = stieltjes(L, u)
        norm = _sup_abs(L)
        if mode == EXACT and side != 0 or mode != EXACT and abs(side) > 1e-12 * float(norm * var):
            raise SideConditionViolated(f"needs ∫ l du = 0; got {side}")
        lhs = abs(stieltjes(F * L, u))
        rhs = HALF * (R.hi - R.lo) * norm * var
        ineq = "stieltjes_weighted"
    return make_report(ineq, lhs, rhs, mode=mode, ranges=[R], params=_echo(iv, range=(R.lo, R.hi), variation=var))


def bound_stieltjes_weighted(f, u, l, r=None, interval=None) -> BoundReport:
    return bound_stieltjes(f, u, r=r, l=l, interval=interval)


def bound_gruss_stieltjes(f, g, u, r=None, interval=None) -> BoundReport:
    """Grüss type bound for Stieltjes means against u with u(b) != u(a).

    With D = u(b) - u(a) and c = (1/D) ∫ g du the bound reads
    |(1/D)∫ fg du - (1/D)∫ f du · c| <= (M - m)/2 · ‖g - c‖ · V(u) / |D|.
    """
    u = _as_bv(u)
    iv = u.interval if interval is None else interval
    mode, iv, F, G = lift(iv, f, g)
    require_smooth(F, 0)
    require_smooth(G, 0, "g")
    delta = u.value(u.b) - u.value(u.a)
    if delta == 0:
        raise DegenerateIntegrator("needs u(b) != u(a)")
    R = _range_of(F, r, mode)
    c = stieltjes(G, u) / delta
    lhs = abs(stieltjes(F * G, u) / delta - stieltjes(F, u) / delta * c)
    RG = frange(G, 0)
    dev = max(abs(RG.hi - c), abs(RG.lo - c))
    var = u.total_variation()
    rhs = HALF * (R.hi - R.lo) * dev * var / abs(delta)
    return make_report("gruss_stieltjes", lhs, rhs, mode=mode, ranges=[R, RG], params=_echo(iv, range=(R.lo, R.hi), variation=var))


__all__ = [
    "bound_zero_mean",
    "bound_gruss_mean",
    "bound_gruss_classic",
    "bound_stieltjes",
    "bound_stieltjes_weighted",
    "bound_gruss_stieltjes",
    "stieltjes",
]
