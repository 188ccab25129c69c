"""Taylor-type bounds of order n built on the Peano kernel

    K_n(x, t) = (t - a)^n / n!   for t <= x
              = (t - b)^n / n!   for t >  x

and on the boundary form with remainder (1/n!) ∫ (x - t)^n f^(n)(t) dt.

Signs of the median terms follow from integrating these remainders against
a constant, never from a transcribed closed form.
"""

from __future__ import annotations

from math import factorial

from .._rational import Q, to_rational
from ..exceptions import PreconditionError
from ..funcmodel import PiecewisePoly, Poly
from ..funcmodel.piecewise import as_interval
from ._fn import EXACT, coerce_range, check_range, frange, lift, require_smooth, deriv_value
from .report import BoundReport, make_report


def _order(n):
    if n is None:
        raise PreconditionError("an order n is required")
    n = int(n)
    if n < 1:
        raise PreconditionError(f"order n must be at least 1, got {n}")
    return n


def _point(x, iv):
    if x is None:
        raise PreconditionError("a point x is required")
    x = to_rational(x)
    if not iv.a <= x <= iv.b:
        raise PreconditionError(f"x = {x} lies outside [{iv.a}, {iv.b}]")
    return x


def kernel_Kn(x, t, n: int, interval) -> "Q":
    """Peano kernel K_n(x, t) on ``interval``, exact for rational input."""
    iv = as_interval(interval)
    n = _order(n)
    x, t = _point(x, iv), _point(t, iv)
    base = iv.a if t <= x else iv.b
    return (t - base) ** n / factorial(n)


def kernel_poly(x, n: int, interval) -> PiecewisePoly:
    """K_n(x, ·) as a piecewise polynomial in t (a single piece when x is
    an endpoint)."""
    iv = as_interval(interval)
    x = _point(x, iv)
    left = Poly((-iv.a, 1)) ** n * Q(1, factorial(n))
    right = Poly((-iv.b, 1)) ** n * Q(1, factorial(n))
    if x == iv.b:
        return PiecewisePoly.single(left, iv)
    if x == iv.a:
        return PiecewisePoly.single(right, iv)
    return PiecewisePoly((iv.a, x, iv.b), (left, right))


def kernel_integrals(x, n: int, interval) -> tuple:
    """``(∫ K_n dt, ∫ |K_n| dt)`` over the interval, in closed form:
    [(x-a)^(n+1) + (-1)^n (b-x)^(n+1)] / (n+1)! and
    [(x-a)^(n+1) + (b-x)^(n+1)] / (n+1)!."""
    iv = as_interval(interval)
    n = _order(n)
    x = _point(x, iv)
    p, q = (x - iv.a) ** (n + 1), (iv.b - x) ** (n + 1)
    d = factorial(n + 1)
    return (p + (-1) ** n * q) / d, (p + q) / d


def interior_sum(F, x, n, iv):
    """Σ_{k<n} [(b-x)^(k+1) + (-1)^k (x-a)^(k+1)] / (k+1)! · f^(k)(x)."""
    side = "right" if x == iv.a else "left"
    total = 0
    for k in range(n):
        w = ((iv.b - x) ** (k + 1) + (-1) ** k * (x - iv.a) ** (k + 1)) / factorial(k + 1)
        total = total + w * deriv_value(F, x, k, side)
    return total


def boundary_sum(F, x, n, iv):
    """Σ_{k<n} [(x-a)^(k+1) f^(k)(a) + (-1)^k (b-x)^(k+1) f^(k)(b)] / (k+1)!."""
    total = 0
    for k in range(n):
        fa = deriv_value(F, iv.a, k, "right")
        fb = deriv_value(F, iv.b, k, "left")
        total = total + ((x - iv.a) ** (k + 1) * fa + (-1) ** k * (iv.b - x) ** (k + 1) * fb) / factorial(k + 1)
    return total


def _nth_range(F, r, n, mode):
    r = coerce_range(r, mode)
    if r is None:
        return frange(F, n)
    check_range(F, n, r, f"f^({n})")
    return r


def _bound(variant, f, x, n, interval, perturbed, r):
    n = _order(n)
    mode, iv, F = lift(interval, f)
    x = _point(x, iv)
    require_smooth(F, n - 1)
    R = _nth_range(F, r, n, mode)
    signed, absolute = kernel_integrals(x, n, iv)
    if variant == "interior":
        resid = F.integrate() - interior_sum(F, x, n, iv)
        mu_coeff = (-1) ** n * signed
    else:
        resid = F.integrate() - boundary_sum(F, x, n, iv)
        mu_coeff = ((x - iv.a) ** (n + 1) + (-1) ** n * (iv.b - x) ** (n + 1)) / factorial(n + 1)
    ineq = f"{variant}_n"
    params = {"a": iv.a, "b": iv.b, "x": x, "n": n, "perturbed": bool(perturbed), "range": (R.lo, R.hi)}
    if perturbed:
        pert = (R.lo + R.hi) / 2 * mu_coeff
        return make_report(ineq + "_pert", abs(resid - pert), (R.hi - R.lo) / 2 * absolute,
                           perturbation=pert, mode=mode, ranges=[R], params=params)
    return make_report(ineq, abs(resid), R.sup_abs * absolute, mode=mode, ranges=[R], params=params)


def bound_interior_nth(f, x, n, interval=None, perturbed=False, r=None) -> BoundReport:
    """Order-n bound with derivatives at the interior point x.

    Classic: |∫f - Σ| <= ‖f^(n)‖ ∫|K_n|. Perturbed: subtract
    (-1)^n mu ∫K_n inside, bound (Gamma - gamma)/2 · ∫|K_n|.
    """
    return _bound("interior", f, x, n, interval, perturbed, r)


def bound_boundary_nth(f, x, n, interval=None, perturbed=False, r=None) -> BoundReport:
    """Order-n bound with derivatives at the endpoints a and b.

    Perturbed: subtract mu [(x-a)^(n+1) + (-1)^n (b-x)^(n+1)] / (n+1)!.
    """
    return _bound("boundary", f, x, n, interval, perturbed, r)


def identity_residual(f, x, n: int, variant: str = "interior", interval=None):
    """Exact residual of the order-n representation of ∫f (zero for any f
    whose (n-1)-th derivative is continuous)."""
    n = _order(n)
    mode, iv, F = lift(interval, f)
    if mode != EXACT:
        raise PreconditionError("identity residuals need a polynomial or piecewise polynomial f")
    x = _point(x, iv)
    dn = F.derivative(n)
    if variant == "interior":
        remainder = (-1) ** n * (kernel_poly(x, n, iv) * dn).integrate()
        return F.integrate() - interior_sum(F, x, n, iv) - remainder
    if variant == "boundary":
        weight = PiecewisePoly.single(Poly((x, -1)) ** n * Q(1, factorial(n)), iv)
        return F.integrate() - boundary_sum(F, x, n, iv) - (weight * dn).integrate()
    raise ValueError(f"unknown variant {variant!r}; expected 'interior' or 'boundary'")


__all__ = [
    "bound_boundary_nth",
    "bound_interior_nth",
    "identity_residual",
    "kernel_Kn",
    "kernel_integrals",
    "kernel_poly",
]
