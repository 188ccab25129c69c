"""High-precision reference integrals."""

from __future__ import annotations

import mpmath

from .. import expr as _expr
from ..exceptions import NonConvergent
from ..funcmodel.piecewise import as_interval


def oracle_integral(e, interval, digits: int = 15):
    """∫ e over ``interval`` to ``digits`` significant digits.

    Tanh-sinh and Gauss-Legendre quadrature run at ``digits + 15`` working
    digits; each also reports its own error estimate. The result is returned
    only if both estimates are small and the two methods agree.
    """
    e = _expr.as_expr(e)
    iv = as_interval(interval)
    with mpmath.workdps(digits + 15):
        a = mpmath.mpf(iv.a.numerator) / iv.a.denominator
        b = mpmath.mpf(iv.b.numerator) / iv.b.denominator

        def f(t):
            return _expr.evaluate_mp(e, t)

        ts, err_ts = mpmath.quad(f, [a, b], method="tanh-sinh", error=True)
        gl, err_gl = mpmath.quad(f, [a, b], method="gauss-legendre", error=True)
        tol = mpmath.mpf(10) ** (-digits) * max(1, abs(ts))
        if abs(ts - gl) > tol or err_ts > tol or err_gl > tol:
            raise NonConvergent(f"quadrature methods disagree: {mpmath.nstr(ts, digits)} vs {mpmath.nstr(gl, digits)}")
        return +ts
