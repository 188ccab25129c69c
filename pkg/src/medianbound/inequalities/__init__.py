"""Classic and median-perturbed integral inequalities."""

from ._fn import EXACT, FLOAT, FloatFn
from .first_degree import bound_cheby, bound_ostrowski, bound_ostrowski_gruss, bound_trapezoid
from .nth_degree import (
    bound_boundary_nth,
    bound_interior_nth,
    identity_residual,
    kernel_integrals,
    kernel_Kn,
    kernel_poly,
)
from .registry import INEQUALITY_IDS, REGISTRY, evaluate, get_spec
from .report import BoundReport, ShiftPolynomial, median_shift
from .zero_degree import (
    bound_gruss_classic,
    bound_gruss_mean,
    bound_gruss_stieltjes,
    bound_stieltjes,
    bound_stieltjes_weighted,
    bound_zero_mean,
)

__all__ = [
    "EXACT",
    "FLOAT",
    "FloatFn",
    "BoundReport",
    "ShiftPolynomial",
    "median_shift",
    "INEQUALITY_IDS",
    "REGISTRY",
    "evaluate",
    "get_spec",
    "bound_zero_mean",
    "bound_gruss_mean",
    "bound_gruss_classic",
    "bound_stieltjes",
    "bound_stieltjes_weighted",
    "bound_gruss_stieltjes",
    "bound_ostrowski",
    "bound_trapezoid",
    "bound_ostrowski_gruss",
    "bound_cheby",
    "kernel_Kn",
    "kernel_integrals",
    "kernel_poly",
    "bound_interior_nth",
    "bound_boundary_nth",
    "identity_residual",
]
