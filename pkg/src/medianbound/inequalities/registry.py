"""Stable inequality identifiers and a uniform entry point."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..exceptions import PreconditionError
from . import first_degree as fd
from . import nth_degree as nd
from . import zero_degree as zd


@dataclass(frozen=True)
class IneqSpec:
    id: str
    kind: str  # which inputs a random instance needs
    needs: tuple
    perturbed: bool
    classic: str | None  # id of the classic counterpart of a perturbed form
    call: Callable


def _spec(id, kind, needs, call, perturbed=False, classic=None):
    return IneqSpec(id, kind, needs, perturbed, classic, call)


_SPECS = [
    _spec("zero_mean", "zero_mean", ("f", "l"),
          lambda a: zd.bound_zero_mean(a["f"], a["l"], a.get("interval"), r=a.get("r"))),
    _spec("gruss_mean", "pair", ("f", "g"),
          lambda a: zd.bound_gruss_mean(a["f"], a["g"], a.get("interval"), r=a.get("r"))),
    _spec("gruss", "pair", ("f", "g"),
          lambda a: zd.bound_gruss_classic(a["f"], a["g"], a.get("interval"), rf=a.get("r"), rg=a.get("rg"))),
    _spec("stieltjes", "closed_bv", ("f", "u"),
          lambda a: zd.bound_stieltjes(a["f"], a["u"], r=a.get("r"), interval=a.get("interval"))),
    _spec("stieltjes_weighted", "weighted_bv", ("f", "u", "l"),
          lambda a: zd.bound_stieltjes(a["f"], a["u"], r=a.get("r"), l=a["l"], interval=a.get("interval"))),
    _spec("gruss_stieltjes", "open_bv", ("f", "g", "u"),
          lambda a: zd.bound_gruss_stieltjes(a["f"], a["g"], a["u"], r=a.get("r"), interval=a.get("interval"))),
    _spec("ostrowski", "point", ("f", "x"),
          lambda a: fd.bound_ostrowski(a["f"], a["x"], a.get("interval"), False, r=a.get("r"))),
    _spec("ostrowski_pert", "point", ("f", "x"),
          lambda a: fd.bound_ostrowski(a["f"], a["x"], a.get("interval"), True, r=a.get("r")), True, "ostrowski"),
    _spec("trapezoid", "point", ("f", "x"),
          lambda a: fd.bound_trapezoid(a["f"], a["x"], a.get("interval"), False, r=a.get("r"))),
    _spec("trapezoid_pert", "point", ("f", "x"),
          lambda a: fd.bound_trapezoid(a["f"], a["x"], a.get("interval"), True, r=a.get("r")), True, "trapezoid"),
    _spec("ogruss", "smooth_pair", ("f", "g"),
          lambda a: fd.bound_ostrowski_gruss(a["f"], a["g"], a.get("interval"), False, rf=a.get("r"), rg=a.get("rg"))),
    _spec("ogruss_pert", "smooth_pair", ("f", "g"),
          lambda a: fd.bound_ostrowski_gruss(a["f"], a["g"], a.get("interval"), True, rf=a.get("r"), rg=a.get("rg")), True, "ogruss"),
    _spec("cheby", "smooth_pair", ("f", "g"),
          lambda a: fd.bound_cheby(a["f"], a["g"], a.get("interval"))),
    _spec("interior_n", "nth", ("f", "x", "n"),
          lambda a: nd.bound_interior_nth(a["f"], a["x"], a["n"], a.get("interval"), False, r=a.get("r"))),
    _spec("interior_n_pert", "nth", ("f", "x", "n"),
          lambda a: nd.bound_interior_nth(a["f"], a["x"], a["n"], a.get("interval"), True, r=a.get("r")), True, "interior_n"),
    _spec("boundary_n", "nth", ("f", "x", "n"),
          lambda a: nd.bound_boundary_nth(a["f"], a["x"], a["n"], a.get("interval"), False, r=a.get("r"))),
    _spec("boundary_n_pert", "nth", ("f", "x", "n"),
          lambda a: nd.bound_boundary_nth(a["f"], a["x"], a["n"], a.get("interval"), True, r=a.get("r")), True, "boundary_n"),
]

REGISTRY = {s.id: s for s in _SPECS}
INEQUALITY_IDS = tuple(REGISTRY)


def get_spec(ineq_id: str) -> IneqSpec:
    try:
        return REGISTRY[ineq_id]
    except KeyError:
        raise KeyError(f"unknown inequality id {ineq_id!r}; known: {', '.join(INEQUALITY_IDS)}") from None


def evaluate(ineq_id: str, **inputs):
    """Evaluate one inequality by id.

    Inputs are keyword arguments: ``f``, ``g``, ``l`` (functions), ``u``
    (BV function or literal), ``interval``, ``x``, ``n``, ``r`` (the range the
    bound is built on) and ``rg`` (range of g where relevant).
    """
    spec = get_spec(ineq_id)
    missing = [k for k in spec.needs if inputs.get(k) is None]
    if missing:
        raise PreconditionError(f"{ineq_id} needs {', '.join(missing)}")
    return spec.call(inputs)
