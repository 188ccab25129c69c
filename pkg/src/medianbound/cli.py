"""Command line interface: ``medianbound bound|integrate|verify|sharpness``.

Every command prints one JSON envelope::

    {"schema_version": "1", "command": ..., "inputs": {...},
     "result": {...}, "warnings": [...]}

Numbers are strings. Exact values are written as ``"p/q"`` (or an integer)
with a ``<name>_decimal`` sibling; float values use their shortest repr in
both places.

Exit codes: 0 success, 1 usage or parse error, 2 inequality violation,
3 tolerance not met.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from ._rational import fmt_decimal, fmt_exact, to_rational
from .exceptions import MedianBoundError
from .funcmodel import BVFunction, PiecewisePoly, RangeBound, Rigor, parse_bv, parse_piecewise

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_TOLERANCE = 3


class UsageError(Exception):
    pass


# numbers -------------------------------------------------------------------


def _num(value) -> str:
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers")
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return repr(value)
    if isinstance(value, (int, Fraction)):
        return fmt_exact(value)
    return str(value)


def _dec(value) -> str:
    if isinstance(value, float):
        return _num(value)
    return fmt_decimal(value)


def _put(out: dict, name: str, value):
    out[name] = _num(value)
    out[name + "_decimal"] = _dec(value)


def _range(r) -> dict:
    if isinstance(r, RangeBound):
        out = {"rigor": r.rigor.value}
        lo, hi = r.lo, r.hi
    else:
        out = {}
        lo, hi = r
    _put(out, "lo", lo)
    _put(out, "hi", hi)
    return out


# result encoders -----------------------------------------------------------


def encode_report(rep) -> dict:
    out = {"ineq": rep.ineq, "mode": rep.mode, "rigor": rep.rigor.value, "holds": rep.holds}
    _put(out, "lhs", rep.lhs)
    _put(out, "rhs", rep.rhs)
    _put(out, "ratio", rep.ratio)
    _put(out, "perturbation", rep.perturbation)
    params = {}
    for k, v in rep.params.items():
        if k.startswith("range"):
            params[k] = _range(v)
        elif isinstance(v, bool):
            params[k] = v
        elif isinstance(v, int) and k == "n":
            params[k] = v
        else:
            params[k] = _num(v)
    out["params"] = params
    return out


def encode_integral(res) -> dict:
    out = {"rule": res.rule, "n": res.n, "mode": res.mode, "rigor": res.rigor.value, "converged": res.converged}
    _put(out, "estimate", res.estimate)
    _put(out, "radius", res.radius)
    if res.tol is not None:
        out["tol"] = _num(res.tol)
    out["partition"] = [_num(p) for p in res.partition.points]
    cells = []
    for (s, t), e, r, rb in zip(res.partition.cells(), res.cell_estimates, res.cell_radii, res.ranges):
        cell = {"s": _num(s), "t": _num(t), "range": _range(rb)}
        _put(cell, "estimate", e)
        _put(cell, "radius", r)
        cells.append(cell)
    out["cells"] = cells
    return out


def encode_sweep(rep) -> dict:
    d = rep.to_dict()
    out = {k: d[k] for k in ("ineq", "trials", "seed", "violations", "mode", "profile", "errors",
                            "dominance_checked", "dominance_violations", "strict_checked",
                            "strict_violations", "reproducers")}
    _put(out, "max_ratio", rep.max_ratio)
    out["argmax"] = rep.argmax
    out["ok"] = rep.ok
    return out


def encode_case(case) -> dict:
    out = {"ineq": case.ineq, "construction": case.construction, "citation": case.citation, "sharp": case.sharp}
    _put(out, "lhs", case.lhs)
    _put(out, "rhs", case.rhs)
    _put(out, "achieved_ratio", case.achieved_ratio)
    _put(out, "expected_ratio", case.expected_ratio)
    return out


def envelope(command: str, inputs: dict, result, warnings=()) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "inputs": inputs,
            "result": result, "warnings": list(warnings)}


# input parsing -------------------------------------------------------------


def _function(text):
    """A pw[...] literal, a bv[...] literal, or an expression string."""
    if text is None:
        return None
    s = text.strip()
    if s.startswith("pw["):
        return parse_piecewise(s)
    if s.startswith("bv["):
        return parse_bv(s)
    from .expr import parse

    return parse(s)


def _rational(text, name):
    if text is None:
        return None
    try:
        return to_rational(text)
    except ValueError:
        raise UsageError(f"--{name}: not a number: {text!r}") from None


def _pair(text, name):
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--{name} expects lo,hi")
    lo, hi = (_rational(p, name) for p in parts)
    return RangeBound(lo, hi, Rigor.EXACT)


def _interval(args, *fns):
    if args.a is None and args.b is None:
        for f in fns:
            if isinstance(f, (PiecewisePoly, BVFunction)):
                return (f.a, f.b)
        raise UsageError("--a and --b are required unless a pw[...] or bv[...] literal fixes the interval")
    if args.a is None or args.b is None:
        raise UsageError("give both --a and --b")
    return (_rational(args.a, "a"), _rational(args.b, "b"))


def _inputs(args, names):
    return {k: getattr(args, k) for k in names if getattr(args, k, None) is not None}


# commands --------------------------------------------------------------------


def cmd_bound(args):
    from .inequalities import FLOAT, REGISTRY, evaluate

    ineq = args.ineq
    if args.perturbed and not ineq.endswith("_pert"):
        ineq = ineq + "_pert"
    if ineq not in REGISTRY:
        raise UsageError(f"unknown inequality id {ineq!r}; known: {', '.join(REGISTRY)}")
    f, g, l, u = (_function(v) for v in (args.f, args.g, args.l, args.u))
    if u is not None and not isinstance(u, BVFunction):
        if isinstance(u, PiecewisePoly):
            u = BVFunction.from_piecewise(u)
        else:
            raise UsageError("--u must be a bv[...] or pw[...] literal")
    interval = _interval(args, u, f, g, l)
    n = args.n
    rep = evaluate(ineq, f=f, g=g, l=l, u=u, interval=interval, x=_rational(args.x, "x"), n=n,
                   r=_pair(args.range, "range"), rg=_pair(args.range_g, "range-g"))
    warnings = []
    if rep.mode == FLOAT:
        warnings.append("non-polynomial input: evaluated in floating point with tolerance 1e-9*max(1, rhs)")
    if rep.rigor is Rigor.SAMPLED:
        warnings.append("ranges are sampled, not rigorous")
    inputs = _inputs(args, ("f", "g", "l", "u", "a", "b", "x", "n", "range", "range_g"))
    inputs["ineq"] = ineq
    env = envelope("bound", inputs, encode_report(rep), warnings)
    return env, EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_integrate(args):
    from .quadrature import adaptive_integrate, certified_midpoint, certified_nth

    f = _function(args.f)
    if isinstance(f, BVFunction):
        raise UsageError("--f must be an expression or a pw[...] literal")
    interval = _interval(args, f)
    method = "sampled" if args.sampled else "enclosure"
    n = 1 if args.rule == "pmid" else (1 if args.n is None else args.n)
    if args.tol is not None:
        tol = _rational(args.tol, "tol")
        res = adaptive_integrate(f, interval, tol, rule=args.rule, n=n, max_cells=args.max_cells,
                                 best_effort=args.best_effort, range_method=method)
    else:
        cells = args.cells or 1
        if args.rule == "pmid":
            res = certified_midpoint(f, interval, cells=cells, best_effort=args.best_effort, range_method=method)
        else:
            res = certified_nth(f, interval, n=n, variant=args.rule, cells=cells,
                                best_effort=args.best_effort, range_method=method)
    warnings = []
    if res.mode == "Float":
        warnings.append("non-polynomial input: estimate enclosed with outward-rounded interval arithmetic")
    if res.rigor is Rigor.SAMPLED:
        warnings.append("ranges are sampled, not rigorous: the radius is not a certificate")
    if not res.converged:
        warnings.append(f"tolerance not met within {args.max_cells} cells")
    inputs = _inputs(args, ("f", "a", "b", "cells", "tol", "rule", "n", "max_cells"))
    env = envelope("integrate", inputs, encode_integral(res), warnings)
    return env, EXIT_OK if res.converged else EXIT_TOLERANCE


def cmd_verify(args):
    from .inequalities import INEQUALITY_IDS
    from .verify import Profile, sweep

    ids = INEQUALITY_IDS if args.ineq == "all" else (args.ineq,)
    for i in ids:
        if i not in INEQUALITY_IDS:
            raise UsageError(f"unknown inequality id {i!r}; known: all, {', '.join(INEQUALITY_IDS)}")
    prof = Profile(degree=args.degree, pieces=args.pieces, coeff_bound=args.coeff_bound)
    reports = [sweep(i, args.trials, args.seed, prof, workers=args.workers) for i in ids]
    ok = all(r.ok for r in reports)
    inputs = _inputs(args, ("ineq", "trials", "seed", "degree", "pieces", "coeff_bound"))
    env = envelope("verify", inputs, {"ok": ok, "reports": [encode_sweep(r) for r in reports]})
    return env, EXIT_OK if ok else EXIT_VIOLATION


CSV_FIELDS = ("ineq", "lhs", "rhs", "achieved_ratio", "expected_ratio", "construction", "citation")


def sharpness_csv(cases) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\r\n")
    w.writerow(CSV_FIELDS)
    for c in cases:
        w.writerow([c.ineq, _num(c.lhs), _num(c.rhs), _num(c.achieved_ratio), _num(c.expected_ratio),
                    json.dumps(c.construction, sort_keys=True), c.citation])
    return buf.getvalue()


def cmd_sharpness(args):
    from .inequalities import INEQUALITY_IDS
    from .verify import sharpness_cases

    if args.ineq is not None and args.ineq not in INEQUALITY_IDS:
        raise UsageError(f"unknown inequality id {args.ineq!r}")
    cases = sharpness_cases(args.ineq)
    ok = all(c.sharp for c in cases)
    code = EXIT_OK if ok else EXIT_VIOLATION
    if args.format == "csv":
        return sharpness_csv(cases), code
    inputs = _inputs(args, ("ineq", "format"))
    env = envelope("sharpness", inputs, {"all_sharp": ok, "cases": [encode_case(c) for c in cases]})
    return env, code


# parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="medianbound", description="Median-perturbed integral inequalities and certified quadrature.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bound", help="evaluate both sides of one inequality")
    b.add_argument("--ineq", required=True)
    b.add_argument("--f", required=True, help="expression or pw[...] literal")
    b.add_argument("--g")
    b.add_argument("--l")
    b.add_argument("--u", help="bv[...] literal")
    b.add_argument("--a")
    b.add_argument("--b")
    b.add_argument("--x")
    b.add_argument("--n", type=int)
    b.add_argument("--perturbed", action="store_true")
    b.add_argument("--range", help="lo,hi bounding the quantity the bound is built on")
    b.add_argument("--range-g", dest="range_g", help="lo,hi bounding g")
    b.set_defaults(func=cmd_bound)

    q = sub.add_parser("integrate", help="certified integral")
    q.add_argument("--f", required=True)
    q.add_argument("--a")
    q.add_argument("--b")
    how = q.add_mutually_exclusive_group()
    how.add_argument("--cells", type=int)
    how.add_argument("--tol")
    q.add_argument("--rule", choices=("pmid", "interior_n", "boundary_n"), default="pmid")
    q.add_argument("--n", type=int)
    q.add_argument("--max-cells", dest="max_cells", type=int, default=1024)
    q.add_argument("--sampled", action="store_true", help="use sampled (non-rigorous) ranges")
    q.add_argument("--best-effort", dest="best_effort", action="store_true", help="accept sampled ranges")
    q.set_defaults(func=cmd_integrate)

    v = sub.add_parser("verify", help="randomized exact soundness sweep")
    v.add_argument("--ineq", required=True, help="inequality id or 'all'")
    v.add_argument("--trials", type=int, default=100)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--degree", type=int, default=6)
    v.add_argument("--pieces", type=int, default=5)
    v.add_argument("--coeff-bound", dest="coeff_bound", type=int, default=5)
    v.add_argument("--workers", type=int, help="worker processes (default: MEDIANBOUND_WORKERS or CPU count)")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sharpness", help="evaluate the shipped extremal cases")
    s.add_argument("--ineq")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_sharpness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        payload, code = args.func(args)
    except (UsageError, MedianBoundError, ValueError, KeyError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"error: {msg}\n")
        return EXIT_USAGE
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    sys.stdout.write(text)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
