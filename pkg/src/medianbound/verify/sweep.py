"""Randomized exact-arithmetic soundness sweeps."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .._rational import Q
from ..funcmodel import RangeBound
from ..inequalities import INEQUALITY_IDS, evaluate, get_spec, median_shift
from .generate import Profile, describe, random_instance

WORKERS_ENV = "MEDIANBOUND_WORKERS"
REPRO_ENV = "MEDIANBOUND_REPRO_DIR"


@dataclass
class SweepReport:
    ineq: str
    trials: int
    seed: int
    violations: int = 0
    max_ratio: Fraction = Q(0)
    argmax: dict | None = None
    mode: str = "Exact"
    profile: dict = field(default_factory=dict)
    errors: int = 0
    dominance_checked: int = 0
    dominance_violations: int = 0
    strict_checked: int = 0
    strict_violations: int = 0
    reproducers: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.violations == 0 and self.errors == 0 and self.dominance_violations == 0 and self.strict_violations == 0

    def to_dict(self) -> dict:
        return {
            "ineq": self.ineq,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "max_ratio": self.max_ratio,
            "argmax": self.argmax,
            "mode": self.mode,
            "profile": self.profile,
            "errors": self.errors,
            "dominance_checked": self.dominance_checked,
            "dominance_violations": self.dominance_violations,
            "strict_checked": self.strict_checked,
            "strict_violations": self.strict_violations,
            "reproducers": list(self.reproducers),
        }


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV)
    if raw:
        return max(1, int(raw))
    return os.cpu_count() or 1


def run_trial(ineq_id: str, seed: int, trial: int, profile: Profile) -> dict:
    """Evaluate one instance; returns a plain dict so it pickles cheaply."""
    spec = get_spec(ineq_id)
    inputs = random_instance(ineq_id, seed, trial, profile)
    out = {"trial": trial, "inputs": describe(inputs)}
    try:
        rep = evaluate(ineq_id, **inputs)
    except Exception as exc:  # reported, never swallowed
        out["error"] = f"{type(exc).__name__}: {exc}"
        return out
    out.update(lhs=rep.lhs, rhs=rep.rhs, ratio=rep.ratio, holds=rep.holds)
    if spec.perturbed:
        classic = evaluate(spec.classic, **inputs)
        r = rep.params["range"]
        out["dominated"] = rep.rhs <= classic.rhs
        if r[0] != -r[1] and classic.rhs > 0:
            out["strict"] = rep.rhs < classic.rhs
    return out


def _run_chunk(args):
    ineq_id, seed, trials, profile = args
    return [run_trial(ineq_id, seed, t, profile) for t in trials]


def _write_reproducer(ineq_id, seed, res) -> str:
    folder = Path(os.environ.get(REPRO_ENV, "reproducers"))
    folder.mkdir(parents=True, exist_ok=True)
    path = folder / f"{ineq_id}-seed{seed}-trial{res['trial']}.json"
    payload = {
        "ineq": ineq_id,
        "seed": seed,
        "trial": res["trial"],
        "inputs": res["inputs"],
        "lhs": str(res.get("lhs")),
        "rhs": str(res.get("rhs")),
        "error": res.get("error"),
    }
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return str(path)


def sweep(ineq_id: str, trials: int, seed: int, profile: Profile | None = None, workers: int | None = None) -> SweepReport:
    """Run ``trials`` exact-mode instances of ``ineq_id``.

    The report depends only on the arguments: trials are reduced in index
    order and the argmax keeps the lowest trial index on ties.
    """
    get_spec(ineq_id)
    prof = profile or Profile()
    report = SweepReport(ineq_id, trials, seed, profile=prof.to_dict())
    if trials <= 0:
        return report
    workers = worker_count() if workers is None else max(1, workers)
    if workers == 1 or trials < 2 * workers:
        results = _run_chunk((ineq_id, seed, range(trials), prof))
    else:
        size = -(-trials // (workers * 4))
        chunks = [(ineq_id, seed, range(i, min(i + size, trials)), prof) for i in range(0, trials, size)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    for res in results:
        bad = False
        if "error" in res:
            report.errors += 1
            bad = True
        else:
            if not res["holds"]:
                report.violations += 1
                bad = True
            if report.argmax is None or res["ratio"] > report.max_ratio:
                report.max_ratio = res["ratio"]
                report.argmax = {"trial": res["trial"], "inputs": res["inputs"],
                                 "lhs": str(res["lhs"]), "rhs": str(res["rhs"])}
            if "dominated" in res:
                report.dominance_checked += 1
                if not res["dominated"]:
                    report.dominance_violations += 1
                    bad = True
            if "strict" in res:
                report.strict_checked += 1
                if not res["strict"]:
                    report.strict_violations += 1
                    bad = True
        if bad:
            report.reproducers.append(_write_reproducer(ineq_id, seed, res))
    return report


def sweep_all(trials: int, seed: int, profile: Profile | None = None, ids=None, workers=None) -> list:
    return [sweep(i, trials, seed, profile, workers) for i in (ids or INEQUALITY_IDS)]


# median consistency ------------------------------------------------------------

_SHIFT_ORDER = {"ostrowski_pert": 1, "trapezoid_pert": 1, "ogruss_pert": 1}


def median_consistency(ineq_id: str, seed: int, trial: int, profile: Profile | None = None) -> tuple:
    """``(perturbed lhs, classic lhs of the median-shifted f)`` for one
    random instance; the two agree exactly."""
    spec = get_spec(ineq_id)
    if not spec.perturbed:
        raise ValueError(f"{ineq_id} is not a perturbed form")
    inputs = random_instance(ineq_id, seed, trial, profile)
    rep = evaluate(ineq_id, **inputs)
    n = inputs.get("n", _SHIFT_ORDER.get(ineq_id, 1))
    lo, hi = rep.params["range"]
    shifted = median_shift(inputs["f"], n, RangeBound(lo, hi))
    classic = evaluate(spec.classic, **{**inputs, "f": shifted, "r": None})
    return rep.lhs, classic.lhs
