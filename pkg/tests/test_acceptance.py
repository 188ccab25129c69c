"""Acceptance suite: one printed pass/fail line per criterion.

Tolerances are pinned here and nowhere else.
"""

import json
import math
import os
import subprocess
import sys
import time
from fractions import Fraction as F

import jsonschema
import mpmath
import pytest

from medianbound.inequalities import (
    INEQUALITY_IDS,
    bound_interior_nth,
    bound_ostrowski,
    identity_residual,
    kernel_integrals,
    kernel_poly,
)
from medianbound.quadrature import Partition, certified_midpoint, certified_nth
from medianbound.schema import load_schema
from medianbound.verify import Profile, median_consistency, random_function, random_instance, rng_for, sharpness_cases, sweep

SEED = 20240601
SWEEP_TRIALS = 1000
SWEEP_BUDGET_S = 600.0
CONSISTENCY_TRIALS = 500
IDENTITY_POLYS = 500
IDENTITY_POINTS = 5
CONTAINMENT_MIN_RUNS = 300
CONTAINMENT_MIN_FUNCTIONS = 10
RADIUS_RTOL = 1e-12
SLOPE_TARGET, SLOPE_TOL = 2.0, 0.2
CROSS_RULE_TRIALS = 300

mpmath.mp.dps = 40
E = mpmath.e


# 1 and 4 share one sweep ---------------------------------------------------------

@pytest.fixture(scope="module")
def sweeps(tmp_path_factory):
    os.environ.setdefault("MEDIANBOUND_REPRO_DIR", str(tmp_path_factory.mktemp("reproducers")))
    start = time.perf_counter()
    reports = [sweep(i, SWEEP_TRIALS, SEED) for i in INEQUALITY_IDS]
    return reports, time.perf_counter() - start


def test_c1_soundness_sweeps(sweeps, criterion):
    reports, elapsed = sweeps
    violations = sum(r.violations for r in reports)
    errors = sum(r.errors for r in reports)
    complete = len(reports) == 17 and all(r.trials == SWEEP_TRIALS and r.mode == "Exact" for r in reports)
    worst = max(reports, key=lambda r: r.max_ratio)
    ok = complete and violations == 0 and errors == 0 and elapsed < SWEEP_BUDGET_S
    criterion(1, "soundness sweeps", ok,
              f"17 ids x {SWEEP_TRIALS} trials, {violations} violations, {errors} errors, "
              f"max ratio {float(worst.max_ratio):.4f} ({worst.ineq}), {elapsed:.1f}s of {SWEEP_BUDGET_S:.0f}s")
    assert ok


def test_c2_sharpness(criterion):
    cases = {c.ineq: c for c in sharpness_cases()}
    expected = {
        "zero_mean": F(1),
        "stieltjes": F(1),
        "gruss_stieltjes": F(1, 4),
        "ostrowski": F(1, 2),
        "cheby": F(1, 12),
        "ogruss": F(1, 4),
    }
    got = {k: (cases[k].lhs, cases[k].rhs) for k in expected if k in cases}
    ok = all(got.get(k) == (v, v) for k, v in expected.items())
    ok = ok and all(cases[k].achieved_ratio == 1 for k in expected)
    ok = ok and all(isinstance(cases[k].lhs, F) for k in expected)
    criterion(2, "sharpness", ok, ", ".join(f"{k} {got.get(k, ('missing',))[0]}" for k in expected))
    assert ok


def test_c3_median_consistency(criterion):
    ids = ("ostrowski_pert", "trapezoid_pert", "interior_n_pert", "boundary_n_pert")
    mismatches = 0
    for ineq in ids:
        for trial in range(CONSISTENCY_TRIALS):
            a, b = median_consistency(ineq, SEED, trial)
            if not (isinstance(a, F) and a == b):
                mismatches += 1
    ok = mismatches == 0
    criterion(3, "median consistency", ok, f"{len(ids)} ids x {CONSISTENCY_TRIALS} trials, {mismatches} mismatches")
    assert ok


def test_c4_perturbed_dominance(sweeps, criterion):
    reports, _ = sweeps
    pert = [r for r in reports if r.ineq.endswith("_pert")]
    checked = sum(r.dominance_checked for r in pert)
    dom_bad = sum(r.dominance_violations for r in pert)
    strict = sum(r.strict_checked for r in pert)
    strict_bad = sum(r.strict_violations for r in pert)
    ok = len(pert) == 5 and checked == 5 * SWEEP_TRIALS and dom_bad == 0 and strict > 0 and strict_bad == 0
    criterion(4, "perturbed dominance", ok,
              f"{checked} dominance checks, {dom_bad} failures; {strict} strict checks, {strict_bad} failures")
    assert ok


def test_c5_identity_residuals(criterion):
    prof = Profile(kind="smooth", pieces=1, degree=6, coeff_bound=5)
    nonzero = runs = 0
    for i in range(IDENTITY_POLYS):
        f = random_function(SEED, i, prof, "identity")
        rng = rng_for(SEED, i, "identity-x")
        for n in range(1, 5):
            for _ in range(IDENTITY_POINTS):
                x = f.a + (f.b - f.a) * F(rng.randint(0, 240), 240)
                for variant in ("interior", "boundary"):
                    runs += 1
                    if identity_residual(f, x, n, variant) != 0:
                        nonzero += 1
    kernel_bad = kernel_runs = 0
    for a, b in ((F(0), F(1)), (F(-1), F(2))):
        for n in range(1, 7):
            for k in range(21):
                x = a + (b - a) * F(k, 20)
                K = kernel_poly(x, n, (a, b))
                kernel_runs += 1
                if kernel_integrals(x, n, (a, b)) != (K.integrate(), K.abs_integral()):
                    kernel_bad += 1
    ok = nonzero == 0 and kernel_bad == 0
    criterion(5, "identity residuals", ok,
              f"{runs} residuals, {nonzero} nonzero; {kernel_runs} kernel closed forms, {kernel_bad} mismatches")
    assert ok


# closed-form corpus: expression, interval, exact value
CORPUS = [
    ("exp(x)", (0, 1), lambda: E - 1),
    ("sin(x)", (0, 2), lambda: 1 - mpmath.cos(2)),
    ("cos(x)", (0, 1), lambda: mpmath.sin(1)),
    ("x * exp(x)", (0, 1), lambda: mpmath.mpf(1)),
    ("log(x + 1)", (0, 1), lambda: 2 * mpmath.log(2) - 1),
    ("sqrt(x + 1)", (0, 3), lambda: mpmath.mpf(14) / 3),
    ("1 / (x + 1)", (0, 1), lambda: mpmath.log(2)),
    ("exp(-x^2)", (0, 1), lambda: mpmath.sqrt(mpmath.pi) / 2 * mpmath.erf(1)),
    ("x^3 - 2 * x + 1", (-1, 2), lambda: mpmath.mpf(15) / 4),
    ("sin(x) * cos(x)", (0, 1), lambda: mpmath.sin(1) ** 2 / 2),
    ("x * sin(x)", (0, 3), lambda: mpmath.sin(3) - 3 * mpmath.cos(3)),
]
RULES = [("pmid", 1), ("interior_n", 1), ("interior_n", 2), ("interior_n", 3),
         ("boundary_n", 1), ("boundary_n", 2), ("boundary_n", 3)]
CELLS = (1, 2, 4, 8, 16)


def _mp(v):
    v = F(v)
    return mpmath.mpf(v.numerator) / v.denominator


def _integrate(text, iv, rule, n, cells):
    if rule == "pmid":
        return certified_midpoint(text, iv, cells=cells)
    return certified_nth(text, iv, n=n, variant=rule.split("_")[0], cells=cells)


def test_c6_certified_integration(criterion):
    runs = misses = 0
    for text, iv, truth in CORPUS:
        t = truth()
        for rule, n in RULES:
            for cells in CELLS:
                res = _integrate(text, iv, rule, n, cells)
                runs += 1
                if abs(_mp(res.estimate) - t) > _mp(res.radius):
                    misses += 1
    four = certified_midpoint("exp(x)", (0, 1), cells=4)
    rel = abs(_mp(four.radius) - (E - 1) / 128) / ((E - 1) / 128)
    ns = [4, 8, 16, 32, 64]
    errs = [abs(_mp(certified_midpoint("exp(x)", (0, 1), cells=k).estimate) - (E - 1)) for k in ns]
    xs = [math.log(k) for k in ns]
    ys = [float(mpmath.log(e)) for e in errs]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    slope = -sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    ok = (len(CORPUS) >= CONTAINMENT_MIN_FUNCTIONS and runs >= CONTAINMENT_MIN_RUNS and misses == 0
          and rel <= RADIUS_RTOL and abs(slope - SLOPE_TARGET) <= SLOPE_TOL)
    criterion(6, "certified integration", ok,
              f"{runs} runs over {len(CORPUS)} functions, {misses} misses; "
              f"4-cell radius rel err {float(rel):.1e}; slope {slope:.3f}")
    assert ok


def test_c7_cross_rule(criterion):
    mismatches = 0
    for text, iv, _ in CORPUS:
        for cells in CELLS:
            a = certified_midpoint(text, iv, cells=cells)
            b = certified_nth(text, iv, n=1, variant="interior", cells=cells)
            if (a.estimate, a.radius) != (b.estimate, b.radius):
                mismatches += 1
    prof = Profile(kind="smooth", pieces=3, degree=5, smoothness=1)
    for trial in range(CROSS_RULE_TRIALS // 3):
        f = random_function(SEED, trial, prof, "cross")
        for cells in (1, 3, 7):
            part = Partition.uniform(f.interval, cells)
            a = certified_midpoint(f, f.interval, part)
            b = certified_nth(f, f.interval, part, n=1, variant="interior")
            if (a.estimate, a.radius) != (b.estimate, b.radius):
                mismatches += 1
    scaled = 0
    for trial in range(CROSS_RULE_TRIALS):
        inst = random_instance("ostrowski_pert", SEED, trial)
        f, x, iv = inst["f"], inst["x"], inst["interval"]
        nth = bound_interior_nth(f, x, 1, iv, perturbed=True)
        ost = bound_ostrowski(f, x, iv, perturbed=True)
        if nth.lhs != (F(iv[1]) - F(iv[0])) * ost.lhs:
            scaled += 1
    ok = mismatches == 0 and scaled == 0
    criterion(7, "cross-rule regression", ok,
              f"{mismatches} interior n=1 vs midpoint mismatches; {scaled} scaled Ostrowski mismatches")
    assert ok


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "medianbound.cli", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_c8_cli_contract(criterion, tmp_path, monkeypatch, capsys):
    schema = load_schema()
    problems = []
    env_runs = [
        (0, ["bound", "--ineq", "gruss_stieltjes", "--f", "pw[(0,1): x]", "--g", "pw[(0,1): x]",
             "--u", "bv[pieces: pw[(0,1): 0]; jumps: (0,0,-1,0), (1,0,1,0)]", "--a", "0", "--b", "1"]),
        (0, ["integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--cells", "4"]),
        (3, ["integrate", "--f", "exp(x)", "--a", "0", "--b", "1", "--tol", "1e-12", "--max-cells", "2"]),
        (0, ["verify", "--ineq", "trapezoid_pert", "--trials", "25", "--seed", "7", "--workers", "1"]),
        (0, ["sharpness"]),
    ]
    os.environ.setdefault("MEDIANBOUND_REPRO_DIR", str(tmp_path))
    docs = {}
    for want, args in env_runs:
        code, out, _ = _cli(*args)
        try:
            doc = json.loads(out)
            jsonschema.validate(doc, schema)
            docs.setdefault(args[0], doc)
        except (ValueError, jsonschema.ValidationError) as exc:
            problems.append(f"{args[0]}: {exc.__class__.__name__}")
            continue
        if code != want:
            problems.append(f"{args[0]} exit {code} != {want}")
    code, out, err = _cli("bound", "--ineq", "ostrowski", "--f", "pw[(0,1): x]", "--a", "0", "--b", "1")
    if code != 1 or out or not err.startswith("error"):
        problems.append("usage error")
    # violation exit code: force every trial to report a failed comparison
    import importlib

    from medianbound.cli import main

    sw = importlib.import_module("medianbound.verify.sweep")
    real = sw.run_trial
    monkeypatch.setattr(sw, "run_trial", lambda *a: {**real(*a), "holds": False})
    code = main(["verify", "--ineq", "cheby", "--trials", "2", "--workers", "1"])
    capsys.readouterr()
    if code != 2:
        problems.append(f"violation exit {code} != 2")
    # exact rational round trip through the emitted strings
    lhs = docs["bound"]["result"]["lhs"]
    code, out, _ = _cli("bound", "--ineq", "ostrowski", "--f", f"pw[(0,1): {lhs}]", "--a", "0", "--b", "1",
                        "--x", lhs)
    if F(lhs) != F(1, 4) or json.loads(out)["inputs"]["x"] != lhs:
        problems.append("round trip")
    ok = not problems
    criterion(8, "CLI contract", ok, "; ".join(problems) or "4 commands schema-valid, exit codes 0/1/2/3, p/q round trip")
    assert ok
