"""Randomized soundness sweeps, extremal cases and reference integrals."""

from .generate import KINDS, Profile, describe, random_function, random_instance, rng_for
from .oracle import oracle_integral
from .sharpness import SharpnessCase, sharpness_cases
from .sweep import SweepReport, median_consistency, run_trial, sweep, sweep_all, worker_count

__all__ = [
    "KINDS",
    "Profile",
    "SharpnessCase",
    "SweepReport",
    "describe",
    "median_consistency",
    "oracle_integral",
    "random_function",
    "random_instance",
    "rng_for",
    "run_trial",
    "sharpness_cases",
    "sweep",
    "sweep_all",
    "worker_count",
]
