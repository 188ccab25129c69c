import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from medianbound import interval as I
from medianbound.exceptions import DiscontinuousAtJump, EmptyIntersection, ParseError
from medianbound.funcmodel import (
    PiecewisePoly,
    Poly,
    Rigor,
    derivative_range,
    integrate_exact,
    parse_bv,
    parse_piecewise,
    range_enclosure,
    real_roots,
    sampled_range,
    stieltjes_integral,
    sup_norm,
    total_variation,
)
from medianbound.funcmodel.poly import abs_integral, extreme_values, from_roots
from medianbound.verify import Profile, random_function

INDICATOR = "bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1), (1,1,0,1)]"
ENDPOINTS = "bv[pieces: pw[(0,1): 0]; jumps: (0,0,-1,0), (1,0,1,0)]"


# interval arithmetic --------------------------------------------------------

def test_outward_rounding_contains_exact_sum():
    x = I.FInterval(0.1) + I.FInterval(0.2)
    assert x.contains(F(1, 10) + F(2, 10)) or x.lo <= 0.3 <= x.hi
    assert x.lo < x.hi


def test_interval_mul_signs():
    x = I.FInterval(-2, 3) * I.FInterval(-1, 4)
    assert x.lo <= -8 and x.hi >= 12


def test_interval_pow_even_straddles_zero():
    x = I.FInterval(-2, 1) ** 2
    assert x.lo <= 0 <= x.hi and x.hi >= 4


@pytest.mark.parametrize("fn,ref", [(I.exp, math.exp), (I.sin, math.sin), (I.cos, math.cos)])
def test_elementary_enclosures(fn, ref):
    for lo, hi in [(0, 0.5), (-1, 2), (1, 7)]:
        enc = fn(I.FInterval(lo, hi))
        for k in range(21):
            v = lo + (hi - lo) * k / 20
            assert enc.lo <= ref(v) <= enc.hi


def test_log_sqrt_enclosures():
    x = I.FInterval(0.5, 4)
    assert I.log(x).lo <= math.log(0.5) and I.log(x).hi >= math.log(4)
    assert I.sqrt(x).lo <= math.sqrt(0.5) and I.sqrt(x).hi >= 2


def test_round_up_down_bracket():
    v = F(1, 3)
    assert F(I.round_down(v)) <= v <= F(I.round_up(v))


# polynomials ----------------------------------------------------------------

def test_poly_arithmetic():
    p = Poly([1, 1])
    assert p * p == Poly([1, 2, 1])
    assert (p * p).deriv() == Poly([2, 2])
    q, r = (p * p).divmod(p)
    assert q == p and r.is_zero()


def test_roots_of_known_product():
    p = from_roots([F(-1), F(1, 3), F(2)])
    roots = real_roots(p, -5, 5)
    assert [r.lo for r in roots] == [F(-1), F(1, 3), F(2)]
    assert all(r.exact for r in roots)


def test_irrational_roots_bracketed():
    roots = real_roots(Poly([-2, 0, 1]), -3, 3)
    assert len(roots) == 2
    for r, ref in zip(roots, (-math.sqrt(2), math.sqrt(2))):
        assert r.lo <= ref <= r.hi


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=7))
def test_root_count_matches_sign_changes_on_grid(coeffs):
    p = Poly(coeffs)
    if p.is_zero() or p.is_const():
        return
    roots = real_roots(p, -4, 4)
    grid = [F(k, 64) - 4 for k in range(513)]
    vals = [p(x) for x in grid]
    changes = sum(1 for u, v in zip(vals, vals[1:]) if u * v < 0)
    zeros = sum(1 for v in vals[1:-1] if v == 0)
    # roots are reported on the open interval; crossings and interior zeros each need one
    assert len(roots) >= changes and len(roots) >= zeros
    assert len(roots) <= p.degree
    for r in roots:
        assert p(r.lo) * p(r.hi) <= 0 or r.exact


def test_extreme_values_and_abs_integral():
    p = Poly([0, -1, 0, 1])  # x^3 - x
    assert extreme_values(p.deriv(), 0, 2) == (F(-1), F(11))
    lo, hi = abs_integral(Poly([F(-1, 2), 1]), 0, 1)
    assert lo == hi == F(1, 4)


# piecewise and literals -----------------------------------------------------

@pytest.mark.parametrize("text", [
    "pw[(0,1): x^2]",
    "pw[(0,1/2): (-1); (1/2,1): 1]",
    "pw[(-1,0): x^3 - 2/3 * x; (0,5/2): 7]",
])
def test_piecewise_literal_round_trip(text):
    f = parse_piecewise(text)
    assert parse_piecewise(f.to_literal()) == f


@pytest.mark.parametrize("text", [INDICATOR, ENDPOINTS, "bv[pieces: pw[(0,1): x]; jumps: (1/2,1/2,2,1/2)]"])
def test_bv_literal_round_trip(text):
    u = parse_bv(text)
    assert parse_bv(u.to_literal()) == u


@pytest.mark.parametrize("text", ["pw[(0,1) x]", "pw[(1,0): x]", "pw[(0,1): x; (2,3): x]", "bv[pieces: x]"])
def test_bad_literals(text):
    with pytest.raises(ParseError):
        (parse_bv if text.startswith("bv") else parse_piecewise)(text)


def test_integrate_exact_examples():
    assert integrate_exact(parse_piecewise("pw[(0,1): x^2]")) == F(1, 3)
    assert integrate_exact(parse_piecewise("pw[(0,1/2): (-1); (1/2,1): 1]")) == 0
    assert integrate_exact(parse_piecewise("pw[(0,2): x^3 - x]")) == 2


def test_one_sided_values_at_break():
    f = parse_piecewise("pw[(0,1/2): (-1); (1/2,1): 1]")
    assert f.limit_left(F(1, 2)) == -1 and f.limit_right(F(1, 2)) == 1
    assert f.continuity_order() == -1
    g = parse_piecewise("pw[(0,1): x^2]")
    assert g.continuity_order() >= 8


# bounded variation ----------------------------------------------------------

def test_indicator_variation_and_stieltjes():
    u = parse_bv(INDICATOR)
    assert total_variation(u) == 2
    assert stieltjes_integral(parse_piecewise("pw[(0,1): x]"), u) == -1


def test_endpoint_construction_variation():
    assert total_variation(parse_bv(ENDPOINTS)) == 2


def test_monotone_variation():
    assert total_variation(parse_bv("bv[pieces: pw[(0,1): x]; jumps: ]")) == 1


def test_du_equals_dt():
    u = parse_bv("bv[pieces: pw[(0,1): x]; jumps: ]")
    f = parse_piecewise("pw[(0,1/3): x^2 - 1; (1/3,1): 5 * x]")
    assert stieltjes_integral(f, u) == integrate_exact(f)


def test_point_mass():
    u = parse_bv("bv[pieces: pw[(0,1/3): 0; (1/3,1): 3]; jumps: (1/3,0,0,3)]")
    f = parse_piecewise("pw[(0,1): x^2 + 1]")
    assert stieltjes_integral(f, u) == 3 * (F(1, 9) + 1)


def test_discontinuous_at_jump():
    u = parse_bv("bv[pieces: pw[(0,1/2): 0; (1/2,1): 1]; jumps: (1/2,0,0,1)]")
    f = parse_piecewise("pw[(0,1/2): 0; (1/2,1): 1]")
    with pytest.raises(DiscontinuousAtJump):
        stieltjes_integral(f, u)


def test_integration_by_parts_random():
    prof = Profile(degree=4, pieces=1, coeff_bound=4, kind="smooth")
    for trial in range(200):
        f = random_function(11, trial, prof, "f")
        ub = random_function(11, trial, prof, "u")
        ub = PiecewisePoly.single(ub.pieces[0].compose_shift(ub.a - f.a), f.interval)
        u = parse_bv(f"bv[pieces: {ub.to_literal()}; jumps: ]")
        a, b = f.a, f.b
        lhs = stieltjes_integral(f, u)
        rhs = f.value(b) * ub.value(b) - f.value(a) * ub.value(a) - integrate_exact(ub * f.derivative())
        assert lhs == rhs


# ranges ---------------------------------------------------------------------

def test_derivative_range_examples():
    f = parse_piecewise("pw[(0,2): x^3 - x]")
    r = derivative_range(f, 1, (0, 2))
    assert (r.lo, r.hi, r.rigor) == (F(-1), F(11), Rigor.EXACT)
    assert derivative_range(f, 4, (0, 2)).lo == derivative_range(f, 4, (0, 2)).hi == 0
    c = parse_piecewise("pw[(0,1): 5/7]")
    assert (derivative_range(c, 0, (0, 1)).lo, derivative_range(c, 0, (0, 1)).hi) == (F(5, 7), F(5, 7))


def test_derivative_range_errors():
    with pytest.raises(EmptyIntersection):
        derivative_range(parse_piecewise("pw[(0,1): x]"), 0, (2, 3))


def test_sup_norm_examples():
    assert sup_norm(parse_piecewise("pw[(0,1): x]"), 1) == 1
    assert sup_norm(parse_piecewise("pw[(0,2): x^3 - x]"), 1) == 11
    assert sup_norm(parse_piecewise("pw[(0,1): -x^2]"), 0) == 1


def test_range_enclosure_examples():
    r = range_enclosure("exp(x)", 1, (0, 1))
    assert r.rigor == Rigor.INTERVAL
    assert r.lo <= 1 and math.e <= r.hi <= math.e + 0.01
    s = range_enclosure("sin(x)", 0, (0, F(1, 2)))
    assert s.lo <= 0 and s.hi >= math.sin(0.5)
    c = range_enclosure("3", 2, (0, 1))
    assert abs(c.lo) < 1e-12 and abs(c.hi) < 1e-12


def test_enclosure_contains_sampled():
    for text in ["exp(x) * cos(x)", "sqrt(x + 1) - x^2", "log(x + 2) * sin(3 * x)"]:
        enc = range_enclosure(text, 1, (0, 2))
        smp = sampled_range(text, 1, (0, 2))
        assert smp.rigor == Rigor.SAMPLED
        assert enc.lo <= smp.lo and smp.hi <= enc.hi


def test_random_ranges_contain_point_values():
    prof = Profile(degree=5, pieces=3, coeff_bound=5)
    for trial in range(500):
        f = random_function(3, trial, prof, "r")
        rng = random.Random(trial)
        for k in (0, 1, 2):
            r = derivative_range(f, k, f.interval)
            for _ in range(50):
                x = f.a + (f.b - f.a) * F(rng.randint(0, 1000), 1000)
                for side in ("left", "right"):
                    if (side == "left" and x == f.a) or (side == "right" and x == f.b):
                        continue
                    assert r.lo <= f.derivative_value(x, k, side) <= r.hi


def test_variation_dominates_net_change():
    prof = Profile(kind="bv", degree=4, pieces=3, coeff_bound=4)
    for trial in range(200):
        u = random_function(5, trial, prof, "u")
        assert total_variation(u) >= abs(u.value(u.b) - u.value(u.a))
