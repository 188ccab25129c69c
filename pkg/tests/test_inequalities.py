import math
from fractions import Fraction as F

import pytest

from medianbound import expr as E
from medianbound.exceptions import (
    DegenerateIntegrator,
    NonZeroMean,
    PreconditionError,
    SideConditionViolated,
)
from medianbound.funcmodel import Poly, RangeBound, derivative_range, parse_bv, parse_piecewise
from medianbound.inequalities import (
    INEQUALITY_IDS,
    ShiftPolynomial,
    bound_boundary_nth,
    bound_cheby,
    bound_gruss_classic,
    bound_gruss_mean,
    bound_gruss_stieltjes,
    bound_interior_nth,
    bound_ostrowski,
    bound_ostrowski_gruss,
    bound_stieltjes,
    bound_trapezoid,
    bound_zero_mean,
    evaluate,
    identity_residual,
    kernel_integrals,
    kernel_Kn,
    median_shift,
)

pw = parse_piecewise
UNIT = (0, 1)
STEP = "pw[(0,1/2): (-1); (1/2,1): 1]"
T = "pw[(0,1): x]"
T2 = "pw[(0,1): x^2]"
INDICATOR = "bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1), (1,1,0,1)]"
ENDPOINTS = "bv[pieces: pw[(0,1): 0]; jumps: (0,0,-1,0), (1,0,1,0)]"


def sides(rep):
    return rep.lhs, rep.rhs


# median shift ---------------------------------------------------------------

def test_median_shift_first_order():
    f = median_shift(pw(T2), 1, RangeBound.of(0, 2), ShiftPolynomial(1, [0]))
    assert f == pw("pw[(0,1): x^2 - x]")
    r = derivative_range(f, 1)
    assert max(abs(r.lo), abs(r.hi)) == 1


def test_median_shift_symmetric_range_is_identity():
    g = pw("pw[(0,1): x^3 + 2]")
    assert median_shift(g, 1, RangeBound.of(-3, 3)) == g


def test_median_shift_second_order():
    f = median_shift(pw("pw[(0,1): x^3]"), 2, RangeBound.of(0, 6))
    assert f == pw("pw[(0,1): x^3 - 3/2 * x^2]")
    r = derivative_range(f, 2)
    assert (r.lo, r.hi) == (-3, 3)


def test_median_shift_expression():
    f = median_shift(E.parse("x^3"), 2, RangeBound.of(0, 6))
    assert E.serialize(f) == "x^3 - 3/2 * x^2"


def test_shift_polynomial_normalisation():
    p = ShiftPolynomial(3, [1, 0, 2])
    assert p.poly.deriv(3) == Poly([1])
    assert p.monic().lead == 1


# zero-degree family ---------------------------------------------------------

def test_zero_mean_step_is_sharp():
    rep = bound_zero_mean(pw(STEP), pw(STEP))
    assert sides(rep) == (1, 1) and rep.ratio == 1


def test_zero_mean_constant_f():
    assert bound_zero_mean(pw("pw[(0,1): 3]"), pw(STEP)).lhs == 0


def test_zero_mean_linear():
    assert sides(bound_zero_mean(pw(T), pw("pw[(0,1): x - 1/2]"))) == (F(1, 12), F(1, 8))


def test_zero_mean_rejects_nonzero_weight():
    with pytest.raises(NonZeroMean):
        bound_zero_mean(pw(T), pw(T))


def test_gruss_mean_examples():
    assert sides(bound_gruss_mean(pw(STEP), pw(STEP))) == (1, 1)
    rep = bound_gruss_mean(pw(T), pw("pw[(0,1): 4]"))
    assert sides(rep) == (0, 0) and rep.ratio == 0
    assert sides(bound_gruss_mean(pw(T), pw(T))) == (F(1, 12), F(1, 8))


def test_gruss_classic_examples():
    assert sides(bound_gruss_classic(pw(STEP), pw(STEP))) == (1, 1)
    assert sides(bound_gruss_classic(pw("pw[(0,1): 2]"), pw(T))) == (0, 0)
    assert sides(bound_gruss_classic(pw(T), pw(T))) == (F(1, 12), F(1, 4))


def test_stieltjes_indicator_is_sharp():
    rep = bound_stieltjes(pw(T), INDICATOR)
    assert sides(rep) == (1, 1)


def test_stieltjes_constant_f():
    assert bound_stieltjes(pw("pw[(0,1): 5]"), INDICATOR).lhs == 0


def test_stieltjes_unit_weight_reduces():
    plain = bound_stieltjes(pw(T), INDICATOR)
    weighted = bound_stieltjes(pw(T), INDICATOR, l=pw("pw[(0,1): 1]"))
    assert sides(plain) == sides(weighted)


def test_stieltjes_needs_closed_integrator():
    with pytest.raises(SideConditionViolated):
        bound_stieltjes(pw(T), ENDPOINTS)


def test_gruss_stieltjes_endpoint_construction():
    assert sides(bound_gruss_stieltjes(pw(T), pw(T), ENDPOINTS)) == (F(1, 4), F(1, 4))


def test_gruss_stieltjes_constant_g():
    assert sides(bound_gruss_stieltjes(pw(T), pw("pw[(0,1): 1]"), ENDPOINTS)) == (0, 0)


def test_gruss_stieltjes_degenerate():
    with pytest.raises(DegenerateIntegrator):
        bound_gruss_stieltjes(pw(T), pw(T), INDICATOR)


def test_gruss_stieltjes_with_lebesgue_integrator_matches_mean_form():
    from medianbound.verify import Profile, random_instance

    for trial in range(100):
        inst = random_instance("gruss_mean", 9, trial, Profile(degree=3, pieces=2))
        f, g = inst["f"], inst["g"]
        iv = inst["interval"]
        u = parse_bv(f"bv[pieces: pw[({iv[0]},{iv[1]}): x]; jumps: ]")
        try:
            a = bound_gruss_stieltjes(f, g, u)
        except PreconditionError:
            continue
        b = bound_gruss_mean(f, g)
        assert a.lhs == b.lhs


# first-degree family --------------------------------------------------------

def test_ostrowski_perturbed_linear():
    for x in (0, F(1, 3), 1):
        assert bound_ostrowski(pw("pw[(0,1): 3 * x - 2]"), x, perturbed=True).lhs == 0


def test_ostrowski_at_endpoint_is_sharp():
    assert sides(bound_ostrowski(pw("pw[(2,5): x]"), 5)) == (F(3, 2), F(3, 2))


def test_ostrowski_perturbed_square():
    assert sides(bound_ostrowski(pw(T2), F(1, 2), perturbed=True, r=(0, 2))) == (F(1, 12), F(1, 4))


def test_ostrowski_point_outside():
    with pytest.raises(PreconditionError):
        bound_ostrowski(pw(T), 2)


def test_trapezoid_examples():
    assert sides(bound_trapezoid(pw(T), 0)) == (F(1, 2), F(1, 2))
    assert bound_trapezoid(pw(T), F(1, 2)).lhs == 0


def test_trapezoid_perturbed_square():
    rep = bound_trapezoid(pw(T2), F(1, 4), perturbed=True, r=(0, 2))
    assert sides(rep) == (F(1, 6), F(5, 16))
    assert rep.holds


def test_ostrowski_gruss_examples():
    assert sides(bound_ostrowski_gruss(pw(T), pw(STEP))) == (F(1, 4), F(1, 4))
    for g in (STEP, T2, "pw[(0,1/3): x; (1/3,1): 7]"):
        assert bound_ostrowski_gruss(pw(T), pw(g), perturbed=True).lhs == 0
    rep = bound_ostrowski_gruss(pw(T2), pw(STEP), perturbed=True, rf=(0, 2), rg=(-1, 1))
    assert sides(rep) == (0, F(1, 4))


def test_cheby_examples():
    assert sides(bound_cheby(pw(T), pw(T))) == (F(1, 12), F(1, 12))
    assert sides(bound_cheby(pw("pw[(0,1): 1]"), pw(T))) == (0, 0)
    assert sides(bound_cheby(pw(T), pw(T2))) == (F(1, 12), F(1, 6))


def test_supplied_range_must_cover_derivative():
    with pytest.raises(PreconditionError):
        bound_ostrowski(pw(T2), F(1, 2), perturbed=True, r=(0, 1))


# n-th degree family ---------------------------------------------------------

@pytest.mark.parametrize("x,t,n,want", [
    (F(1, 2), F(1, 4), 1, F(1, 4)),
    (F(1, 2), F(3, 4), 1, F(-1, 4)),
    (F(1, 2), F(3, 4), 2, F(1, 32)),
])
def test_kernel_values(x, t, n, want):
    assert kernel_Kn(x, t, n, UNIT) == want


# signed and absolute kernel integrals, independently derived by symbolic integration
@pytest.mark.parametrize("x,n,want", [
    (F(1, 2), 1, (0, F(1, 4))),
    (0, 2, (F(1, 6), F(1, 6))),
    (F(1, 2), 2, (F(1, 24), F(1, 24))),
    (F(1, 3), 3, (F(-5, 648), F(17, 1944))),
    (F(2, 5), 6, (F(463, 78750000), F(463, 78750000))),
])
def test_kernel_integrals_frozen(x, n, want):
    assert kernel_integrals(x, n, UNIT) == want


def test_kernel_integral_at_left_end():
    for n in range(1, 7):
        s, a = kernel_integrals(0, n, UNIT)
        assert abs(s) == a == F(1, math.factorial(n + 1))


def test_nth_low_degree_vanishes():
    f = pw("pw[(0,1): 2 * x - 1]")
    for variant in (bound_interior_nth, bound_boundary_nth):
        for pert in (False, True):
            assert variant(f, F(1, 3), 2, perturbed=pert).lhs == 0


def test_nth_perturbed_constant_derivative():
    for variant in (bound_interior_nth, bound_boundary_nth):
        rep = variant(pw(T2), F(2, 7), 2, perturbed=True)
        assert sides(rep) == (0, 0)


def test_interior_cubic():
    assert sides(bound_interior_nth(pw("pw[(0,1): x^3]"), F(1, 2), 2)) == (F(1, 8), F(1, 4))


def test_boundary_exp_float_mode():
    rep = bound_boundary_nth("exp(x)", F(1, 2), 2, interval=UNIT)
    assert rep.mode == "Float"
    assert rep.lhs == pytest.approx(0.07392614278690327210017967, rel=1e-12)
    assert rep.rhs >= math.e / 24
    assert rep.rhs == pytest.approx(0.1132617428524602181400120, rel=1e-6)
    assert rep.holds


def test_interior_perturbed_exp_float_mode():
    rep = bound_interior_nth("exp(x)", F(1, 3), 3, interval=UNIT, perturbed=True)
    assert rep.lhs == pytest.approx(0.001811914194242603778410016, rel=1e-12)
    assert rep.rhs == pytest.approx(0.007513063550361051697820187, rel=1e-6)


@pytest.mark.parametrize("f,x,n,variant", [
    ("pw[(0,1): x^2]", F(1, 3), 2, "interior"),
    ("pw[(0,1): x^5 - x]", F(1, 4), 3, "boundary"),
    ("pw[(0,1): 3 * x + 1]", F(5, 7), 1, "interior"),
    ("pw[(0,1): 3 * x + 1]", F(5, 7), 1, "boundary"),
])
def test_identity_residual_examples(f, x, n, variant):
    assert identity_residual(pw(f), x, n, variant) == 0


# float mode -----------------------------------------------------------------

def test_float_mode_reports():
    rep = bound_ostrowski("sin(x)", F(1, 3), interval=UNIT)
    assert rep.mode == "Float" and rep.rigor.value == "IntervalEnclosure"
    assert rep.holds
    ex = bound_ostrowski("x^2", F(1, 2), interval=UNIT, perturbed=True)
    assert ex.mode == "Exact" and sides(ex) == (F(1, 12), F(1, 4))


# registry -------------------------------------------------------------------

def test_registry_ids():
    assert len(INEQUALITY_IDS) == 17
    assert evaluate("cheby", f=pw(T), g=pw(T)).lhs == F(1, 12)
    with pytest.raises(PreconditionError):
        evaluate("ostrowski", f=pw(T))
    with pytest.raises(KeyError):
        evaluate("nope", f=pw(T))
