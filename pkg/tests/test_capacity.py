"""
Spatial throughput and transmission capacity - test suite.

 Group 1 - TP closed forms and scaling laws
 Group 2 - TP numeric search and its shape in the beamwidth
 Group 3 - TC closed forms, feasibility and numeric root
 Group 4 - the TC-maximizing beamwidth
 Group 5 - beamwidth optimization over pattern families
"""

import math

import numpy as np
import pytest

from config import BEAMWIDTH_MIN
from core.capacity import (
    Metric,
    OutageConstraint,
    PatternFamily,
    capacity,
    metric_value,
    normalized_capacity,
    normalized_throughput,
    optimize_beamwidth,
    tc_beamwidth_maximizer,
    tc_gain,
    tc_numeric,
    tc_omni,
    tc_sector_derivatives,
    tc_sector_noside,
    throughput,
    tp_gain,
    tp_numeric,
    tp_omni,
    tp_sector_noside,
)
from core.error_models import (
    DimpleError,
    TruncatedExponentialError,
    TruncatedHalfNormalError,
    UniformError,
    ZeroError,
)
from core.exceptions import DomainError, NonConcaveWarning
from core.link_analysis import NetworkParams, interference_scale, success_general
from core.patterns import PatternKind, RadiationPattern

DEG = math.pi / 180.0


def _r_squared(x, y):
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    return 1.0 - np.sum(residual**2) / np.sum((y - np.mean(y)) ** 2)


def _sign_changes(values):
    steps = np.sign(np.diff(values))
    steps = steps[steps != 0.0]
    return int(np.count_nonzero(steps[1:] != steps[:-1]))


# ----------------------------------------------------------------------
# Group 1
# ----------------------------------------------------------------------
def test_omni_throughput(params):
    result = tp_omni(params)
    assert result.lambda_star == pytest.approx(5.2233e-6, rel=1e-4)
    assert result.value == pytest.approx(1.9216e-6, rel=1e-3)
    assert result.p_s_at_star == pytest.approx(math.exp(-1.0 - 4e-6), rel=1e-12)
    assert result.lambda_star * interference_scale(params) == pytest.approx(1.0)


def test_full_circle_sector_matches_omni(params):
    sector = tp_sector_noside(params, 2 * math.pi, ZeroError())
    omni = tp_omni(params)
    assert sector.value == pytest.approx(omni.value, rel=1e-12)
    assert sector.lambda_star == pytest.approx(omni.lambda_star, rel=1e-12)


def test_tp_gain_without_errors_and_with_uniform_errors():
    assert tp_gain(None, math.pi, ZeroError()) == pytest.approx(4.0)
    assert tp_gain(None, math.pi, UniformError(math.pi)) == pytest.approx(1.0)


@pytest.mark.parametrize("omega_deg", [5.0, 20.0, 90.0, 180.0])
def test_halving_the_beamwidth_quadruples_tp(quiet_params, omega_deg):
    wide = tp_sector_noside(quiet_params, omega_deg * DEG, ZeroError()).value
    narrow = tp_sector_noside(quiet_params, omega_deg * DEG / 2, ZeroError()).value
    assert narrow / wide == pytest.approx(4.0, rel=1e-12)


@pytest.mark.parametrize("omega_deg", [1.0, 30.0, 270.0])
def test_perfect_orientation_gain_is_inverse_square_beamwidth(quiet_params, omega_deg):
    omega = omega_deg * DEG
    ratio = tp_sector_noside(quiet_params, omega, ZeroError()).value / tp_omni(quiet_params).value
    assert ratio == pytest.approx((2 * math.pi / omega) ** 2, rel=1e-12)
    assert normalized_throughput(quiet_params, RadiationPattern.ideal_sector(omega, 0.0), ZeroError()) == (
        pytest.approx(ratio, rel=1e-12)
    )


def test_throughput_does_not_depend_on_the_intensity_field(params, halfnormal_3deg):
    sector = RadiationPattern.ideal_sector(20 * DEG, 0.0)
    assert throughput(params, sector, halfnormal_3deg) == throughput(params.with_lambda(3e-3), sector, halfnormal_3deg)


# ----------------------------------------------------------------------
# Group 2
# ----------------------------------------------------------------------
def test_numeric_tp_recovers_omni(params):
    numeric = tp_numeric(params, RadiationPattern.omni(), ZeroError())
    closed = tp_omni(params)
    assert numeric.value == pytest.approx(closed.value, rel=1e-6)
    assert numeric.lambda_star == pytest.approx(closed.lambda_star, rel=1e-3)


def test_numeric_tp_recovers_noside_sector(params, halfnormal_3deg, sector_20deg_noside):
    numeric = tp_numeric(params, sector_20deg_noside, halfnormal_3deg)
    closed = tp_sector_noside(params, sector_20deg_noside.omega, halfnormal_3deg)
    assert numeric.value == pytest.approx(closed.value, rel=1e-6)


@pytest.mark.parametrize(
    "error",
    [UniformError(math.pi), UniformError(20 * DEG), TruncatedExponentialError(3 * DEG),
     TruncatedHalfNormalError(3 * DEG), DimpleError()],
    ids=lambda e: e.describe(),
)
def test_noside_tp_never_grows_with_beamwidth(params, error):
    omegas = np.linspace(2 * math.pi / 1000, 2 * math.pi, 1000)
    values = np.array([tp_sector_noside(params, omega, error).value for omega in omegas])
    assert np.all(np.diff(values) <= 1e-12 * values[:-1])


def test_uniform_error_favours_the_narrowest_beam(params):
    omegas = np.linspace(1 * DEG, 2 * math.pi, 400)
    values = [tp_sector_noside(params, omega, UniformError(math.pi)).value for omega in omegas]
    assert int(np.argmax(values)) == 0


@pytest.mark.slow
@pytest.mark.parametrize(
    "family",
    [PatternFamily(PatternKind.IDEAL_SECTOR, g2=0.1), PatternFamily(PatternKind.TRANSITION_SECTOR, g2=0.1, gamma=0.5 * DEG)],
    ids=["ideal", "transition"],
)
def test_sidelobes_give_tp_an_interior_peak(params, halfnormal_3deg, family):
    omegas = np.array([1, 2, 3, 5, 7, 10, 15, 20, 30, 45, 60]) * DEG
    values = [throughput(params, family.at(omega), halfnormal_3deg).value for omega in omegas]
    best = int(np.argmax(values))
    assert 0 < best < len(omegas) - 1


# ----------------------------------------------------------------------
# Group 3
# ----------------------------------------------------------------------
def test_omni_capacity_without_noise(quiet_params, outage):
    result = tc_omni(quiet_params, outage)
    expected_lambda = math.log(1 / 0.85) / interference_scale(quiet_params)
    assert result.lambda_star == pytest.approx(expected_lambda, rel=1e-12)
    assert result.value == pytest.approx(0.85 * expected_lambda, rel=1e-12)
    assert result.feasible


def test_omni_capacity_is_infeasible_in_a_noisy_network(outage):
    noisy = NetworkParams(eta=5e-8)
    result = tc_omni(noisy, outage)
    assert not result.feasible
    assert result.value == 0.0
    assert math.isnan(normalized_capacity(noisy, RadiationPattern.ideal_sector(1.0, 0.1), ZeroError(), outage))


def test_numeric_tc_recovers_omni(params, outage):
    numeric = tc_numeric(params, RadiationPattern.omni(), ZeroError(), outage)
    assert numeric.value == pytest.approx(tc_omni(params, outage).value, rel=1e-8)


def test_numeric_tc_recovers_noside_sector(params, halfnormal_3deg, sector_20deg_noside, outage):
    numeric = tc_numeric(params, sector_20deg_noside, halfnormal_3deg, outage)
    closed = tc_sector_noside(params, sector_20deg_noside.omega, halfnormal_3deg, outage)
    assert numeric.value == pytest.approx(closed.value, rel=1e-8)


def test_numeric_tc_meets_the_target(params, halfnormal_3deg, outage):
    pattern = RadiationPattern.transition_sector(20 * DEG, 0.1, 5 * DEG)
    result = capacity(params, pattern, halfnormal_3deg, outage)
    assert result.feasible
    reached = success_general(params.with_lambda(result.lambda_star), pattern, halfnormal_3deg)
    assert reached == pytest.approx(0.85, abs=1e-9)


def test_narrow_beams_cannot_meet_the_outage_target(quiet_params, halfnormal_3deg, outage):
    # u = F(5 deg) ~ 0.82, so u^2 < 0.85 even without interferers
    result = tc_sector_noside(quiet_params, 10 * DEG, halfnormal_3deg, outage)
    assert not result.feasible
    assert result.value == 0.0 and result.lambda_star == 0.0
    assert tc_gain(quiet_params, 10 * DEG, halfnormal_3deg, outage) == 0.0
    numeric = tc_numeric(quiet_params, RadiationPattern.ideal_sector(10 * DEG, 0.0), halfnormal_3deg, outage)
    assert not numeric.feasible


@pytest.mark.parametrize("omega_deg", [5.0, 45.0, 200.0])
def test_perfect_orientation_tc_gain(quiet_params, outage, omega_deg):
    omega = omega_deg * DEG
    assert tc_gain(quiet_params, omega, ZeroError(), outage) == pytest.approx((2 * math.pi / omega) ** 2, rel=1e-12)
    ratio = tc_sector_noside(quiet_params, omega, ZeroError(), outage).value / tc_omni(quiet_params, outage).value
    assert ratio == pytest.approx((2 * math.pi / omega) ** 2, rel=1e-12)


def test_transition_throughput_peak_dominates_the_curve(params, halfnormal_3deg):
    pattern = RadiationPattern.transition_sector(20 * DEG, 0.1, 5 * DEG)
    peak = tp_numeric(params, pattern, halfnormal_3deg)
    assert peak.p_s_at_star == pytest.approx(success_general(params.with_lambda(peak.lambda_star), pattern, halfnormal_3deg))
    for lam in np.geomspace(peak.lambda_star / 30, peak.lambda_star * 30, 9):
        curve = lam * success_general(params.with_lambda(lam), pattern, halfnormal_3deg)
        assert curve <= peak.value * (1 + 1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("omega_deg", [10.0, 20.0, 40.0])
@pytest.mark.parametrize("mean_deg", [1.0, 3.0, 5.0, 10.0])
def test_transition_metrics_for_any_error_mean(params, outage, omega_deg, mean_deg):
    pattern = RadiationPattern.transition_sector(omega_deg * DEG, 0.1, 5 * DEG)
    error = TruncatedHalfNormalError(mean_deg * DEG)
    tp = tp_numeric(params, pattern, error)
    tc = tc_numeric(params, pattern, error, outage)
    assert tp.value > 0.0
    assert 0.0 <= tc.value <= tp.value


def test_capacity_never_exceeds_throughput(params, halfnormal_3deg, outage):
    for omega in (15 * DEG, 40 * DEG, math.pi):
        pattern = RadiationPattern.ideal_sector(omega, 0.0)
        assert capacity(params, pattern, halfnormal_3deg, outage).value <= throughput(params, pattern, halfnormal_3deg).value


def test_outage_constraint_validates():
    assert OutageConstraint(0.15).target == pytest.approx(0.85)
    for p_e in (0.0, 1.0, -0.2):
        with pytest.raises(DomainError):
            OutageConstraint(p_e)


# ----------------------------------------------------------------------
# Group 4
# ----------------------------------------------------------------------
def test_uniform_error_over_the_circle_wants_omni_beams(outage):
    assert tc_beamwidth_maximizer(UniformError(math.pi), outage) == pytest.approx(2 * math.pi)


def test_opposite_extremes_under_uniform_error(params, outage):
    # TP prefers the narrowest beam, TC the widest
    omegas = np.linspace(1 * DEG, 2 * math.pi, 360)
    tp = [tp_sector_noside(params, omega, UniformError(math.pi)).value for omega in omegas]
    tc = [tc_sector_noside(params.with_noise(0.0), omega, UniformError(math.pi), outage).value for omega in omegas]
    assert int(np.argmax(tp)) == 0
    assert int(np.argmax(tc)) == len(omegas) - 1


def test_maximizer_matches_a_fine_grid(quiet_params, halfnormal_3deg, outage):
    omega_star = tc_beamwidth_maximizer(halfnormal_3deg, outage)
    omegas = np.linspace(1 * DEG, 2 * math.pi, 10_000)
    values = [tc_sector_noside(quiet_params, omega, halfnormal_3deg, outage).value for omega in omegas]
    assert omega_star == pytest.approx(omegas[int(np.argmax(values))], abs=2 * (omegas[1] - omegas[0]))


@pytest.mark.parametrize(
    "net",
    [NetworkParams(eta=0.0), NetworkParams(eta=0.0, alpha=4.0, beta=10.0), NetworkParams(eta=0.0, d=30.0, lam=1e-3)],
    ids=["default", "alpha4-beta10", "short-links"],
)
def test_maximizer_is_stationary_and_concave_for_any_network(net, halfnormal_3deg, outage):
    half = tc_beamwidth_maximizer(halfnormal_3deg, outage) / 2
    derivatives = tc_sector_derivatives(half, halfnormal_3deg, outage, net)
    assert abs(derivatives.first) * half / derivatives.value < 1e-6
    assert derivatives.second < 0.0


def test_derivatives_agree_with_finite_differences(quiet_params, halfnormal_3deg, outage):
    x, h = 12 * DEG, 1e-6
    derivatives = tc_sector_derivatives(x, halfnormal_3deg, outage, quiet_params)

    def tc_at(half):
        return tc_sector_noside(quiet_params, 2 * half, halfnormal_3deg, outage).value

    assert derivatives.value == pytest.approx(tc_at(x), rel=1e-10)
    assert derivatives.first == pytest.approx((tc_at(x + h) - tc_at(x - h)) / (2 * h), rel=1e-5)
    assert derivatives.second == pytest.approx((tc_at(x + h) - 2 * tc_at(x) + tc_at(x - h)) / h**2, rel=1e-3)


@pytest.mark.parametrize("kind", [TruncatedExponentialError, TruncatedHalfNormalError])
def test_maximizer_scales_linearly_with_the_mean_error(kind, outage):
    means = np.linspace(1.0, 10.0, 10) * DEG
    optima = np.array([tc_beamwidth_maximizer(kind(mean), outage) for mean in means])
    assert np.all(np.diff(optima) > 0.0)
    assert _r_squared(means, optima) > 0.99
    if kind is TruncatedExponentialError:
        ratios = optima / means
        assert np.max(ratios) / np.min(ratios) - 1.0 < 0.01


@pytest.mark.parametrize(
    "error",
    [TruncatedHalfNormalError(3 * DEG), TruncatedExponentialError(3 * DEG), UniformError(30 * DEG)],
    ids=lambda e: e.describe(),
)
def test_tc_is_unimodal_in_the_beamwidth(quiet_params, outage, error):
    low = 2 * float(error.quantile(math.sqrt(0.85)))
    omegas = np.linspace(low * (1 + 1e-6), 2 * error.eps_max, 2000)
    values = np.array([tc_sector_noside(quiet_params, omega, error, outage).value for omega in omegas])
    assert _sign_changes(values) <= 1


def test_non_concave_error_warns(outage):
    with pytest.warns(NonConcaveWarning):
        omega = tc_beamwidth_maximizer(DimpleError(), outage)
    assert 0.0 < omega <= 2 * math.pi


def test_perfect_orientation_has_no_maximizer(outage):
    with pytest.raises(DomainError):
        tc_beamwidth_maximizer(ZeroError(), outage)


# ----------------------------------------------------------------------
# Group 5
# ----------------------------------------------------------------------
def test_optimize_tp_without_sidelobes_picks_the_narrowest_beam(params, halfnormal_3deg):
    family = PatternFamily(PatternKind.IDEAL_SECTOR, g2=0.0)
    optimum = optimize_beamwidth(params, family, halfnormal_3deg, Metric.TP)
    assert optimum.omega_star == pytest.approx(BEAMWIDTH_MIN, abs=1e-6)


def test_optimize_tc_matches_the_optimality_equation(quiet_params, halfnormal_3deg, outage):
    family = PatternFamily(PatternKind.IDEAL_SECTOR, g2=0.0)
    optimum = optimize_beamwidth(quiet_params, family, halfnormal_3deg, "tc", outage)
    assert optimum.omega_star == pytest.approx(tc_beamwidth_maximizer(halfnormal_3deg, outage), abs=1e-6)
    assert optimum.value == pytest.approx(
        tc_sector_noside(quiet_params, optimum.omega_star, halfnormal_3deg, outage).value, rel=1e-12
    )


def test_optimize_skips_unrealizable_beamwidths(params):
    # wide transition sectors violate gamma < pi - omega/2
    family = PatternFamily(PatternKind.TRANSITION_SECTOR, g2=0.1, gamma=30 * DEG)
    optimum = optimize_beamwidth(params, family, ZeroError(), Metric.TP, grid_points=24)
    assert 30 * DEG < optimum.omega_star < 2 * math.pi - 60 * DEG
    assert optimum.value > 0.0


def test_optimize_tc_needs_an_outage_constraint(params, halfnormal_3deg):
    with pytest.raises(DomainError):
        optimize_beamwidth(params, PatternFamily(PatternKind.IDEAL_SECTOR), halfnormal_3deg, Metric.TC)
    with pytest.raises(DomainError):
        metric_value(params, RadiationPattern.omni(), halfnormal_3deg, "tc")
