"""
Orientation error models - test suite.

 Group 1 - distribution basics: cdf/pdf/quantile agree
 Group 2 - family specifics: truncation, uniform bound, dimple gluing
 Group 3 - concavity and log-derivative diagnostics
 Group 4 - sampling
 Group 5 - input validation and construction
"""

import math

import numpy as np
import pytest
from scipy import integrate, stats

from core.error_models import (
    DimpleError,
    ErrorKind,
    TruncatedExponentialError,
    TruncatedHalfNormalError,
    UniformError,
    ZeroError,
    build_error_model,
    cdf,
    is_concave_cdf,
    log_derivative_bound,
    pdf,
    quantile,
    sample,
)
from core.exceptions import DomainError

DEG = math.pi / 180.0

CONTINUOUS_MODELS = [
    UniformError(bound=30 * DEG),
    UniformError(bound=math.pi),
    TruncatedExponentialError(3 * DEG),
    TruncatedExponentialError(60 * DEG),
    TruncatedHalfNormalError(3 * DEG),
    TruncatedHalfNormalError(90 * DEG),
    DimpleError(),
]


# ----------------------------------------------------------------------
# Group 1
# ----------------------------------------------------------------------
@pytest.mark.parametrize("model", CONTINUOUS_MODELS, ids=lambda m: m.describe())
def test_cdf_endpoints(model):
    assert cdf(model, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert cdf(model, model.eps_max) == 1.0
    assert cdf(model, math.pi) == 1.0


@pytest.mark.parametrize("model", CONTINUOUS_MODELS, ids=lambda m: m.describe())
def test_density_integrates_to_one(model):
    total, _ = integrate.quad(
        model.pdf, 0.0, model.eps_max, points=model.breakpoints() or None, limit=200
    )
    assert total == pytest.approx(1.0, abs=1e-8)


@pytest.mark.parametrize("model", CONTINUOUS_MODELS, ids=lambda m: m.describe())
def test_quantile_inverts_cdf(model):
    levels = np.array([0.05, 0.25, 0.5, 0.75, 0.95])
    assert cdf(model, quantile(model, levels)) == pytest.approx(levels, abs=1e-10)


@pytest.mark.parametrize("model", CONTINUOUS_MODELS, ids=lambda m: m.describe())
def test_cdf_matches_integrated_density(model):
    x = 0.6 * model.eps_max
    points = [p for p in model.breakpoints() if p < x] or None
    area, _ = integrate.quad(model.pdf, 0.0, x, points=points, limit=200)
    assert cdf(model, x) == pytest.approx(area, abs=1e-8)


def test_quantile_extremes():
    model = TruncatedHalfNormalError(3 * DEG)
    assert quantile(model, 0.0) == 0.0
    assert quantile(model, 1.0) == model.eps_max


def _random_models(rng, count):
    """count models of every family with parameters drawn across their ranges"""
    for _ in range(count):
        yield UniformError(bound=rng.uniform(0.5, 180.0) * DEG)
        yield TruncatedExponentialError(rng.uniform(0.5, 90.0) * DEG)
        yield TruncatedHalfNormalError(rng.uniform(0.5, 90.0) * DEG)
        yield DimpleError(
            a=rng.uniform(0.1, 3.0), b=rng.uniform(0.1, 0.9), c1=rng.uniform(0.5, 30.0), c2=rng.uniform(0.1, 5.0)
        )


def test_density_integrates_to_one_for_random_parameters():
    for model in _random_models(np.random.default_rng(2024), 25):
        total, _ = integrate.quad(
            model.pdf, 0.0, model.eps_max, points=model.breakpoints() or None,
            epsabs=1e-12, epsrel=1e-12, limit=200,
        )
        assert total == pytest.approx(1.0, abs=1e-9), model.describe()


# ----------------------------------------------------------------------
# Group 2
# ----------------------------------------------------------------------
def test_zero_error_is_an_atom_at_zero():
    model = ZeroError()
    assert model.eps_max == 0.0
    assert model.cdf(0.0) == 1.0
    assert model.cdf(1.0) == 1.0
    assert model.mean() == 0.0
    draws = model.sample(np.random.default_rng(1), 100)
    assert np.all(draws == 0.0)


def test_uniform_cdf_and_support():
    model = UniformError(bound=math.pi / 2)
    assert model.cdf(math.pi / 4) == pytest.approx(0.5)
    assert model.cdf(2.0) == 1.0
    assert model.pdf(2.0) == 0.0
    assert model.pdf(1.0) == pytest.approx(2.0 / math.pi)
    assert model.mean() == pytest.approx(math.pi / 4)


def test_exponential_truncation_keeps_log_derivative():
    mean = 40 * DEG
    model = TruncatedExponentialError(mean)
    x = np.array([0.1, 0.5, 1.0, 2.0])
    untruncated = np.exp(-x / mean) / mean / -np.expm1(-x / mean)
    assert model.pdf(x) / model.cdf(x) == pytest.approx(untruncated, rel=1e-9)


def test_halfnormal_scale_and_mean():
    model = TruncatedHalfNormalError(3 * DEG)
    assert model.sigma == pytest.approx(3 * DEG * math.sqrt(math.pi / 2))
    # truncation at ~48 sigma is invisible
    assert model.mean() == pytest.approx(3 * DEG, rel=1e-6)


def test_heavy_truncation_lowers_the_mean():
    model = TruncatedExponentialError(2.0)
    assert model.mean() < 2.0
    assert model.mean() == pytest.approx(
        integrate.quad(lambda t: t * model.pdf(t), 0.0, math.pi)[0], rel=1e-8
    )


def test_dimple_glues_at_a():
    model = DimpleError(a=0.5, b=0.5, c1=15.0, c2=1.0)
    assert model.cdf(0.5) == pytest.approx(0.5, rel=1e-12)
    assert model.cdf(0.5 + 1e-10) == pytest.approx(0.5, abs=1e-9)
    # density jumps up across a
    assert model.pdf(0.5 + 1e-9) > 10 * model.pdf(0.5)
    assert model.breakpoints() == (0.5,)


def test_pdf_derivative_signs():
    assert np.all(TruncatedHalfNormalError(10 * DEG).pdf_derivative(np.array([0.1, 0.3])) < 0)
    assert TruncatedHalfNormalError(10 * DEG).pdf_derivative(0.0) == 0.0
    assert UniformError(bound=1.0).pdf_derivative(0.4) == 0.0
    slope = TruncatedExponentialError(0.5).pdf_derivative(0.7)
    assert slope == pytest.approx(-TruncatedExponentialError(0.5).pdf(0.7) / 0.5)


# ----------------------------------------------------------------------
# Group 3
# ----------------------------------------------------------------------
@pytest.mark.parametrize(
    "model",
    [UniformError(bound=1.0), TruncatedExponentialError(3 * DEG), TruncatedHalfNormalError(3 * DEG), ZeroError()],
    ids=lambda m: m.describe(),
)
def test_standard_models_are_concave(model):
    report = is_concave_cdf(model)
    assert report.concave
    assert report.max_violation == 0.0


def test_dimple_is_not_concave():
    report = is_concave_cdf(DimpleError())
    assert not report.concave
    assert report.max_violation > 0.0


@pytest.mark.parametrize("model", CONTINUOUS_MODELS, ids=lambda m: m.describe())
def test_log_derivative_bound_at_most_one(model):
    assert log_derivative_bound(model) <= 1.0 + 1e-9


def test_uniform_log_derivative_is_one():
    assert log_derivative_bound(UniformError(bound=0.7)) == pytest.approx(1.0, abs=1e-9)


# ----------------------------------------------------------------------
# Group 4
# ----------------------------------------------------------------------
@pytest.mark.parametrize(
    "model",
    [UniformError(bound=20 * DEG), TruncatedHalfNormalError(5 * DEG), DimpleError()],
    ids=lambda m: m.describe(),
)
def test_samples_follow_the_model(model):
    n = 200_000
    draws = sample(model, np.random.default_rng(7), n)
    magnitude = np.abs(draws)
    assert np.all(magnitude <= model.eps_max)
    assert np.mean(draws < 0) == pytest.approx(0.5, abs=4 * 0.5 / math.sqrt(n))
    tolerance = 4 * np.std(magnitude) / math.sqrt(n)
    assert abs(np.mean(magnitude) - model.mean()) <= tolerance


@pytest.mark.parametrize(
    "model",
    [UniformError(bound=20 * DEG), TruncatedExponentialError(4 * DEG), TruncatedHalfNormalError(5 * DEG), DimpleError()],
    ids=lambda m: m.describe(),
)
def test_absolute_samples_pass_kolmogorov_smirnov(model):
    draws = model.sample_abs(np.random.default_rng(99), 1_000_000)
    result = stats.kstest(draws, model.cdf)
    assert result.statistic < 0.002


def test_sampling_is_deterministic_per_seed():
    model = TruncatedExponentialError(4 * DEG)
    first = model.sample(np.random.default_rng(11), 50)
    second = model.sample(np.random.default_rng(11), 50)
    np.testing.assert_array_equal(first, second)


def test_scalar_sample_is_float():
    assert isinstance(UniformError(bound=1.0).sample(np.random.default_rng(0)), float)


# ----------------------------------------------------------------------
# Group 5
# ----------------------------------------------------------------------
@pytest.mark.parametrize("x", [-0.1, 3.2, float("nan")])
def test_cdf_rejects_angles_outside_zero_pi(x):
    with pytest.raises(DomainError):
        TruncatedHalfNormalError(3 * DEG).cdf(x)


@pytest.mark.parametrize("q", [-0.01, 1.01])
def test_quantile_rejects_bad_levels(q):
    with pytest.raises(DomainError):
        UniformError(bound=1.0).quantile(q)


def test_constructors_validate():
    with pytest.raises(DomainError):
        UniformError(bound=0.0)
    with pytest.raises(DomainError):
        UniformError(bound=4.0)
    with pytest.raises(DomainError):
        TruncatedHalfNormalError(0.0)
    with pytest.raises(DomainError):
        DimpleError(b=1.0)


def test_build_error_model():
    assert build_error_model("zero") == ZeroError()
    assert build_error_model("uniform", mean=0.2) == UniformError(bound=0.4)
    assert build_error_model("uniform", mean=0.2, eps_max=1.0) == UniformError(bound=1.0)
    assert build_error_model(ErrorKind.HALF_NORMAL, mean=0.1) == TruncatedHalfNormalError(0.1)
    assert build_error_model("exponential", mean=0.1).kind is ErrorKind.EXPONENTIAL
    assert build_error_model("dimple", dimple={"a": 0.4}).a == 0.4
    with pytest.raises(DomainError) as info:
        build_error_model("halfnormal")
    assert info.value.parameter == "mean"
    with pytest.raises(ValueError):
        build_error_model("gaussian", mean=0.1)
