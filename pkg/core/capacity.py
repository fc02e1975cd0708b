#!/usr/bin/env python3
"""
Spatial throughput and transmission capacity
Closed forms for omni antennas and ideal sectors without sidelobes, numeric
search over intensity for everything else, and beamwidth optimization
"""

import logging
import math
import warnings
from dataclasses import dataclass
from enum import Enum

import numpy as np
from joblib import Parallel, delayed
from scipy import optimize

from config import (
    BEAMWIDTH_GRID_POINTS,
    BEAMWIDTH_MARGIN,
    BEAMWIDTH_MIN,
    BEAMWIDTH_XTOL,
    LAMBDA_BRACKET,
    LAMBDA_BRACKET_WIDENING,
    LAMBDA_LOG_XTOL,
    LAMBDA_SCAN_POINTS,
    QUADRATURE_CHECK_NODES,
    QUADRATURE_NODES,
)
from core.error_models import is_concave_cdf
from core.exceptions import BracketError, DomainError, NoRoot, NonConcaveWarning
from core.link_analysis import (
    interference_scale,
    noise_exponent,
    success_general,
)
from core.patterns import TWO_PI, PatternKind, RadiationPattern

logger = logging.getLogger(__name__)


class Metric(str, Enum):
    TP = "tp"
    TC = "tc"


@dataclass(frozen=True)
class ThroughputResult:
    """A TP or TC value with the intensity that attains it"""

    value: float
    lambda_star: float
    p_s_at_star: float
    omega: float
    feasible: bool = True


@dataclass(frozen=True)
class OutageConstraint:
    p_e: float

    def __post_init__(self):
        if not 0.0 < self.p_e < 1.0:
            raise DomainError("outage.pe", f"must lie in (0, 1), got {self.p_e}")

    @property
    def target(self):
        """Smallest admissible success probability"""
        return 1.0 - self.p_e


@dataclass(frozen=True)
class TcDerivatives:
    value: float
    first: float
    second: float


@dataclass(frozen=True)
class BeamwidthOptimum:
    omega_star: float
    value: float


def _check_omega(omega):
    if not 0.0 < omega <= TWO_PI:
        raise DomainError("omega", f"must lie in (0, 2pi], got {omega}")


def _hit_rates(omega, error):
    """u = F(omega/2) for the typical pair, p = omega/2pi for interferers"""
    return float(error.cdf(min(omega / 2.0, math.pi))), omega / TWO_PI


def _infeasible(omega, p_s):
    return ThroughputResult(value=0.0, lambda_star=0.0, p_s_at_star=p_s, omega=omega, feasible=False)


def _omega_of(pattern):
    return TWO_PI if pattern.kind is PatternKind.OMNI else pattern.omega


# ----------------------------------------------------------------------
# spatial throughput
# ----------------------------------------------------------------------
def tp_omni(params):
    lambda_star = 1.0 / interference_scale(params)
    p_s = math.exp(-1.0 - noise_exponent(params))
    return ThroughputResult(lambda_star * p_s, lambda_star, p_s, TWO_PI)


def tp_sector_noside(params, omega, error):
    """TP of an ideal sector with g2 = 0; lambda* = 1 / (p^2 A)"""
    _check_omega(omega)
    u, p = _hit_rates(omega, error)
    lambda_star = 1.0 / (p * p * interference_scale(params))
    # g1 = 1/p
    p_s = u * u * math.exp(-1.0 - noise_exponent(params) * p * p)
    return ThroughputResult(lambda_star * p_s, lambda_star, p_s, omega)


def _log_scan(objective, low, high):
    grid = np.linspace(math.log(low), math.log(high), LAMBDA_SCAN_POINTS)
    values = np.array([objective(t) for t in grid])
    return grid, values, int(np.argmax(values))


def tp_numeric(params, pattern, error):
    """
    max over lambda of lambda * p_s(lambda), searched in log(lambda).

    A coarse scan on the QUADRATURE_NODES rule locates the peak and bounded
    Brent refinement on the QUADRATURE_CHECK_NODES rule polishes it; the two
    rules are compared once, at the maximizer. A peak on the scan edge
    widens the bracket once.

    Raises:
        BracketError: if the peak stays on the edge of the widened bracket
    """

    def throughput_at(log_lam, nodes=QUADRATURE_CHECK_NODES):
        lam = math.exp(log_lam)
        return lam * success_general(params.with_lambda(lam), pattern, error, nodes=nodes)

    def scanned(log_lam):
        return throughput_at(log_lam, nodes=QUADRATURE_NODES)

    low, high = LAMBDA_BRACKET
    grid, values, best = _log_scan(scanned, low, high)
    if best in (0, len(grid) - 1):
        logger.debug("tp_numeric: peak on the bracket edge, widening by %g", LAMBDA_BRACKET_WIDENING)
        low, high = low / LAMBDA_BRACKET_WIDENING, high * LAMBDA_BRACKET_WIDENING
        grid, values, best = _log_scan(scanned, low, high)
        if best in (0, len(grid) - 1):
            raise BracketError(
                "tp_numeric",
                f"throughput peak at the edge of the widened bracket [{low:.3g}, {high:.3g}]",
            )

    refined = optimize.minimize_scalar(
        lambda t: -throughput_at(t),
        bounds=(grid[best - 1], grid[best + 1]),
        method="bounded",
        options={"xatol": LAMBDA_LOG_XTOL},
    )
    log_star = refined.x if -refined.fun >= values[best] else grid[best]
    lambda_star = math.exp(log_star)
    p_s = success_general(params.with_lambda(lambda_star), pattern, error)
    return ThroughputResult(lambda_star * p_s, lambda_star, p_s, _omega_of(pattern))


def tp_gain(params, omega, error):
    """TP_sector / TP_omni with noise neglected: u^2 / p^2"""
    _check_omega(omega)
    u, p = _hit_rates(omega, error)
    return u * u / (p * p)


def throughput(params, pattern, error):
    """TP by closed form where available"""
    if pattern.kind is PatternKind.OMNI:
        return tp_omni(params)
    if pattern.kind is PatternKind.IDEAL_SECTOR and pattern.g2 == 0.0:
        return tp_sector_noside(params, pattern.omega, error)
    return tp_numeric(params, pattern, error)


# ----------------------------------------------------------------------
# transmission capacity
# ----------------------------------------------------------------------
def tc_omni(params, outage):
    target = outage.target
    ratio = math.exp(-noise_exponent(params)) / target
    if ratio <= 1.0:
        return _infeasible(TWO_PI, math.exp(-noise_exponent(params)))
    lambda_star = math.log(ratio) / interference_scale(params)
    return ThroughputResult(lambda_star * target, lambda_star, target, TWO_PI)


def tc_sector_noside(params, omega, error, outage):
    """
    TC of an ideal sector with g2 = 0.

    Infeasible when even an empty network misses the target, i.e.
    u^2 (1 - p_noise) <= 1 - p_e; the result is then zero and flagged.
    """
    _check_omega(omega)
    u, p = _hit_rates(omega, error)
    target = outage.target
    reachable = u * u * math.exp(-noise_exponent(params) * p * p)
    if reachable <= target:
        return _infeasible(omega, reachable)
    lambda_star = math.log(reachable / target) / (p * p * interference_scale(params))
    return ThroughputResult(lambda_star * target, lambda_star, target, omega)


def tc_numeric(params, pattern, error, outage):
    """
    Solve p_s(lambda) = 1 - p_e in log(lambda); zero result when infeasible.

    The root is bracketed on the QUADRATURE_CHECK_NODES rule and checked
    against the coarser rule once it is found.
    """
    target = outage.target
    omega = _omega_of(pattern)
    empty = success_general(params.with_lambda(0.0), pattern, error)
    if empty <= target:
        return _infeasible(omega, empty)

    def excess(log_lam):
        lam = math.exp(log_lam)
        return success_general(params.with_lambda(lam), pattern, error, nodes=QUADRATURE_CHECK_NODES) - target

    low, high = LAMBDA_BRACKET
    for _ in range(2):
        if excess(math.log(low)) > 0.0 > excess(math.log(high)):
            break
        low, high = low / LAMBDA_BRACKET_WIDENING, high * LAMBDA_BRACKET_WIDENING
    else:
        raise BracketError("tc_numeric", f"p_s = {target:.6g} not bracketed in [{low:.3g}, {high:.3g}]")

    log_star = optimize.brentq(excess, math.log(low), math.log(high), xtol=1e-14, rtol=1e-14, maxiter=500)
    lambda_star = math.exp(log_star)
    # both rules at the root; raises if they disagree there
    success_general(params.with_lambda(lambda_star), pattern, error)
    return ThroughputResult(lambda_star * target, lambda_star, target, omega)


def tc_gain(params, omega, error, outage):
    """TC_sector / TC_omni with noise neglected; 0 when the sector is infeasible"""
    _check_omega(omega)
    u, p = _hit_rates(omega, error)
    target = outage.target
    if u * u <= target:
        return 0.0
    return math.log(u * u / target) / math.log(1.0 / target) / (p * p)


def capacity(params, pattern, error, outage):
    """TC by closed form where available"""
    if pattern.kind is PatternKind.OMNI:
        return tc_omni(params, outage)
    if pattern.kind is PatternKind.IDEAL_SECTOR and pattern.g2 == 0.0:
        return tc_sector_noside(params, pattern.omega, error, outage)
    return tc_numeric(params, pattern, error, outage)


def normalized_throughput(params, pattern, error):
    """TP relative to omni antennas with identical parameters"""
    if params.eta == 0.0 and pattern.kind is PatternKind.IDEAL_SECTOR and pattern.g2 == 0.0:
        return tp_gain(params, pattern.omega, error)
    return throughput(params, pattern, error).value / tp_omni(params).value


def normalized_capacity(params, pattern, error, outage):
    """TC relative to omni antennas; nan when omni itself is infeasible"""
    if params.eta == 0.0 and pattern.kind is PatternKind.IDEAL_SECTOR and pattern.g2 == 0.0:
        return tc_gain(params, pattern.omega, error, outage)
    reference = tc_omni(params, outage).value
    if reference == 0.0:
        return math.nan
    return capacity(params, pattern, error, outage).value / reference


# ----------------------------------------------------------------------
# beamwidth maximizing TC (ideal sector, g2 = 0, no noise)
# ----------------------------------------------------------------------
def tc_beamwidth_maximizer(error, outage):
    """
    Beamwidth maximizing the TC of an ideal sector without sidelobes.

    With a concave error cdf the maximizer is unique. If the density at
    eps_max is at least log(1/(1-p_e)) / eps_max, TC still grows at the
    boundary and omega* = 2 eps_max; otherwise omega* = 2x where x solves
    f(x)/F(x) = log(F(x)^2 / (1-p_e)) / x.
    """
    eps_max = error.eps_max
    if eps_max <= 0.0:
        raise DomainError("error", "TC has no maximizing beamwidth under perfect orientation")

    report = is_concave_cdf(error)
    if not report.concave:
        message = (
            f"{error.describe()} has a non-concave cdf (density slope up to "
            f"{report.max_violation:.3g}); the maximizer may not be unique"
        )
        logger.warning(message)
        warnings.warn(message, NonConcaveWarning, stacklevel=2)

    log_margin = math.log(1.0 / outage.target)
    if float(error.pdf(eps_max)) >= log_margin / eps_max:
        return 2.0 * eps_max

    def optimality_gap(x):
        cdf = float(error.cdf(x))
        return float(error.pdf(x)) / cdf - math.log(cdf * cdf / outage.target) / x

    low = float(error.quantile(math.sqrt(outage.target)))
    x_star = optimize.brentq(optimality_gap, low, eps_max, xtol=BEAMWIDTH_XTOL / 2.0, maxiter=500)
    return 2.0 * x_star


def tc_sector_derivatives(x, error, outage, params):
    """
    TC of an ideal sector (g2 = 0, no noise) and its first two derivatives
    in the half-beamwidth x = omega/2.
    """
    if not 0.0 < x <= math.pi:
        raise DomainError("x", f"half-beamwidth must lie in (0, pi], got {x}")
    s = 2.0 / params.alpha
    scale = outage.target * math.pi / (params.kappa * params.d**2 * params.beta**s)
    cdf = float(error.cdf(x))
    pdf = float(error.pdf(x))
    slope = float(error.pdf_derivative(x))
    log_term = math.log(cdf * cdf / outage.target)
    ratio = pdf / cdf

    value = scale * log_term / x**2
    first = 2.0 * scale / x**2 * (ratio - log_term / x)
    second = 2.0 * scale / x**3 * (3.0 * log_term / x - 4.0 * ratio - x * ratio**2 + x * slope / cdf)
    return TcDerivatives(value, first, second)


# ----------------------------------------------------------------------
# beamwidth optimization for pattern families
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class PatternFamily:
    """A pattern kind with every parameter but the beamwidth fixed"""

    kind: PatternKind
    g2: float = 0.0
    gamma: float = 0.0

    def at(self, omega):
        if self.kind is PatternKind.OMNI:
            return RadiationPattern.omni()
        if self.kind is PatternKind.IDEAL_SECTOR:
            return RadiationPattern.ideal_sector(omega, self.g2)
        if self.kind is PatternKind.TRANSITION_SECTOR:
            return RadiationPattern.transition_sector(omega, self.g2, self.gamma)
        return RadiationPattern.threegpp_sector(omega, self.g2)


def metric_value(params, pattern, error, metric, outage=None):
    """TP or TC of one configuration"""
    if Metric(metric) is Metric.TP:
        return throughput(params, pattern, error).value
    if outage is None:
        raise DomainError("outage.pe", "the tc metric needs an outage constraint")
    return capacity(params, pattern, error, outage).value


def _admissible_value(params, family, omega, error, metric, outage):
    try:
        return metric_value(params, family.at(omega), error, metric, outage)
    except (DomainError, NoRoot) as exc:
        logger.debug("omega=%r skipped: %s", omega, exc)
        return -math.inf


def optimize_beamwidth(params, family, error, metric, outage=None,
                       grid_points=BEAMWIDTH_GRID_POINTS, n_jobs=1):
    """
    Maximize TP or TC over the beamwidth of a pattern family.

    No unimodality is assumed: a uniform grid scan picks the best cell and
    bounded Brent refinement works inside its neighbours. Beamwidths the
    family cannot realize are skipped.
    """
    metric = Metric(metric)
    if metric is Metric.TC and outage is None:
        raise DomainError("outage.pe", "the tc metric needs an outage constraint")
    if family.kind is PatternKind.OMNI:
        return BeamwidthOptimum(TWO_PI, metric_value(params, family.at(TWO_PI), error, metric, outage))

    grid = np.linspace(BEAMWIDTH_MIN, TWO_PI - BEAMWIDTH_MARGIN, grid_points)
    values = np.array(Parallel(n_jobs=n_jobs)(
        delayed(_admissible_value)(params, family, float(omega), error, metric, outage) for omega in grid
    ))
    if not np.any(np.isfinite(values)):
        raise NoRoot("optimize_beamwidth", f"no admissible beamwidth for {family.kind.value}")

    def objective(omega):
        value = _admissible_value(params, family, omega, error, metric, outage)
        # metrics are >= 0, so -1 ranks below every admissible beamwidth
        return -value if np.isfinite(value) else 1.0

    best = int(np.argmax(values))
    low, high = grid[max(best - 1, 0)], grid[min(best + 1, len(grid) - 1)]
    refined = optimize.minimize_scalar(
        objective, bounds=(low, high), method="bounded", options={"xatol": BEAMWIDTH_XTOL}
    )
    if -refined.fun >= values[best]:
        return BeamwidthOptimum(float(refined.x), float(-refined.fun))
    return BeamwidthOptimum(float(grid[best]), float(values[best]))
