#!/usr/bin/env python3
"""
Monte Carlo oracle for the typical-link success probability

Each replication places the typical receiver at the window center, its
transmitter at distance d, and a Poisson field of interferers around them.
Distances are minimum-image distances on the torus, capped at half the
window side, so only interferers inside the inscribed disk contribute.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed
from scipy import stats

from config import (
    DEFAULT_REPLICATIONS,
    DEFAULT_SEED,
    DEFAULT_WINDOW,
    FAR_FIELD_WARNING,
    MIN_EXPECTED_POINTS,
    MIN_WINDOW_MULTIPLE,
    QUADRATURE_CHECK_NODES,
    SIM_BLOCK_SIZE,
    WILSON_CONFIDENCE,
)
from core.exceptions import ConfigError
from core.gains import typical_gain_expectation
from core.link_analysis import conditional_success

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimConfig:
    """
    Monte Carlo settings.

    The window is a torus of side window_side around the typical receiver.
    Interferers count only within L/2 of it (the inscribed disk); corner
    points of the square are dropped, and far_field_bias bounds the effect.
    """

    window_side: float = DEFAULT_WINDOW
    replications: int = DEFAULT_REPLICATIONS
    seed: int = DEFAULT_SEED
    boundary: str = "torus"
    n_jobs: int = 1

    def __post_init__(self):
        if not self.window_side > 0.0:
            raise ConfigError("sim.window", f"must be > 0, got {self.window_side}")
        if int(self.replications) != self.replications or self.replications < 1:
            raise ConfigError("sim.reps", f"must be a positive integer, got {self.replications}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise ConfigError("sim.seed", f"must be a non-negative integer, got {self.seed}")
        if self.boundary != "torus":
            raise ConfigError("sim.boundary", f"only 'torus' is supported, got {self.boundary!r}")
        if self.n_jobs == 0:
            raise ConfigError("run.jobs", "must be nonzero")


@dataclass(frozen=True)
class SimEstimate:
    """Success frequency with its Wilson interval"""

    p_hat: float
    ci_low: float
    ci_high: float
    n: int
    successes: int


def wilson_interval(successes, n, confidence=WILSON_CONFIDENCE):
    """Wilson score interval for a binomial proportion"""
    if n < 1:
        raise ConfigError("n", f"need at least one trial, got {n}")
    z = float(stats.norm.ppf(0.5 + confidence / 2.0))
    p_hat = successes / n
    denom = 1.0 + z * z / n
    center = (p_hat + z * z / (2.0 * n)) / denom
    half = z / denom * math.sqrt(p_hat * (1.0 - p_hat) / n + z * z / (4.0 * n * n))
    low = max(0.0, min(center - half, p_hat))
    high = min(1.0, max(center + half, p_hat))
    return low, high


def _far_field_constant(params, cfg):
    # 2 pi lambda beta d^alpha R^(2-alpha) / (alpha - 2), R = L/2
    radius = cfg.window_side / 2.0
    return (
        2.0 * math.pi * params.lam * params.beta * params.d**params.alpha
        * radius ** (2.0 - params.alpha) / (params.alpha - 2.0)
    )


def far_field_exponent(params, pattern, cfg):
    """
    Interference exponent dropped by ignoring interferers beyond L/2, for
    a typical pair aimed at each other.

    Far interferers see unit average gain, so this is an upper bound:
    the far-field constant divided by the squared boresight gain.
    """
    boresight = float(pattern.gain(0.0))
    return _far_field_constant(params, cfg) / boresight**2


def far_field_bias(params, pattern, error, cfg):
    """
    Upper bound on how far dropping far interferers lifts the success probability.

    Being a bound, it is evaluated on the single QUADRATURE_CHECK_NODES rule.
    Gain pairs that never succeed contribute nothing, even where the lift
    factor overflows.
    """
    constant = _far_field_constant(params, cfg)
    given_gains = conditional_success(params, pattern)

    def lift(g_t, g_r):
        product = np.asarray(g_t * g_r, dtype=float)
        positive = product > 0.0
        success = given_gains(g_t, g_r)
        with np.errstate(over="ignore", invalid="ignore"):
            raised = np.where(success > 0.0, success * np.expm1(constant / np.where(positive, product, 1.0)), 0.0)
        return np.where(positive, np.minimum(raised, 1.0 - success), 0.0)

    return typical_gain_expectation(lift, pattern, error, nodes=QUADRATURE_CHECK_NODES)


def interferer_distances(points, side):
    """
    Offsets and distances from the window center to each point, with the
    mask of points that count: inside the inscribed disk and not on the center.
    """
    offset = points - side / 2.0
    distance = np.hypot(offset[:, 0], offset[:, 1])
    inside = (distance <= side / 2.0) & (distance > 0.0)
    return offset, distance, inside


def _replication_succeeds(params, pattern, error, side, rng):

    # typical pair: the TX sits at distance d, pointing at the RX
    phi = rng.uniform(0.0, 2.0 * math.pi)
    eps_tx, eps_rx = error.sample(rng, 2)
    tx_to_rx = phi
    rx_to_tx = phi + math.pi
    signal_gain = pattern.gain(tx_to_rx - (tx_to_rx + eps_tx)) * pattern.gain(rx_to_tx - (rx_to_tx + eps_rx))

    count = rng.poisson(params.lam * side * side)
    points = rng.uniform(0.0, side, size=(count, 2))
    headings = rng.uniform(0.0, 2.0 * math.pi, size=count)
    eps_int = error.sample(rng, count)
    fades = rng.exponential(size=count + 1)

    offset, distance, inside = interferer_distances(points, side)
    int_to_rx = np.arctan2(-offset[:, 1], -offset[:, 0])
    rx_to_int = np.arctan2(offset[:, 1], offset[:, 0])
    tx_gain = pattern.gain(int_to_rx - (headings + eps_int))
    rx_gain = pattern.gain(rx_to_int - (rx_to_tx + eps_rx))

    received = params.p_t * fades[1:] * tx_gain * rx_gain * np.where(inside, distance, 1.0) ** -params.alpha
    interference = float(np.sum(np.where(inside, received, 0.0)))
    signal = params.p_t * fades[0] * signal_gain * params.d**-params.alpha
    return signal > 0.0 and signal >= params.beta * (interference + params.eta)


def _simulate_block(params, pattern, error, cfg, start, stop):
    successes = 0
    for replication in range(start, stop):
        rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(replication,)))
        successes += bool(_replication_succeeds(params, pattern, error, cfg.window_side, rng))
    return successes


def simulate_success(params, pattern, error, cfg):
    """
    Estimate the typical-link success probability.

    Replication r draws from its own substream keyed by (seed, r), so the
    estimate does not depend on how blocks are spread over workers.

    Raises:
        ConfigError: if the window is narrower than MIN_WINDOW_MULTIPLE link distances
    """
    side = cfg.window_side
    if side < MIN_WINDOW_MULTIPLE * params.d:
        raise ConfigError(
            "sim.window", f"must be >= {MIN_WINDOW_MULTIPLE} * d = {MIN_WINDOW_MULTIPLE * params.d:g}, got {side:g}"
        )
    expected = params.lam * side * side
    if expected < MIN_EXPECTED_POINTS:
        logger.warning("sparse window: %.3g expected interferers (< %d)", expected, MIN_EXPECTED_POINTS)
    lost = far_field_exponent(params, pattern, cfg)
    if lost > FAR_FIELD_WARNING:
        logger.warning(
            "window %g m drops an interference exponent of about %.3g; estimates are biased upward",
            side, lost,
        )

    blocks = [
        (start, min(start + SIM_BLOCK_SIZE, cfg.replications))
        for start in range(0, cfg.replications, SIM_BLOCK_SIZE)
    ]
    counts = Parallel(n_jobs=cfg.n_jobs)(
        delayed(_simulate_block)(params, pattern, error, cfg, start, stop) for start, stop in blocks
    )
    successes = int(sum(counts))
    low, high = wilson_interval(successes, cfg.replications)
    logger.debug(
        "simulate_success %s / %s lambda=%g: %d of %d",
        pattern.describe(), error.describe(), params.lam, successes, cfg.replications,
    )
    return SimEstimate(successes / cfg.replications, low, high, cfg.replications, successes)
