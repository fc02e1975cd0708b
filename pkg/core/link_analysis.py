#!/usr/bin/env python3
"""
Success probability of the typical transmission
Rayleigh fading, Poisson interferers with random boresights, and the typical
pair's orientation errors
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np
from scipy import special

from config import (
    DEFAULT_ALPHA,
    DEFAULT_BETA,
    DEFAULT_DISTANCE,
    DEFAULT_INTENSITY,
    DEFAULT_NOISE,
    DEFAULT_TX_POWER,
)
from core.exceptions import DomainError, WrongPattern
from core.gains import interferer_moment, typical_gain_expectation
from core.patterns import PatternKind

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NetworkParams:
    """Intensity (per m^2), link distance (m), pathloss, SINR threshold, noise (W), TX power (W)"""

    lam: float = DEFAULT_INTENSITY
    d: float = DEFAULT_DISTANCE
    alpha: float = DEFAULT_ALPHA
    beta: float = DEFAULT_BETA
    eta: float = DEFAULT_NOISE
    p_t: float = DEFAULT_TX_POWER

    def __post_init__(self):
        checks = (
            ("lambda", self.lam, self.lam >= 0.0, ">= 0"),
            ("d", self.d, self.d > 0.0, "> 0"),
            ("alpha", self.alpha, self.alpha > 2.0, "> 2"),
            ("beta", self.beta, self.beta > 0.0, "> 0"),
            ("eta", self.eta, self.eta >= 0.0, ">= 0"),
            ("pt", self.p_t, self.p_t > 0.0, "> 0"),
        )
        for name, value, ok, rule in checks:
            if not ok:
                raise DomainError(name, f"must be {rule}, got {value}")

    @property
    def kappa(self):
        """Gamma(1 + 2/alpha) * Gamma(1 - 2/alpha)"""
        s = 2.0 / self.alpha
        return float(special.gamma(1.0 + s) * special.gamma(1.0 - s))

    def with_lambda(self, lam):
        return replace(self, lam=float(lam))

    def with_noise(self, eta):
        return replace(self, eta=float(eta))


def interference_scale(params):
    """pi * kappa * beta^(2/alpha) * d^2, the omni interference exponent per unit intensity"""
    return math.pi * params.kappa * params.beta ** (2.0 / params.alpha) * params.d**2


def noise_exponent(params):
    """beta * d^alpha * eta / P_t"""
    return params.beta * params.d**params.alpha * params.eta / params.p_t


def noise_failure_rate(params, g=1.0):
    """Outage caused by noise alone on a link with combined gain g"""
    return -math.expm1(-noise_exponent(params) / g)


def _clamp(value):
    return min(max(float(value), 0.0), 1.0)


def conditional_success(params, pattern):
    """
    Success probability given the typical pair's gains, as a vectorized
    function of (g_t, g_r). Pairs with zero combined gain never succeed.
    """
    s = 2.0 / params.alpha
    moment = interferer_moment(pattern, params.alpha)
    interference = params.lam * interference_scale(params) * moment * moment
    noise = noise_exponent(params)

    def given_gains(g_t, g_r):
        product = np.asarray(g_t * g_r, dtype=float)
        positive = product > 0.0
        safe = np.where(positive, product, 1.0)
        return np.where(positive, np.exp(-interference / safe**s - noise / safe), 0.0)

    return given_gains


def success_general(params, pattern, error, nodes=None):
    """
    Success probability for any pattern and error model.

    nodes selects a single unchecked quadrature rule of that order; by
    default two orders are compared (see typical_gain_expectation).
    """
    fn = conditional_success(params, pattern)
    return _clamp(typical_gain_expectation(fn, pattern, error, nodes=nodes))


def success_omni(params):
    return _clamp(math.exp(-params.lam * interference_scale(params) - noise_exponent(params)))


def _require_sector(pattern, operation):
    if pattern.kind is not PatternKind.IDEAL_SECTOR:
        raise WrongPattern(operation, pattern.kind.value)


def success_sector(params, pattern, error):
    """Ideal sector with sidelobes: the hit/hit, hit/miss and miss/miss terms"""
    _require_sector(pattern, "success_sector")
    if not pattern.g2 > 0.0:
        raise DomainError("g2", "success_sector needs g2 > 0; use success_sector_noside")
    s = 2.0 / params.alpha
    g1, g2 = pattern.g1, pattern.g2
    p = pattern.omega / (2.0 * math.pi)
    moment = p * g1**s + (1.0 - p) * g2**s
    interference = params.lam * interference_scale(params) * moment * moment
    noise = noise_exponent(params)
    u = float(error.cdf(pattern.omega / 2.0))

    def term(product):
        return math.exp(-interference / product**s - noise / product)

    total = u * u * term(g1 * g1) + 2.0 * u * (1.0 - u) * term(g1 * g2) + (1.0 - u) ** 2 * term(g2 * g2)
    return _clamp(total)


def success_sector_noside(params, pattern, error):
    """Ideal sector without sidelobes: u^2 exp(-lambda A p^2) exp(-B / g1^2)"""
    _require_sector(pattern, "success_sector_noside")
    if pattern.g2 != 0.0:
        raise DomainError("g2", f"success_sector_noside needs g2 = 0, got {pattern.g2}")
    p = pattern.omega / (2.0 * math.pi)
    u = float(error.cdf(pattern.omega / 2.0))
    exponent = params.lam * interference_scale(params) * p * p + noise_exponent(params) / pattern.g1**2
    return _clamp(u * u * math.exp(-exponent))


def success_probability(params, pattern, error):
    """Closed form where one exists, the general evaluator otherwise"""
    if pattern.kind is PatternKind.OMNI:
        return success_omni(params)
    if pattern.kind is PatternKind.IDEAL_SECTOR:
        if pattern.g2 == 0.0:
            return success_sector_noside(params, pattern, error)
        return success_sector(params, pattern, error)
    return success_general(params, pattern, error)
