#!/usr/bin/env python3
"""
Induced gain laws
Gains seen by the typical pair through their orientation errors, and the
2/alpha gain moments of uniformly oriented interferers
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from config import (
    GRADED_NODES_DIVISOR,
    GRADING_LEVELS,
    GRADING_RATIO,
    QUADRATURE_ATOL,
    QUADRATURE_CHECK_NODES,
    QUADRATURE_NODES,
    QUADRATURE_RTOL,
)
from core.exceptions import DomainError, QuadratureNotConverged, WrongPattern
from core.patterns import THREEGPP_DECAY, PatternKind

logger = logging.getLogger(__name__)

PROBABILITY_SUM_TOLERANCE = 1e-12


class GainLawKind(str, Enum):
    TYPICAL_SECTOR = "typical"
    INTERFERER_SECTOR = "interferer"


@dataclass(frozen=True)
class DiscreteGainLaw:
    """Finitely many gain values and their probabilities"""

    atoms: tuple
    kind: GainLawKind

    def __post_init__(self):
        total = sum(prob for _, prob in self.atoms)
        if abs(total - 1.0) > PROBABILITY_SUM_TOLERANCE:
            raise DomainError("atoms", f"probabilities sum to {total!r}, expected 1")
        if any(value < 0.0 for value, _ in self.atoms):
            raise DomainError("atoms", "gains must be >= 0")

    def expectation(self, fn):
        return sum(prob * fn(value) for value, prob in self.atoms)

    def probability_of(self, value):
        return sum(prob for atom, prob in self.atoms if atom == value)


@dataclass(frozen=True)
class GainMoments:
    m_t: float
    m_r: float


def _law(pairs, kind):
    return DiscreteGainLaw(tuple((float(g), float(p)) for g, p in pairs if p > 0.0), kind)


def sector_gain_laws(pattern, error):
    """
    Gain laws of an ideal sector.

    The typical TX (or RX) hits its partner with probability u = F(omega/2);
    an interferer's boresight is uniform, so it hits with p = omega/2pi.
    Zero-probability atoms are dropped.

    Returns:
        (typical, interferer) pair of DiscreteGainLaw
    """
    if pattern.kind is not PatternKind.IDEAL_SECTOR:
        raise WrongPattern("sector_gain_laws", pattern.kind.value)
    u = float(error.cdf(min(pattern.omega / 2.0, math.pi)))
    p = pattern.omega / (2.0 * math.pi)
    typical = _law([(pattern.g1, u), (pattern.g2, 1.0 - u)], GainLawKind.TYPICAL_SECTOR)
    interferer = _law([(pattern.g1, p), (pattern.g2, 1.0 - p)], GainLawKind.INTERFERER_SECTOR)
    return typical, interferer


def _check_alpha(alpha):
    if not alpha > 2.0:
        raise DomainError("alpha", f"pathloss exponent must be > 2, got {alpha}")


def interferer_moment(pattern, alpha):
    """
    E[G^(2/alpha)] for a uniformly rotated pattern.

    Every family has an exact piecewise form; the ramps of the transition
    sector are linear, and the 3GPP main beam is Gaussian in angle.
    """
    _check_alpha(alpha)
    s = 2.0 / alpha
    kind = pattern.kind
    if kind is PatternKind.OMNI:
        return 1.0
    if kind is PatternKind.IDEAL_SECTOR:
        p = pattern.omega / (2.0 * math.pi)
        return p * pattern.g1**s + (1.0 - p) * pattern.g2**s
    if kind is PatternKind.TRANSITION_SECTOR:
        gamma = pattern.gamma
        theta1 = pattern.omega / 2.0 - gamma / 2.0
        theta3 = pattern.omega / 2.0 + gamma
        main = theta1 * pattern.g1**s + gamma * pattern.g1**s / (s + 1.0)
        side = 0.5 * gamma * pattern.g2**s / (s + 1.0) + (math.pi - theta3) * pattern.g2**s
        return (main + side) / math.pi

    half = pattern.omega / 2.0
    theta1 = min(pattern.theta1, math.pi)
    root = math.sqrt(THREEGPP_DECAY * s)
    main = pattern.g1**s * half * math.sqrt(math.pi) / (2.0 * root) * special.erf(root * theta1 / half)
    side = pattern.g2**s * (math.pi - theta1)
    return (main + side) / math.pi


def interferer_moment_quadrature(pattern, alpha):
    """Adaptive-quadrature version of interferer_moment, for cross-checks"""
    _check_alpha(alpha)
    s = 2.0 / alpha
    value, _ = integrate.quad(
        lambda t: pattern.gain(t) ** s,
        0.0,
        math.pi,
        points=pattern.breakpoints() or None,
        epsabs=1e-12,
        epsrel=1e-12,
        limit=200,
    )
    return value / math.pi


def gain_moments(pattern, alpha):
    """TX and RX interferer moments; the same pattern is used on both ends"""
    moment = interferer_moment(pattern, alpha)
    return GainMoments(m_t=moment, m_r=moment)


# ----------------------------------------------------------------------
# typical-pair expectation in error space
# ----------------------------------------------------------------------
def _flat_segments(pattern):
    """Angle ranges in [0, pi] where the gain is constant, with that gain"""
    if pattern.kind is PatternKind.TRANSITION_SECTOR:
        t1, t2, t3 = _transition_edges(pattern)
        segments = [(0.0, t1, pattern.g1), (t3, math.pi, pattern.g2)]
        if pattern.g2 == 0.0:
            segments.append((t2, t3, 0.0))
        return segments
    if pattern.kind is PatternKind.THREEGPP_SECTOR:
        return [(min(pattern.theta1, math.pi), math.pi, pattern.g2)]
    return []


def _transition_edges(pattern):
    half = pattern.omega / 2.0
    return half - pattern.gamma / 2.0, half + pattern.gamma / 2.0, half + pattern.gamma


def _graded_cuts(pattern):
    """
    Cuts packed toward the angle where a transition sector's gain is zero.

    Near that angle the integrand behaves like exp(-c / x^(2/alpha)), which
    switches on over a width that shrinks with the intensity; geometric
    panels resolve every such width with a fixed number of nodes each.
    """
    if pattern.kind is not PatternKind.TRANSITION_SECTOR:
        return ()
    t1, t2, t3 = _transition_edges(pattern)
    cuts = []
    for level in range(1, GRADING_LEVELS + 1):
        shrink = GRADING_RATIO**level
        cuts.append(t2 - (t2 - t1) * shrink)
        cuts.append(t2 + (t3 - t2) * shrink)
    return tuple(cuts)


def _is_graded(pattern, left, right):
    if pattern.kind is not PatternKind.TRANSITION_SECTOR:
        return False
    t1, _, t3 = _transition_edges(pattern)
    return t1 <= left and right <= t3


def _flat_gain(segments, left, right):
    for start, stop, level in segments:
        if start <= left and right <= stop:
            return level
    return None


def _split_points(pattern, error):
    upper = error.eps_max
    cuts = {0.0, upper}
    for point in tuple(pattern.breakpoints()) + tuple(error.breakpoints()) + _graded_cuts(pattern):
        if 0.0 < point < upper:
            cuts.add(point)
    return sorted(cuts)


@lru_cache(maxsize=256)
def _gain_nodes(pattern, error, nodes):
    """
    Quadrature rule for the law of G(|eps|).

    Stretches of constant gain become atoms weighted by their exact error
    mass. Every other subinterval between breakpoints gets a Gauss-Legendre
    rule whose weights carry the error density; the graded panels on the
    ramps of a transition sector use 1/GRADED_NODES_DIVISOR of the order.
    Weights sum to F(eps_max) = 1 up to quadrature error.
    """
    full = np.polynomial.legendre.leggauss(nodes)
    graded = np.polynomial.legendre.leggauss(max(nodes // GRADED_NODES_DIVISOR, 2))
    segments = _flat_segments(pattern)
    cuts = _split_points(pattern, error)

    atoms = {}
    angles, weights = [], []
    for left, right in zip(cuts[:-1], cuts[1:]):
        level = _flat_gain(segments, left, right)
        if level is not None:
            mass = float(error.cdf(right)) - float(error.cdf(left))
            atoms[level] = atoms.get(level, 0.0) + mass
            continue
        base_x, base_w = graded if _is_graded(pattern, left, right) else full
        half_width = 0.5 * (right - left)
        x = left + half_width * (base_x + 1.0)
        angles.append(x)
        weights.append(half_width * base_w * error.pdf(x))

    panel_gains = pattern.gain(np.concatenate(angles)) if angles else np.empty(0)
    gains = np.concatenate([np.asarray(panel_gains, dtype=float), np.fromiter(atoms.keys(), dtype=float)])
    weights = np.concatenate(weights + [np.fromiter(atoms.values(), dtype=float)])
    gains.setflags(write=False)
    weights.setflags(write=False)
    return gains, weights


def _tensor_expectation(fn, pattern, error, nodes):
    gains, weights = _gain_nodes(pattern, error, nodes)
    values = fn(gains[:, None], gains[None, :])
    return float(weights @ np.asarray(values, dtype=float) @ weights)


def typical_gain_expectation(fn, pattern, error, nodes=None):
    """
    E[fn(G(eps_x), G(eps_y))] over independent TX and RX orientation errors.

    fn must accept numpy arrays of gains. Ideal sectors and omni antennas
    reduce to finite sums; continuous patterns use a tensor Gauss-Legendre
    rule checked against one of twice the order. Passing nodes selects a
    single rule of that order and skips the check.

    Raises:
        QuadratureNotConverged: if the two orders disagree beyond tolerance
    """
    if pattern.kind is PatternKind.OMNI:
        return float(fn(1.0, 1.0))
    if pattern.kind is PatternKind.IDEAL_SECTOR:
        typical, _ = sector_gain_laws(pattern, error)
        return float(sum(
            p_t * p_r * fn(g_t, g_r)
            for g_t, p_t in typical.atoms
            for g_r, p_r in typical.atoms
        ))
    if error.eps_max <= 0.0:
        boresight = pattern.gain(0.0)
        return float(fn(boresight, boresight))
    if nodes is not None:
        return _tensor_expectation(fn, pattern, error, nodes)

    coarse = _tensor_expectation(fn, pattern, error, QUADRATURE_NODES)
    fine = _tensor_expectation(fn, pattern, error, QUADRATURE_CHECK_NODES)
    gap = abs(fine - coarse)
    logger.debug(
        "typical_gain_expectation %s / %s: %d-node %r, %d-node %r",
        pattern.describe(), error.describe(), QUADRATURE_NODES, coarse, QUADRATURE_CHECK_NODES, fine,
    )
    if gap > QUADRATURE_RTOL * max(abs(fine), QUADRATURE_ATOL / QUADRATURE_RTOL):
        raise QuadratureNotConverged(
            "typical_gain_expectation",
            f"{QUADRATURE_NODES}- and {QUADRATURE_CHECK_NODES}-node results differ by {gap:.3g} "
            f"({pattern.describe()}, {error.describe()})",
        )
    return fine
