#!/usr/bin/env python3
"""
Antenna radiation patterns
Symmetric 2-D gain patterns normalized to unit total radiated power (TRP)

Four families are supported: omni-directional, the ideal sector, a sector
with linear transition ramps, and the 3GPP-style sector whose main-beam gain
is solved numerically. All angles are radians and all gains are linear power
gains.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate, optimize, special

from config import G1_SOLVER_XTOL
from core.exceptions import DomainError, NoRoot

TWO_PI = 2.0 * math.pi

# 10^(-0.3 t^2) = exp(-THREEGPP_DECAY * t^2)
THREEGPP_DECAY = 0.3 * math.log(10.0)


class PatternKind(str, Enum):
    OMNI = "omni"
    IDEAL_SECTOR = "ideal"
    TRANSITION_SECTOR = "transition"
    THREEGPP_SECTOR = "3gpp"


def wrap_angle(theta):
    """Wrap angles into [-pi, pi)"""
    return np.mod(np.asarray(theta, dtype=float) + math.pi, TWO_PI) - math.pi


def _like_input(theta, values):
    if np.ndim(theta) == 0:
        return float(values)
    return values


@dataclass(frozen=True)
class RadiationPattern:
    """
    A TRP-normalized radiation pattern.

    Build instances through the classmethods; they derive g1 from the other
    parameters. Direct construction is validated but g1 is taken as given.
    """

    kind: PatternKind
    omega: float = TWO_PI
    g2: float = 1.0
    gamma: float = 0.0
    g1: float = 1.0

    def __post_init__(self):
        if self.kind is PatternKind.OMNI:
            return
        if not 0.0 <= self.g2:
            raise DomainError("g2", f"sidelobe gain must be >= 0, got {self.g2}")
        if self.kind is PatternKind.IDEAL_SECTOR:
            if not 0.0 < self.omega <= TWO_PI:
                raise DomainError("omega", f"must lie in (0, 2pi], got {self.omega}")
            if not self.g2 < 1.0:
                raise DomainError("g2", f"must be < 1 for an ideal sector, got {self.g2}")
        elif self.kind is PatternKind.TRANSITION_SECTOR:
            if not 0.0 < self.gamma < min(self.omega, math.pi - self.omega / 2.0):
                raise DomainError(
                    "gamma", f"must lie in (0, min(omega, pi - omega/2)), got {self.gamma}"
                )
            if not 0.0 < self.omega < TWO_PI - 2.0 * self.gamma:
                raise DomainError("omega", f"must lie in (0, 2pi - 2gamma), got {self.omega}")
            g2_limit = 1.0 / (1.0 - 3.0 * self.gamma / (4.0 * math.pi))
            if not self.g2 < g2_limit:
                raise DomainError("g2", f"must be < {g2_limit:.6g} for this gamma, got {self.g2}")
        elif self.kind is PatternKind.THREEGPP_SECTOR:
            if not 0.0 < self.omega <= TWO_PI:
                raise DomainError("omega", f"must lie in (0, 2pi], got {self.omega}")
            if not self.g1 > self.g2 > 0.0:
                raise DomainError("g2", f"3GPP sector needs g1 > g2 > 0, got g1={self.g1}, g2={self.g2}")
            if self.theta1 > math.pi:
                raise DomainError("omega", f"theta1 = {self.theta1:.6g} exceeds pi")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def omni(cls):
        return cls(PatternKind.OMNI)

    @classmethod
    def ideal_sector(cls, omega, g2=0.0):
        g1 = (TWO_PI - (TWO_PI - omega) * g2) / omega if omega > 0 else math.inf
        return cls(PatternKind.IDEAL_SECTOR, omega=float(omega), g2=float(g2), g1=g1)

    @classmethod
    def transition_sector(cls, omega, g2, gamma):
        g1 = (TWO_PI - (TWO_PI - 1.5 * gamma - omega) * g2) / omega if omega > 0 else math.inf
        return cls(
            PatternKind.TRANSITION_SECTOR,
            omega=float(omega),
            g2=float(g2),
            gamma=float(gamma),
            g1=g1,
        )

    @classmethod
    def threegpp_sector(cls, omega, g2):
        g1 = solve_g1_3gpp(omega, g2)
        return cls(PatternKind.THREEGPP_SECTOR, omega=float(omega), g2=float(g2), g1=g1)

    # ------------------------------------------------------------------
    # geometry
    # ------------------------------------------------------------------
    @property
    def theta1(self):
        """Edge of the flat (or 3GPP-shaped) main beam"""
        if self.kind is PatternKind.TRANSITION_SECTOR:
            return self.omega / 2.0 - self.gamma / 2.0
        if self.kind is PatternKind.THREEGPP_SECTOR:
            return _threegpp_theta1(self.omega, self.g1, self.g2)
        return self.omega / 2.0

    def breakpoints(self):
        """Absolute angles in (0, pi) where the piecewise definition changes"""
        if self.kind is PatternKind.OMNI:
            points = ()
        elif self.kind is PatternKind.TRANSITION_SECTOR:
            half = self.omega / 2.0
            points = (half - self.gamma / 2.0, half + self.gamma / 2.0, half + self.gamma)
        else:
            points = (self.theta1,)
        return tuple(p for p in points if 0.0 < p < math.pi)

    def gain(self, theta):
        """Linear power gain at angle(s) theta relative to boresight"""
        a = np.abs(wrap_angle(theta))
        if self.kind is PatternKind.OMNI:
            values = np.ones_like(a)
        elif self.kind is PatternKind.IDEAL_SECTOR:
            values = np.where(a <= self.omega / 2.0, self.g1, self.g2)
        elif self.kind is PatternKind.TRANSITION_SECTOR:
            t1, t2, t3 = (
                self.omega / 2.0 - self.gamma / 2.0,
                self.omega / 2.0 + self.gamma / 2.0,
                self.omega / 2.0 + self.gamma,
            )
            values = np.select(
                [a <= t1, a <= t2, a <= t3],
                [
                    np.full_like(a, self.g1),
                    self.g1 - self.g1 / self.gamma * (a - t1),
                    2.0 * self.g2 / self.gamma * (a - t2),
                ],
                default=self.g2,
            )
        else:
            half = self.omega / 2.0
            values = np.where(
                a <= self.theta1,
                self.g1 * np.power(10.0, -0.3 * (a / half) ** 2),
                self.g2,
            )
        return _like_input(theta, values)

    def describe(self):
        if self.kind is PatternKind.OMNI:
            return "omni"
        text = f"{self.kind.value}(omega={math.degrees(self.omega):.6g}deg, g1={self.g1:.6g}, g2={self.g2:.6g}"
        if self.kind is PatternKind.TRANSITION_SECTOR:
            text += f", gamma={math.degrees(self.gamma):.6g}deg"
        return text + ")"


def gain(pattern, theta):
    """Gain of pattern at theta (wrapped into [-pi, pi) first)"""
    return pattern.gain(theta)


def trp(pattern):
    """
    Numeric total radiated power (1/2pi) * integral of G over the circle.

    Diagnostic only: adaptive quadrature split at the pattern breakpoints.
    """
    value, _ = integrate.quad(
        pattern.gain,
        0.0,
        math.pi,
        points=pattern.breakpoints() or None,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=200,
    )
    return value / math.pi


# ----------------------------------------------------------------------
# 3GPP main-beam gain
# ----------------------------------------------------------------------
def _threegpp_theta1(omega, g1, g2):
    if g2 <= 0.0:
        return math.inf
    ratio = max(g1 / g2, 1.0)
    return omega / 2.0 * math.sqrt(10.0 / 3.0 * math.log10(ratio))


def _threegpp_trp(omega, g1, g2):
    """Closed-form TRP of the 3GPP sector with theta1 clipped at pi"""
    half = omega / 2.0
    edge = min(_threegpp_theta1(omega, g1, g2), math.pi)
    root_c = math.sqrt(THREEGPP_DECAY)
    main = g1 * half * math.sqrt(math.pi) / (2.0 * root_c) * special.erf(root_c * edge / half)
    side = g2 * (math.pi - edge)
    return (main + side) / math.pi


def solve_g1_3gpp(omega, g2):
    """
    Main-beam gain g1 giving the 3GPP sector unit TRP.

    The TRP is increasing in g1, so Brent's method on the bracket
    [1, 2pi/omega * (1 + g2 * 2pi/omega)] finds the unique root.

    Raises:
        NoRoot: if theta1 cannot land in [0, pi] or the bracket holds no root
    """
    operation = "solve_g1_3gpp"
    if not 0.0 < omega <= TWO_PI:
        raise NoRoot(operation, f"omega in (0, 2pi] violated (omega={omega})")
    if g2 <= 0.0:
        raise NoRoot(operation, "theta1 in [0, pi] violated: g2 = 0 never reaches the sidelobe level")
    if g2 >= 1.0:
        raise NoRoot(operation, f"g2 < 1 violated (g2={g2}); unit TRP needs g1 > 1 > g2")

    def residual(g1):
        return _threegpp_trp(omega, g1, g2) - 1.0

    low = 1.0
    high = TWO_PI / omega * (1.0 + g2 * TWO_PI / omega)
    if residual(low) >= 0.0 or residual(high) <= 0.0:
        raise NoRoot(operation, f"no unit-TRP root in g1 bracket [{low}, {high:.6g}]")

    g1 = optimize.brentq(residual, low, high, xtol=G1_SOLVER_XTOL, maxiter=500)
    theta1 = _threegpp_theta1(omega, g1, g2)
    if theta1 > math.pi:
        raise NoRoot(
            operation,
            f"theta1 in [0, pi] violated: theta1 = {theta1:.6g} for omega={omega:.6g}, g2={g2:.6g}",
        )
    return g1
