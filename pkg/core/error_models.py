#!/usr/bin/env python3
"""
Orientation error models
Distributions of the absolute beam orientation error |eps| on [0, eps_max]

The truncated families are parameterized by their mean before truncation to
[0, pi]. Truncation rescales the cdf, so the logarithmic derivative f/F of
the untruncated family is preserved.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import ClassVar

import numpy as np
from scipy import integrate, stats

from config import CONCAVITY_GRID_POINTS, CONCAVITY_TOLERANCE, SCALE_BREAKPOINTS
from core.exceptions import DomainError


class ErrorKind(str, Enum):
    ZERO = "zero"
    UNIFORM = "uniform"
    EXPONENTIAL = "exponential"
    HALF_NORMAL = "halfnormal"
    DIMPLE = "dimple"


def _as_output(x, values):
    if np.ndim(x) == 0:
        return float(values)
    return values


def _check_angles(x):
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0.0) or np.any(arr > math.pi) or np.any(np.isnan(arr)):
        raise DomainError("x", f"absolute error must lie in [0, pi], got {x}")
    return arr


@dataclass(frozen=True)
class ConcavityReport:
    concave: bool
    max_violation: float


class OrientationErrorModel(ABC):
    """Law of the absolute orientation error |eps|"""

    kind: ClassVar[ErrorKind]

    @property
    def eps_max(self):
        return math.pi

    @abstractmethod
    def _cdf(self, x):
        ...

    @abstractmethod
    def _pdf(self, x):
        ...

    @abstractmethod
    def _pdf_slope(self, x):
        ...

    @abstractmethod
    def _quantile(self, q):
        ...

    def cdf(self, x):
        """F(x); equals 1 beyond eps_max"""
        arr = _check_angles(x)
        values = np.where(arr >= self.eps_max, 1.0, self._cdf(np.minimum(arr, self.eps_max)))
        return _as_output(x, np.clip(values, 0.0, 1.0))

    def pdf(self, x):
        """Density of |eps|; zero beyond eps_max"""
        arr = _check_angles(x)
        values = np.where(arr > self.eps_max, 0.0, self._pdf(np.minimum(arr, self.eps_max)))
        return _as_output(x, values)

    def pdf_derivative(self, x):
        arr = _check_angles(x)
        values = np.where(arr > self.eps_max, 0.0, self._pdf_slope(np.minimum(arr, self.eps_max)))
        return _as_output(x, values)

    def quantile(self, q):
        """Least x with F(x) >= q"""
        arr = np.asarray(q, dtype=float)
        if np.any(arr < 0.0) or np.any(arr > 1.0) or np.any(np.isnan(arr)):
            raise DomainError("q", f"probability must lie in [0, 1], got {q}")
        values = np.clip(self._quantile(arr), 0.0, self.eps_max)
        values = np.where(arr <= 0.0, 0.0, np.where(arr >= 1.0, self.eps_max, values))
        return _as_output(q, values)

    def sample_abs(self, rng, size=None):
        """Absolute errors by inverse-transform sampling"""
        return self.quantile(rng.random(size))

    def sample(self, rng, size=None):
        """Signed errors: |eps| times an independent fair sign"""
        magnitude = self.sample_abs(rng, size)
        sign = np.where(rng.random(size) < 0.5, -1.0, 1.0)
        return _as_output(magnitude, magnitude * sign)

    def mean(self):
        """Mean of |eps| after truncation"""
        value, _ = integrate.quad(
            lambda t: t * self.pdf(t), 0.0, self.eps_max, points=self.breakpoints() or None, limit=200
        )
        return value

    def breakpoints(self):
        """Points in (0, eps_max) worth splitting a quadrature at"""
        return ()

    @abstractmethod
    def describe(self):
        ...


@dataclass(frozen=True)
class ZeroError(OrientationErrorModel):
    """Perfect orientation: an atom at 0"""

    kind: ClassVar[ErrorKind] = ErrorKind.ZERO

    @property
    def eps_max(self):
        return 0.0

    def _cdf(self, x):
        return np.ones_like(x)

    def _pdf(self, x):
        return np.zeros_like(x)

    def _pdf_slope(self, x):
        return np.zeros_like(x)

    def _quantile(self, q):
        return np.zeros_like(q)

    def mean(self):
        return 0.0

    def describe(self):
        return "zero"


@dataclass(frozen=True)
class UniformError(OrientationErrorModel):
    """|eps| uniform on [0, bound]"""

    bound: float = math.pi
    kind: ClassVar[ErrorKind] = ErrorKind.UNIFORM

    def __post_init__(self):
        if not 0.0 < self.bound <= math.pi:
            raise DomainError("eps_max", f"uniform bound must lie in (0, pi], got {self.bound}")

    @property
    def eps_max(self):
        return self.bound

    @cached_property
    def _dist(self):
        return stats.uniform(loc=0.0, scale=self.bound)

    def _cdf(self, x):
        return self._dist.cdf(x)

    def _pdf(self, x):
        return self._dist.pdf(x)

    def _pdf_slope(self, x):
        return np.zeros_like(x)

    def _quantile(self, q):
        return self._dist.ppf(q)

    def mean(self):
        return self.bound / 2.0

    def describe(self):
        return f"uniform(eps_max={math.degrees(self.bound):.6g}deg)"


@dataclass(frozen=True)
class TruncatedExponentialError(OrientationErrorModel):
    """Exponential with rate 1/mean, truncated to [0, pi]"""

    mean_pre_truncation: float
    kind: ClassVar[ErrorKind] = ErrorKind.EXPONENTIAL

    def __post_init__(self):
        if not self.mean_pre_truncation > 0.0:
            raise DomainError("mean", f"must be > 0, got {self.mean_pre_truncation}")

    @cached_property
    def _dist(self):
        scale = self.mean_pre_truncation
        return stats.truncexpon(b=math.pi / scale, scale=scale)

    def _cdf(self, x):
        return self._dist.cdf(x)

    def _pdf(self, x):
        return self._dist.pdf(x)

    def _pdf_slope(self, x):
        return -self._dist.pdf(x) / self.mean_pre_truncation

    def _quantile(self, q):
        return self._dist.ppf(q)

    def mean(self):
        return float(self._dist.mean())

    def breakpoints(self):
        return tuple(k * self.mean_pre_truncation for k in SCALE_BREAKPOINTS
                     if k * self.mean_pre_truncation < math.pi)

    def describe(self):
        return f"exponential(mean={math.degrees(self.mean_pre_truncation):.6g}deg)"


@dataclass(frozen=True)
class TruncatedHalfNormalError(OrientationErrorModel):
    """Half-normal with sigma = mean * sqrt(pi/2), truncated to [0, pi]"""

    mean_pre_truncation: float
    kind: ClassVar[ErrorKind] = ErrorKind.HALF_NORMAL

    def __post_init__(self):
        if not self.mean_pre_truncation > 0.0:
            raise DomainError("mean", f"must be > 0, got {self.mean_pre_truncation}")

    @property
    def sigma(self):
        return self.mean_pre_truncation * math.sqrt(math.pi / 2.0)

    @cached_property
    def _dist(self):
        return stats.truncnorm(a=0.0, b=math.pi / self.sigma, loc=0.0, scale=self.sigma)

    def _cdf(self, x):
        return self._dist.cdf(x)

    def _pdf(self, x):
        return self._dist.pdf(x)

    def _pdf_slope(self, x):
        return -x / self.sigma**2 * self._dist.pdf(x)

    def _quantile(self, q):
        return self._dist.ppf(q)

    def mean(self):
        return float(self._dist.mean())

    def breakpoints(self):
        return tuple(k * self.sigma for k in SCALE_BREAKPOINTS if k * self.sigma < math.pi)

    def describe(self):
        return f"halfnormal(mean={math.degrees(self.mean_pre_truncation):.6g}deg)"


@dataclass(frozen=True)
class DimpleError(OrientationErrorModel):
    """
    Two glued truncated exponentials on [0, pi] meeting at F(a) = b.

    With a steep first piece (large c1) the density jumps upward at a, so
    the cdf is not concave.
    """

    a: float = 0.5
    b: float = 0.5
    c1: float = 15.0
    c2: float = 1.0
    kind: ClassVar[ErrorKind] = ErrorKind.DIMPLE

    def __post_init__(self):
        if not 0.0 < self.a < math.pi:
            raise DomainError("dimple.a", f"must lie in (0, pi), got {self.a}")
        if not 0.0 < self.b < 1.0:
            raise DomainError("dimple.b", f"must lie in (0, 1), got {self.b}")
        if not self.c1 > 0.0:
            raise DomainError("dimple.c1", f"must be > 0, got {self.c1}")
        if not self.c2 > 0.0:
            raise DomainError("dimple.c2", f"must be > 0, got {self.c2}")

    @property
    def _left_mass(self):
        return -math.expm1(-self.c1 * self.a)

    @property
    def _right_mass(self):
        return -math.expm1(-self.c2 * (math.pi - self.a))

    def _cdf(self, x):
        left = self.b * -np.expm1(-self.c1 * x) / self._left_mass
        right = self.b + (1.0 - self.b) * -np.expm1(-self.c2 * (x - self.a)) / self._right_mass
        return np.where(x <= self.a, left, right)

    def _pdf(self, x):
        left = self.b * self.c1 * np.exp(-self.c1 * x) / self._left_mass
        right = (1.0 - self.b) * self.c2 * np.exp(-self.c2 * (x - self.a)) / self._right_mass
        return np.where(x <= self.a, left, right)

    def _pdf_slope(self, x):
        return np.where(x <= self.a, -self.c1, -self.c2) * self._pdf(x)

    def _quantile(self, q):
        with np.errstate(divide="ignore", invalid="ignore"):
            left = -np.log1p(-q * self._left_mass / self.b) / self.c1
            right = self.a - np.log1p(-(q - self.b) * self._right_mass / (1.0 - self.b)) / self.c2
        return np.where(q <= self.b, left, right)

    def breakpoints(self):
        return (self.a,)

    def describe(self):
        return f"dimple(a={self.a:.6g}, b={self.b:.6g}, c1={self.c1:.6g}, c2={self.c2:.6g})"


# ----------------------------------------------------------------------
# module-level operations
# ----------------------------------------------------------------------
def cdf(model, x):
    return model.cdf(x)


def pdf(model, x):
    return model.pdf(x)


def quantile(model, q):
    return model.quantile(q)


def sample(model, rng, size=None):
    return model.sample(rng, size)


def is_concave_cdf(model, points=CONCAVITY_GRID_POINTS):
    """
    Grid diagnostic for concavity of F: the density must be nonincreasing.

    Returns the worst positive density slope found; zero for concave models.
    """
    if model.eps_max <= 0.0:
        return ConcavityReport(concave=True, max_violation=0.0)
    grid = np.linspace(0.0, model.eps_max, points)
    slopes = np.diff(model.pdf(grid)) / np.diff(grid)
    worst = max(float(np.max(slopes)), 0.0)
    return ConcavityReport(concave=worst <= CONCAVITY_TOLERANCE, max_violation=worst)


def log_derivative_bound(model, points=CONCAVITY_GRID_POINTS):
    """Largest x * f(x) / F(x) over a grid on (0, eps_max]"""
    if model.eps_max <= 0.0:
        return 0.0
    grid = np.linspace(0.0, model.eps_max, points + 1)[1:]
    return float(np.max(grid * model.pdf(grid) / model.cdf(grid)))


def build_error_model(kind, mean=None, eps_max=None, dimple=None):
    """
    Build an error model from interface parameters (radians).

    Uniform models take eps_max, or twice the mean when only a mean is given.
    """
    kind = ErrorKind(kind)
    if kind is ErrorKind.ZERO:
        return ZeroError()
    if kind is ErrorKind.UNIFORM:
        bound = eps_max if eps_max is not None else (2.0 * mean if mean is not None else math.pi)
        return UniformError(bound=bound)
    if kind is ErrorKind.DIMPLE:
        return DimpleError(**(dimple or {}))
    if mean is None:
        raise DomainError("mean", f"{kind.value} error needs a mean")
    if kind is ErrorKind.EXPONENTIAL:
        return TruncatedExponentialError(mean_pre_truncation=mean)
    return TruncatedHalfNormalError(mean_pre_truncation=mean)
