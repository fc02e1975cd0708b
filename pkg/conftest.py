"""Shared fixtures; puts the repository root on sys.path"""

import math
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from core.capacity import OutageConstraint  # noqa: E402
from core.error_models import TruncatedHalfNormalError  # noqa: E402
from core.link_analysis import NetworkParams  # noqa: E402
from core.patterns import RadiationPattern  # noqa: E402


@pytest.fixture
def params():
    """Default network: alpha=3, beta=4, d=100 m, eta=1e-12 W, P_t=1 W, lambda=1e-5"""
    return NetworkParams()


@pytest.fixture
def quiet_params():
    """Default network without noise"""
    return NetworkParams(eta=0.0)


@pytest.fixture
def halfnormal_3deg():
    return TruncatedHalfNormalError(math.radians(3.0))


@pytest.fixture
def sector_20deg():
    return RadiationPattern.ideal_sector(math.radians(20.0), 0.1)


@pytest.fixture
def sector_20deg_noside():
    return RadiationPattern.ideal_sector(math.radians(20.0), 0.0)


@pytest.fixture
def outage():
    return OutageConstraint(0.15)
