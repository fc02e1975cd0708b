#!/usr/bin/env python3
"""
Beamwidth Sweep Generator
TP and TC (absolute and relative to omni antennas) against beamwidth
"""

import logging
import math
from functools import partial

from config import CSV_COLUMNS
from core.capacity import capacity, normalized_capacity, normalized_throughput, throughput
from core.exceptions import DomainError, NoRoot
from utils.helpers import run_sweep, write_results

logger = logging.getLogger(__name__)

COMMAND = "sweep-beamwidth"


def beamwidth_row(spec, omega_deg):
    """One beamwidth; beamwidths the pattern cannot realize give nan metrics"""
    omega_deg = float(omega_deg)
    params = spec.network_params()
    error = spec.error_model()
    outage = spec.outage()
    try:
        pattern = spec.pattern(omega_deg)
    except (DomainError, NoRoot) as exc:
        logger.warning("    omega = %g deg skipped: %s", omega_deg, exc)
        return [omega_deg, math.nan, math.nan, math.nan, math.nan, False]
    tc = capacity(params, pattern, error, outage)
    return [
        omega_deg,
        throughput(params, pattern, error).value,
        tc.value,
        normalized_throughput(params, pattern, error),
        normalized_capacity(params, pattern, error, outage),
        tc.feasible,
    ]


class BeamwidthSweepGenerator:
    """Generates TP/TC against beamwidth"""

    def __init__(self, spec, progress=False, xlsx=None):
        self.spec = spec
        self.progress = progress
        self.xlsx = xlsx

    def generate_rows(self):
        return run_sweep(
            partial(beamwidth_row, self.spec), self.spec.sweep(),
            n_jobs=self.spec.jobs, progress=self.progress, desc=COMMAND,
        )

    def generate_all_results(self):
        logger.info("[*] Sweeping %d beamwidths for %s antennas...", self.spec.sweep_points, self.spec.pattern_kind)
        rows = self.generate_rows()
        created = write_results(
            CSV_COLUMNS[COMMAND], rows, self.spec.echo_lines(),
            output=self.spec.output, xlsx=self.xlsx, sheet=COMMAND,
        )
        logger.info("    ✓ %d rows, %d with feasible TC", len(rows), sum(1 for row in rows if row[-1]))
        return created
