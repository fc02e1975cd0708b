#!/usr/bin/env python3
"""
Success Curve Generator
Success probability of the typical link against transmitter intensity
"""

import logging
from functools import partial

from config import CSV_COLUMNS
from core.link_analysis import success_general, success_omni
from utils.helpers import run_sweep, write_results

logger = logging.getLogger(__name__)

COMMAND = "success-curve"


def success_row(spec, lam):
    """One intensity: general evaluator next to the omni closed form"""
    params = spec.network_params(lam=float(lam))
    ps = success_general(params, spec.pattern(), spec.error_model())
    return [float(lam), ps, success_omni(params)]


class SuccessCurveGenerator:
    """Generates p_s(lambda) tables"""

    def __init__(self, spec, progress=False, xlsx=None):
        self.spec = spec
        self.progress = progress
        self.xlsx = xlsx

    def generate_rows(self):
        return run_sweep(
            partial(success_row, self.spec), self.spec.sweep(),
            n_jobs=self.spec.jobs, progress=self.progress, desc=COMMAND,
        )

    def generate_all_results(self):
        """Compute the curve and write it; returns the created files"""
        logger.info("[*] Computing success probability over %d intensities...", self.spec.sweep_points)
        rows = self.generate_rows()
        created = write_results(
            CSV_COLUMNS[COMMAND], rows, self.spec.echo_lines(),
            output=self.spec.output, xlsx=self.xlsx, sheet=COMMAND,
        )
        logger.info("    ✓ %d rows", len(rows))
        return created
