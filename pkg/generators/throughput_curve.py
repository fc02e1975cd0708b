#!/usr/bin/env python3
"""
Throughput Curve Generator
Density of successful transmissions lambda * p_s(lambda) against intensity
"""

import logging
from functools import partial

from config import CSV_COLUMNS
from core.link_analysis import success_general, success_omni
from utils.helpers import run_sweep, write_results

logger = logging.getLogger(__name__)

COMMAND = "throughput-curve"


def throughput_row(spec, lam):
    lam = float(lam)
    params = spec.network_params(lam=lam)
    ps = success_general(params, spec.pattern(), spec.error_model())
    return [lam, ps, lam * ps, lam * success_omni(params)]


class ThroughputCurveGenerator:
    """Generates lambda * p_s(lambda) tables"""

    def __init__(self, spec, progress=False, xlsx=None):
        self.spec = spec
        self.progress = progress
        self.xlsx = xlsx

    def generate_rows(self):
        return run_sweep(
            partial(throughput_row, self.spec), self.spec.sweep(),
            n_jobs=self.spec.jobs, progress=self.progress, desc=COMMAND,
        )

    def generate_all_results(self):
        logger.info("[*] Computing throughput over %d intensities...", self.spec.sweep_points)
        rows = self.generate_rows()
        created = write_results(
            CSV_COLUMNS[COMMAND], rows, self.spec.echo_lines(),
            output=self.spec.output, xlsx=self.xlsx, sheet=COMMAND,
        )
        logger.info("    ✓ %d rows", len(rows))
        return created
