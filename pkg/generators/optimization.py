#!/usr/bin/env python3
"""
Optimization Generator
Best beamwidth and the metric it attains, against the mean orientation error
"""

import logging
import math
from functools import partial

from config import CSV_COLUMNS
from core.capacity import Metric, optimize_beamwidth, tc_beamwidth_maximizer
from core.exceptions import DomainError
from core.patterns import PatternKind
from utils.helpers import rad_to_deg, run_sweep, write_results

logger = logging.getLogger(__name__)

COMMAND = "optimize"


def closed_form_maximizer_deg(spec, error):
    """TC maximizer from the optimality equation; nan where it does not apply"""
    if spec.metric != Metric.TC.value or spec.pattern_kind != PatternKind.IDEAL_SECTOR.value or spec.g2 != 0.0:
        return math.nan
    try:
        return rad_to_deg(tc_beamwidth_maximizer(error, spec.outage()))
    except DomainError as exc:
        logger.debug("no closed-form maximizer: %s", exc)
        return math.nan


def optimization_row(spec, mean_deg):
    mean_deg = float(mean_deg)
    error = spec.error_model(mean_deg)
    outage = spec.outage() if spec.metric == Metric.TC.value else None
    best = optimize_beamwidth(
        spec.network_params(), spec.pattern_family(), error, spec.metric, outage,
        grid_points=spec.grid_points,
    )
    return [
        mean_deg,
        spec.metric,
        rad_to_deg(best.omega_star),
        best.value,
        closed_form_maximizer_deg(spec, error),
    ]


class OptimizationGenerator:
    """Generates omega*(mean error) tables"""

    def __init__(self, spec, progress=False, xlsx=None):
        self.spec = spec
        self.progress = progress
        self.xlsx = xlsx

    def generate_rows(self):
        return run_sweep(
            partial(optimization_row, self.spec), self.spec.sweep(),
            n_jobs=self.spec.jobs, progress=self.progress, desc=COMMAND,
        )

    def generate_all_results(self):
        logger.info(
            "[*] Optimizing beamwidth for %s over %d mean errors...", self.spec.metric, self.spec.sweep_points
        )
        rows = self.generate_rows()
        created = write_results(
            CSV_COLUMNS[COMMAND], rows, self.spec.echo_lines(),
            output=self.spec.output, xlsx=self.xlsx, sheet=COMMAND,
        )
        logger.info("    ✓ %d rows", len(rows))
        return created
