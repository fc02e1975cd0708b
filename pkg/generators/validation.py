#!/usr/bin/env python3
"""
Validation Generator
Agreement checks between closed forms, quadrature, numeric optimization and
the Monte Carlo simulator for the configured antennas
"""

import logging
import math

import numpy as np

from config import (
    CSV_COLUMNS,
    MIN_WINDOW_MULTIPLE,
    TRP_TOLERANCE,
    VALIDATION_MAX_POINTS,
    VALIDATION_SIGMAS,
)
from core.capacity import (
    tc_numeric,
    tc_omni,
    tc_sector_noside,
    tp_numeric,
    tp_omni,
    tp_sector_noside,
)
from core.error_models import ZeroError
from core.gains import interferer_moment, interferer_moment_quadrature
from core.link_analysis import success_general, success_probability
from core.patterns import PatternKind, RadiationPattern, trp
from core.simulate import SimConfig, far_field_bias, far_field_exponent, simulate_success
from utils.helpers import write_results

logger = logging.getLogger(__name__)

COMMAND = "validate"

CLOSED_FORM_TOLERANCE = 1e-10
MOMENT_TOLERANCE = 1e-9
OPTIMIZER_RTOL = 1e-6


class ValidationGenerator:
    """Runs the agreement suite and tabulates every check"""

    def __init__(self, spec, progress=False, xlsx=None):
        self.spec = spec
        self.progress = progress
        self.xlsx = xlsx
        self.rows = []

    @property
    def failures(self):
        return [row for row in self.rows if not row[-1]]

    def record(self, check, expected, observed, tolerance):
        passed = abs(observed - expected) <= tolerance
        self.rows.append([check, expected, observed, tolerance, passed])
        if passed:
            logger.info("    ✓ %s", check)
        else:
            logger.warning("    [✗] %s: expected %r, observed %r (tolerance %.3g)", check, expected, observed, tolerance)

    def check_constants(self):
        params = self.spec.network_params()
        s = 2.0 / params.alpha
        # Gamma(1+s) Gamma(1-s) = s pi / sin(pi s)
        self.record("kappa", s * math.pi / math.sin(math.pi * s), params.kappa, CLOSED_FORM_TOLERANCE)

    def check_pattern(self):
        pattern = self.spec.pattern()
        alpha = self.spec.alpha
        self.record("trp", 1.0, trp(pattern), TRP_TOLERANCE)
        self.record(
            "interferer_moment closed form vs quadrature",
            interferer_moment_quadrature(pattern, alpha), interferer_moment(pattern, alpha), MOMENT_TOLERANCE,
        )

    def check_closed_forms(self):
        pattern = self.spec.pattern()
        if pattern.kind not in (PatternKind.OMNI, PatternKind.IDEAL_SECTOR):
            return
        error = self.spec.error_model()
        for lam in self.spec.sweep():
            params = self.spec.network_params(lam=float(lam))
            self.record(
                f"success closed form vs general, lambda={lam:g}",
                success_probability(params, pattern, error), success_general(params, pattern, error),
                CLOSED_FORM_TOLERANCE,
            )

    def check_optimizers(self):
        params = self.spec.network_params()
        outage = self.spec.outage()
        omni, exact = RadiationPattern.omni(), ZeroError()
        reference = tp_omni(params).value
        self.record("tp numeric vs closed form, omni", reference, tp_numeric(params, omni, exact).value,
                    OPTIMIZER_RTOL * reference)
        reference = tc_omni(params, outage).value
        self.record("tc numeric vs closed form, omni", reference, tc_numeric(params, omni, exact, outage).value,
                    OPTIMIZER_RTOL * reference)

        pattern = self.spec.pattern()
        if pattern.kind is PatternKind.IDEAL_SECTOR and pattern.g2 == 0.0:
            error = self.spec.error_model()
            reference = tp_sector_noside(params, pattern.omega, error).value
            self.record("tp numeric vs closed form, sector", reference,
                        tp_numeric(params, pattern, error).value, OPTIMIZER_RTOL * reference)
            reference = tc_sector_noside(params, pattern.omega, error, outage).value
            self.record("tc numeric vs closed form, sector", reference,
                        tc_numeric(params, pattern, error, outage).value, OPTIMIZER_RTOL * max(reference, 1e-300))

    def simulation_config(self, lam):
        """Window shrunk at high intensity to bound the cost of one replication"""
        floor = MIN_WINDOW_MULTIPLE * self.spec.d
        side = self.spec.window if lam <= 0.0 else min(self.spec.window, math.sqrt(VALIDATION_MAX_POINTS / lam))
        return SimConfig(window_side=max(side, floor), replications=self.spec.reps, seed=self.spec.seed,
                         n_jobs=self.spec.jobs)

    def check_simulation(self):
        pattern = self.spec.pattern()
        error = self.spec.error_model()
        for lam in self.spec.sweep():
            params = self.spec.network_params(lam=float(lam))
            cfg = self.simulation_config(float(lam))
            analytic = success_general(params, pattern, error)
            estimate = simulate_success(params, pattern, error, cfg)
            # statistical band plus the upward bias of dropping far interferers
            spread = VALIDATION_SIGMAS * math.sqrt(analytic * (1.0 - analytic) / cfg.replications)
            bias = far_field_bias(params, pattern, error, cfg)
            if not math.isfinite(bias):
                with np.errstate(over="ignore"):
                    bias = min(analytic * float(np.expm1(far_field_exponent(params, pattern, cfg))), 1.0 - analytic)
            self.record(f"simulation vs analytic, lambda={lam:g}", analytic, estimate.p_hat,
                        spread + bias + 1.0 / cfg.replications)

    def generate_all_results(self):
        logger.info("[*] Running validation suite...")
        self.rows = []
        self.check_constants()
        self.check_pattern()
        self.check_closed_forms()
        self.check_optimizers()
        self.check_simulation()
        created = write_results(
            CSV_COLUMNS[COMMAND], self.rows, self.spec.echo_lines(),
            output=self.spec.output, xlsx=self.xlsx, sheet=COMMAND,
        )
        logger.info("    %d of %d checks passed", len(self.rows) - len(self.failures), len(self.rows))
        return created
