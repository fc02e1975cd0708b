#!/usr/bin/env python3
"""
Configuration file for the directional network analyzer
Contains the default network parameters, numeric tolerances and output layouts
"""

import math

# ==========================================
# NETWORK DEFAULTS
# ==========================================
DEFAULT_ALPHA = 3.0           # pathloss exponent
DEFAULT_BETA = 4.0            # SINR threshold (linear)
DEFAULT_DISTANCE = 100.0      # TX-RX separation, meters
DEFAULT_NOISE = 1e-12         # background noise, Watts
DEFAULT_TX_POWER = 1.0        # Watts
DEFAULT_INTENSITY = 1e-5      # transmitters per m^2
DEFAULT_OUTAGE = 0.15

# ==========================================
# ANTENNA AND ERROR DEFAULTS
# ==========================================
DEFAULT_PATTERN = "ideal"
DEFAULT_BEAMWIDTH_DEG = 20.0
DEFAULT_SIDELOBE_GAIN = 0.1
DEFAULT_TRANSITION_DEG = 5.0

DEFAULT_ERROR = "halfnormal"
DEFAULT_ERROR_MEAN_DEG = 3.0
DEFAULT_DIMPLE = {"a": 0.5, "b": 0.5, "c1": 15.0, "c2": 1.0}

PATTERN_KINDS = ["omni", "ideal", "transition", "3gpp"]
ERROR_KINDS = ["zero", "uniform", "exponential", "halfnormal", "dimple"]

# ==========================================
# NUMERIC SETTINGS
# ==========================================
TRP_TOLERANCE = 1e-9
G1_SOLVER_XTOL = 1e-15

QUADRATURE_NODES = 64
QUADRATURE_CHECK_NODES = 128
QUADRATURE_RTOL = 1e-6
QUADRATURE_ATOL = 1e-14       # floor for the relative check near zero
# error-model scale multiples used to split the quadrature domain
SCALE_BREAKPOINTS = (1.0, 2.0, 4.0, 8.0)
# panels packed geometrically toward a zero of the gain
GRADING_RATIO = 0.25
GRADING_LEVELS = 16
GRADED_NODES_DIVISOR = 4

LAMBDA_BRACKET = (1e-9, 1e-1)
LAMBDA_BRACKET_WIDENING = 100.0
LAMBDA_SCAN_POINTS = 64
LAMBDA_LOG_XTOL = 1e-8
PROBABILITY_TOLERANCE = 1e-10

BEAMWIDTH_GRID_POINTS = 256
BEAMWIDTH_MIN = math.radians(0.5)
BEAMWIDTH_MARGIN = 1e-6
BEAMWIDTH_XTOL = 1e-10

CONCAVITY_GRID_POINTS = 10_000
CONCAVITY_TOLERANCE = 1e-9

# ==========================================
# SIMULATION DEFAULTS
# ==========================================
DEFAULT_WINDOW = 20_000.0     # meters
DEFAULT_REPLICATIONS = 10_000
DEFAULT_SEED = 42
MIN_WINDOW_MULTIPLE = 20      # window side >= this many TX-RX distances
MIN_EXPECTED_POINTS = 50
FAR_FIELD_WARNING = 0.01      # exponent lost beyond the window before warning
SIM_BLOCK_SIZE = 2_000
WILSON_CONFIDENCE = 0.95
VALIDATION_MAX_POINTS = 20_000   # expected interferers per replication in validate
VALIDATION_SIGMAS = 4.0

# ==========================================
# COMMANDS AND SWEEPS
# ==========================================
COMMANDS = [
    "success-curve",
    "throughput-curve",
    "sweep-beamwidth",
    "optimize",
    "simulate",
    "validate",
]

# axis, min, max, points, log-spaced
DEFAULT_SWEEPS = {
    "success-curve": ("lambda", 1e-7, 1e-3, 50, True),
    "throughput-curve": ("lambda", 1e-7, 1e-3, 50, True),
    "sweep-beamwidth": ("omega", 1.0, 359.0, 100, False),
    "optimize": ("mean", 1.0, 10.0, 10, False),
    "simulate": ("lambda", 1e-6, 1e-4, 5, True),
    "validate": ("lambda", 1e-7, 1e-3, 5, True),
}

SWEEP_AXES = {
    "success-curve": ["lambda"],
    "throughput-curve": ["lambda"],
    "sweep-beamwidth": ["omega"],
    "optimize": ["mean"],
    "simulate": ["lambda"],
    "validate": ["lambda"],
}

# ==========================================
# CSV LAYOUTS
# ==========================================
CSV_COLUMNS = {
    "success-curve": ["lambda", "ps_analytic", "ps_omni"],
    "throughput-curve": ["lambda", "ps_analytic", "throughput", "throughput_omni"],
    "sweep-beamwidth": [
        "omega_deg", "tp", "tc", "tp_normalized", "tc_normalized", "tc_feasible",
    ],
    "optimize": [
        "mean_deg", "metric", "omega_star_deg", "metric_value", "omega_star_closed_form_deg",
    ],
    "simulate": ["lambda", "ps_analytic", "ps_sim", "ci_low", "ci_high", "n"],
    "validate": ["check", "expected", "observed", "tolerance", "passed"],
}

COLUMN_HELP = {
    "lambda": "transmitter intensity, per m^2",
    "ps_analytic": "success probability from the general evaluator",
    "ps_omni": "omni-directional success probability, same parameters",
    "throughput": "lambda * ps_analytic, successful transmissions per m^2",
    "throughput_omni": "lambda * ps_omni",
    "omega_deg": "beamwidth, degrees",
    "tp": "spatial throughput (max over lambda)",
    "tc": "transmission capacity under the outage constraint",
    "tp_normalized": "tp relative to omni antennas",
    "tc_normalized": "tc relative to omni antennas",
    "tc_feasible": "1 when the outage constraint can be met",
    "mean_deg": "mean orientation error before truncation, degrees",
    "metric": "tp or tc",
    "omega_star_deg": "maximizing beamwidth found by grid scan and refinement",
    "metric_value": "metric at omega_star",
    "omega_star_closed_form_deg": "TC maximizer from the optimality equation (ideal sector, g2 = 0)",
    "ps_sim": "Monte Carlo success estimate",
    "ci_low": "lower 95% Wilson bound",
    "ci_high": "upper 95% Wilson bound",
    "n": "replications",
    "check": "name of the agreement check",
    "expected": "reference value",
    "observed": "value under test",
    "tolerance": "allowed absolute gap",
    "passed": "1 when the check passed",
}
