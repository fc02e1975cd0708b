#!/usr/bin/env python3
"""
Directional Network Analyzer - Coverage, throughput and capacity of
Poisson ad hoc networks whose antennas are aimed with orientation error

This modular script computes:
- Success probability of the typical link against transmitter intensity
- Spatial throughput (best density of successful transmissions)
- Transmission capacity under an outage constraint
- TP and TC against beamwidth, and the maximizing beamwidth
- Monte Carlo estimates of the success probability
- An agreement suite between closed forms, quadrature and simulation

Every command writes one CSV table (to a file or stdout) and optionally an
XLSX copy. Logs go to stderr.
"""

import argparse
import logging
import sys

from config import COLUMN_HELP, COMMANDS, CSV_COLUMNS
from core.exceptions import DomainError, NumericFailure
from generators.beamwidth_sweep import BeamwidthSweepGenerator
from generators.optimization import OptimizationGenerator
from generators.simulation import SimulationGenerator
from generators.success_curve import SuccessCurveGenerator
from generators.throughput_curve import ThroughputCurveGenerator
from generators.validation import ValidationGenerator
from utils.experiment_spec import ExperimentSpec, load_spec_file, parse_assignments
from utils.helpers import db_to_linear

logger = logging.getLogger("analyzer")

EXIT_OK = 0
EXIT_INTERRUPTED = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

GENERATORS = {
    "success-curve": SuccessCurveGenerator,
    "throughput-curve": ThroughputCurveGenerator,
    "sweep-beamwidth": BeamwidthSweepGenerator,
    "optimize": OptimizationGenerator,
    "simulate": SimulationGenerator,
    "validate": ValidationGenerator,
}

COMMAND_HELP = {
    "success-curve": "success probability against intensity",
    "throughput-curve": "lambda * p_s against intensity",
    "sweep-beamwidth": "TP and TC against beamwidth",
    "optimize": "maximizing beamwidth against mean orientation error",
    "simulate": "Monte Carlo success estimates against intensity",
    "validate": "closed form / quadrature / simulation agreement suite",
}


class ExperimentRunner:
    """Main class that runs one command and reports its outcome"""

    def __init__(self, spec, progress=False, xlsx=None):
        """
        Args:
            spec: resolved ExperimentSpec
            progress: show a progress bar on sweeps
            xlsx: optional path for an XLSX copy of the table
        """
        self.spec = spec
        self.generator = GENERATORS[spec.command](spec, progress=progress, xlsx=xlsx)
        self.created_files = []

    def run(self):
        """Run the command; returns the process exit code"""
        logger.info("=" * 80)
        logger.info("%s", self.spec.command.upper())
        logger.info("=" * 80)

        self.created_files = self.generator.generate_all_results()
        for path in self.created_files:
            logger.info("    ✓ wrote %s", path)

        failures = getattr(self.generator, "failures", [])
        if failures:
            logger.error("[✗] %d validation check(s) failed", len(failures))
            return EXIT_NUMERIC
        logger.info("[✓] %s finished", self.spec.command)
        return EXIT_OK


def column_epilog(command):
    lines = ["CSV columns:"]
    lines += [f"  {name:<28} {COLUMN_HELP[name]}" for name in CSV_COLUMNS[command]]
    lines += [
        "",
        "Spec keys (key=value, one per line, or --set key=value):",
        "  pattern.{kind,omega_deg,g2,gamma_deg}  error.{kind,mean_deg,eps_max_deg}",
        "  error.dimple.{a,b,c1,c2}  net.{lambda,d,alpha,beta,eta,pt}  outage.pe",
        "  sweep.{axis,min,max,points,log,grid}  sim.{window,reps,seed}",
        "  optimize.metric  run.jobs",
        "",
        "Exit codes: 0 ok, 2 configuration error, 3 numeric failure or failed validation.",
    ]
    return "\n".join(lines)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--spec", help="key=value experiment spec file")
    common.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="override one spec key (repeatable)")
    common.add_argument("-o", "--output", help="CSV output path (default: stdout)")
    common.add_argument("--xlsx", help="also write the table as an XLSX workbook")
    common.add_argument("--g2-db", type=float, help="sidelobe gain in dB (overrides pattern.g2)")
    common.add_argument("--metric", choices=["tp", "tc"], help="metric for optimize")
    common.add_argument("--progress", action="store_true", help="progress bar on stderr")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")

    parser = argparse.ArgumentParser(
        description="Coverage, throughput and capacity of directional Poisson networks",
    )
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for command in COMMANDS:
        commands.add_parser(
            command,
            parents=[common],
            help=COMMAND_HELP[command],
            epilog=column_epilog(command),
            formatter_class=argparse.RawDescriptionHelpFormatter,
        )
    return parser


def configure_logging(verbose=False, quiet=False):
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    logging.basicConfig(level=level, format="%(message)s", stream=sys.stderr, force=True)


def resolve_spec(args):
    """Defaults < spec file < --set < dedicated flags"""
    layers = []
    if args.spec:
        layers.append(load_spec_file(args.spec))
    layers.append(parse_assignments(args.set))
    return ExperimentSpec.from_settings(
        args.command,
        *layers,
        g2=None if args.g2_db is None else db_to_linear(args.g2_db),
        metric=args.metric,
        output=args.output,
    )


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    try:
        spec = resolve_spec(args)
        return ExperimentRunner(spec, progress=args.progress, xlsx=args.xlsx).run()
    except DomainError as exc:
        logger.error("[✗] configuration error: %s", exc)
        return EXIT_CONFIG
    except NumericFailure as exc:
        logger.error("[✗] numeric failure in %s: %s", exc.operation, exc)
        return EXIT_NUMERIC
    except KeyboardInterrupt:
        logger.error("[!] Interrupted by user. Exiting...")
        return EXIT_INTERRUPTED


# ==========================================
# MAIN EXECUTION
# ==========================================

if __name__ == "__main__":
    sys.exit(main())
