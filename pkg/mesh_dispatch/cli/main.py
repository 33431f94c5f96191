"""``mesh-dispatch`` command line.

Exit codes: 0 on success, 1 on any error, 2 when a run stops at its
iteration cap without settling or a certificate does not hold.
"""
import argparse
import logging
import os
import sys
from dataclasses import replace

from ..__about__ import __version__
from ..analysis import lyapunov_certificate, welfare_gap
from ..coordination import run
from ..exceptions import (ConfigError, ConvergenceError, ModelError,
                          NodeError, NumericError)
from ..network import metropolis_weights
from ..oracle import solve_centralized
from . import output
from .config import load_config


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_CONVERGED = 2

DEFAULT_SWEEP = "0.01,0.1,1,5"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

_ERRORS = (ConfigError, ConvergenceError, ModelError, NodeError,
           NumericError, ValueError, OSError)


def parse_rhos(text):
    """Parse a comma separated list of penalty factors."""
    try:
        rhos = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(
            "Can't parse penalty factors {!r}".format(text))
    if not rhos:
        raise argparse.ArgumentTypeError("At least one penalty factor is "
                                         "required")
    return rhos


def _load(config_path, out=None, seed=None, rho=None):
    config = load_config(config_path)
    changes = {}
    if seed is not None:
        changes["seed"] = seed
    if rho is not None:
        changes["rho"] = rho
    if changes:
        try:
            config = replace(config, run=replace(config.run, **changes))
        except ValueError as exc:
            raise ConfigError("run: {}".format(exc)) from exc
    if out is not None:
        config = replace(config, output=replace(config.output,
                                                directory=out))
    return config


def _path(config, name):
    return os.path.join(config.output.directory, name)


def cmd_run(config_path, out=None, seed=None, rho=None):
    config = _load(config_path, out, seed, rho)
    case = config.case
    result = run(case.hubs, case.topology, config.run)
    output.write_trace(_path(config, "trace.csv"), result.trace,
                       config.output.emit_per_node)
    output.write_summary(_path(config, "summary.csv"), result.states,
                         case.hubs, case.zeta)
    return EXIT_OK if result.converged else EXIT_NOT_CONVERGED


def cmd_oracle(config_path, out=None, seed=None, rho=None):
    config = _load(config_path, out, seed)
    case = config.case
    solution = solve_centralized(case.hubs)
    logger.info("F* = %r, mu* = (%r, %r), dual gap %.3e", solution.F_star,
                solution.mu_star.e, solution.mu_star.g, solution.dual_gap)
    output.write_oracle(_path(config, "oracle.csv"), solution, case.hubs,
                        case.zeta)
    return EXIT_OK


def cmd_sweep_rho(config_path, rhos, out=None, seed=None):
    if not rhos:
        raise ValueError("At least one penalty factor is required")
    config = _load(config_path, out, seed)
    case = config.case
    try:
        F_star = solve_centralized(case.hubs).F_star
    except _ERRORS as exc:
        logger.error("Centralized reference failed: %s", exc)
        F_star = None

    rows = []
    failed = False
    for rho in rhos:
        row = {"rho": rho, "converged": False, "iterations": None,
               "rounds": None, "welfare_gap": None}
        try:
            result = run(case.hubs, case.topology,
                         replace(config.run, rho=rho))
        except _ERRORS as exc:
            logger.error("Run with rho=%r failed: %s", rho, exc)
            failed = True
        else:
            output.write_trace(
                _path(config, "trace_rho_{!r}.csv".format(rho)),
                result.trace, config.output.emit_per_node)
            row["converged"] = result.converged
            row["iterations"] = result.settled_at
            row["rounds"] = result.iterations
            if F_star:
                row["welfare_gap"] = welfare_gap(result.trace[-1].F, F_star)
        rows.append(row)
    output.write_sweep(_path(config, "sweep_summary.csv"), rows)

    if failed:
        return EXIT_ERROR
    if not all(row["converged"] for row in rows):
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def cmd_certificate(config_path, out=None, seed=None, rho=None):
    config = _load(config_path, out)
    report = lyapunov_certificate(metropolis_weights(config.case.topology))
    output.write_certificate(_path(config, "certificate.json"), report)
    return EXIT_OK if report.verdict else EXIT_NOT_CONVERGED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mesh-dispatch",
        description="Decentralized dispatch of networked energy hubs.")
    parser.add_argument("--version", action="version",
                        version="%(prog)s {}".format(__version__))
    commands = parser.add_subparsers(dest="command", required=True)

    def command(name, help_text):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True,
                         help="JSON configuration document")
        sub.add_argument("--out", default=None,
                         help="output directory (overrides the config)")
        sub.add_argument("--seed", type=int, default=None,
                         help="initialization seed (overrides the config)")
        sub.add_argument("-v", "--verbose", action="count", default=0,
                         help="-v for progress, -vv for per-round detail")
        return sub

    sub = command("run", "run the decentralized coordination")
    sub.add_argument("--rho", type=float, default=None,
                     help="penalty factor (overrides the config)")
    command("oracle", "solve the centralized reference problem")
    sub = command("sweep-rho", "run once per penalty factor")
    sub.add_argument("--rho", type=parse_rhos, default=DEFAULT_SWEEP,
                     help="comma separated penalty factors "
                          "(default: %(default)s)")
    command("certificate", "check the Lyapunov certificate of the weights")
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity,
                                                       logging.DEBUG)
    logging.basicConfig(level=level, format=LOG_FORMAT)


def main(argv=None):
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    rho = getattr(args, "rho", None)
    try:
        if args.command == "sweep-rho":
            return cmd_sweep_rho(args.config, rho, args.out, args.seed)
        handler = {"run": cmd_run, "oracle": cmd_oracle,
                   "certificate": cmd_certificate}[args.command]
        return handler(args.config, args.out, args.seed, rho)
    except _ERRORS as exc:
        logger.debug("Command failed", exc_info=True)
        print("mesh-dispatch: error: {}".format(exc), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
