import argparse
import sys
from typing import List, Optional

from cli.commands import cmd_gen, cmd_inspect_pcap, cmd_run, cmd_sweep, print_schema
from models.errors import ConfigError, InvariantViolation, IrqsimError, LoadError
from models.trace import MAX_SEED
from utils.config import LOG_LEVEL, LOG_TO_FILE
from utils.logger import setup_logging

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_LOAD = 2
EXIT_INTERNAL = 3


class _Parser(argparse.ArgumentParser):
    # Usage errors are configuration errors (exit 1), not argparse's exit 2.
    def error(self, message):
        raise ConfigError(message)


def _global_options(default) -> argparse.ArgumentParser:
    options = argparse.ArgumentParser(add_help=False)
    options.add_argument("--config", default=default, help="experiment config (JSON)")
    options.add_argument("--trace", default=default, help="canonical trace file; replaces the config's load")
    options.add_argument("--out", default=default, help="result file; standard output when omitted")
    options.add_argument("--format", choices=["csv", "json"], default=default, help="result format")
    options.add_argument("--seed", type=int, default=default, help="overrides the poisson seed (u64)")
    options.add_argument("--jobs", type=int, default=default, help="sweep worker processes")
    options.add_argument("--log-level", default=default, help="DEBUG, INFO, WARNING or ERROR")
    return options


def build_parser() -> argparse.ArgumentParser:
    """
    Global flags are accepted before or after the subcommand.
    """
    parser = _Parser(
        prog="irqsim",
        description="Simulate NIC interrupt moderation against a CPU-bound workload.",
        parents=[_global_options(argparse.SUPPRESS)],
    )
    parser.set_defaults(
        config=None,
        trace=None,
        out=None,
        format=None,
        seed=None,
        jobs=None,
        log_level=None,
        aggregate_seeds=False,
        handler=None,
    )
    parser.add_argument("--print-schema", action="store_true", help="print the config JSON schema and exit")

    after = _global_options(argparse.SUPPRESS)
    commands = parser.add_subparsers(dest="command", parser_class=_Parser)
    commands.add_parser("run", parents=[after], help="simulate one configuration").set_defaults(handler=cmd_run)
    sweep = commands.add_parser("sweep", parents=[after], help="simulate a parameter grid")
    sweep.add_argument(
        "--aggregate-seeds", action="store_true", help="one row per grid point: mean and std over seeds"
    )
    sweep.set_defaults(handler=cmd_sweep)
    commands.add_parser("gen", parents=[after], help="write a synthetic load as a trace file").set_defaults(
        handler=cmd_gen
    )
    inspect = commands.add_parser("inspect-pcap", parents=[after], help="summarize a classic pcap capture")
    inspect.add_argument("file", help="classic pcap file")
    inspect.add_argument("--bins", help="comma-separated histogram edges in ns")
    inspect.set_defaults(handler=cmd_inspect_pcap)
    return parser


def _fail(code: int, message: str) -> int:
    print(f"irqsim: error: {message}", file=sys.stderr)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """
    Runs the irqsim command line and returns the exit status.

    0 on success, 1 for configuration errors, 2 for unreadable or unwritable load
    and result files, 3 for internal invariant violations.
    """
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as e:
        return _fail(EXIT_CONFIG, str(e))

    try:
        logger = setup_logging(log_level=args.log_level or LOG_LEVEL, log_to_file=LOG_TO_FILE)
    except OSError as e:
        return _fail(EXIT_LOAD, f"cannot open log file: {e}")

    if args.seed is not None and not 0 <= args.seed <= MAX_SEED:
        return _fail(EXIT_CONFIG, "--seed must be an unsigned 64-bit integer")
    if args.print_schema:
        return print_schema(args)
    if args.handler is None:
        return _fail(EXIT_CONFIG, "a command is required (run, sweep, gen, inspect-pcap)")

    try:
        return args.handler(args)
    except ConfigError as e:
        logger.debug("Configuration error", exc_info=True)
        return _fail(EXIT_CONFIG, str(e))
    except LoadError as e:
        logger.debug("Load error", exc_info=True)
        return _fail(EXIT_LOAD, str(e))
    except InvariantViolation as e:
        logger.critical("Internal invariant violated", exc_info=True)
        return _fail(EXIT_INTERNAL, str(e))
    except IrqsimError as e:
        logger.error("Unexpected irqsim error", exc_info=True)
        return _fail(EXIT_INTERNAL, str(e))
    except Exception as e:
        logger.critical("Unhandled error", exc_info=True)
        return _fail(EXIT_INTERNAL, f"internal error: {e}")
