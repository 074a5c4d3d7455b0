"""
Implementations of the irqsim subcommands.

Each command takes the parsed argparse namespace, writes its results and returns
the process exit status. Failures are raised as IrqsimError subclasses and mapped
to exit codes by `cli.main`.
"""

import json
import logging
import os
from typing import List, Optional

from pydantic import ValidationError

from engine.simulator import simulate
from engine.sweep import simulate_sweep
from loads.builder import build_trace
from loads.generators import interarrival_histogram, log_spaced_edges
from loads.pcap import load_pcap, pcap_summary
from loads.trace_io import format_trace, write_trace_file
from metrics.analysis import tabulate
from metrics.export import (
    format_value,
    histogram_csv,
    result_row,
    rows_to_csv,
    rows_to_json,
    summary_line,
    table_columns,
    table_rows,
    write_csv,
    write_json,
    write_text,
)
from models.errors import ConfigError
from models.experiment import ExperimentConfig, OutputFormat
from models.sweep import SweepAxes, SweepGrid, SweepPoint
from utils.config import DEFAULT_JOBS
from utils.config_loader import load_config

logger = logging.getLogger(__name__)

# 10 log-spaced bins from 1 µs to 10 s
DEFAULT_HISTOGRAM_EDGES = log_spaced_edges(1_000, 10_000_000_000, 10)


def print_schema(args) -> int:
    print(json.dumps(ExperimentConfig.model_json_schema(by_alias=True), indent=2))
    return 0


def _experiment(args) -> ExperimentConfig:
    if not args.config:
        raise ConfigError(f"'{args.command}' needs --config <path>")
    config = load_config(args.config)
    if not args.trace:
        return config
    # --trace replaces the configured load; the path is relative to the working directory
    data = config.model_dump(mode="json", by_alias=True, exclude_unset=True)
    data["load"] = {"trace": os.path.abspath(args.trace)}
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{args.config} with --trace: {e.errors()[0]['msg']}") from e


def _seeds(config: ExperimentConfig, override: Optional[int]) -> List[int]:
    if override is not None:
        return [override]
    if "seeds" in config.model_fields_set:
        return list(config.seeds)
    if config.load.poisson is not None:
        return [config.load.poisson.seed]
    return list(config.seeds)


def _emit(rows: list, config: ExperimentConfig, args, columns: Optional[List[str]] = None) -> None:
    output_format = OutputFormat(args.format) if args.format else config.output.format
    as_json = output_format is OutputFormat.JSON
    path = args.out or config.output.path
    if path:
        (write_json if as_json else write_csv)(rows, path, columns)
    else:
        print(rows_to_json(rows, columns) if as_json else rows_to_csv(rows, columns), end="")


def cmd_run(args) -> int:
    """
    One simulation of the configured load, NIC and workload.

    Prints the summary line, then writes the result row to --out (or the config's
    output path); without either, the result follows the summary on standard output.
    """
    config = _experiment(args)
    if config.sweep is not None:
        logger.warning("Config declares sweep axes; 'run' simulates the base configuration only")

    poisson = config.load.poisson
    seed = _seeds(config, args.seed)[0] if poisson is not None else None
    trace = build_trace(config.load, seed=seed)
    logger.info("Built %s load with %d packets (%d bytes)", config.load.kind, len(trace), trace.total_bytes)

    result = simulate(
        trace,
        config.nic,
        config.workload,
        truncate_at_completion=config.simulation.truncate_at_completion,
        keep_events=config.simulation.keep_events,
    )
    if result.dropped_packets:
        logger.warning("%d packet(s) were dropped without service", result.dropped_packets)

    point = SweepPoint(
        index=0,
        lam=poisson.lam if poisson is not None else None,
        counter_threshold=config.nic.mode.counter_threshold,
        timer_delay=config.nic.mode.timer_delay,
        seed=seed,
    )
    print(summary_line(result))
    _emit([result_row(point, result)], config, args)
    return 0


def cmd_sweep(args) -> int:
    """
    One simulation per grid point and seed, written as a sweep table in grid order.

    By default every (point, seed) is a row. With --aggregate-seeds (or the config's
    output.aggregate_seeds) each grid point is one row of seed means and sample
    standard deviations.
    """
    config = _experiment(args)
    try:
        grid = SweepGrid(nic=config.nic, axes=config.sweep or SweepAxes(), seeds=_seeds(config, args.seed))
    except ValidationError as e:
        first = e.errors()[0]
        raise ConfigError(f"{args.config}: sweep: {first['msg']}") from e

    jobs = args.jobs if args.jobs is not None else DEFAULT_JOBS
    runs = simulate_sweep(config.load, grid, config.workload, jobs=jobs, options=config.simulation)
    aggregate = args.aggregate_seeds or config.output.aggregate_seeds
    table = tabulate(runs, aggregate_seeds=aggregate)
    logger.info("Sweep finished: %d run(s) in %d row(s)", len(runs), len(table.cells))
    _emit(table_rows(table), config, args, table_columns(aggregate))
    return 0


def cmd_gen(args) -> int:
    """
    Writes the configured synthetic load as a canonical trace file.
    """
    config = _experiment(args)
    if config.load.kind not in ("uniform", "poisson"):
        raise ConfigError(f"'gen' needs a uniform or poisson load, got '{config.load.kind}'")

    seed = args.seed if config.load.poisson is not None else None
    trace = build_trace(config.load, seed=seed)
    path = args.out or config.output.path
    if path:
        write_trace_file(trace, path)
        logger.info("Wrote %d packets to %s", len(trace), path)
    else:
        print(format_trace(trace), end="")
    return 0


def _parse_edges(text: Optional[str]) -> List[int]:
    if not text:
        return DEFAULT_HISTOGRAM_EDGES
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError(f"--bins must be comma-separated integer nanoseconds, got '{text}'") from e


def cmd_inspect_pcap(args) -> int:
    """
    Prints a capture's summary as '#' comment lines followed by its inter-arrival
    histogram as CSV.
    """
    meta, trace = load_pcap(args.file)
    summary = pcap_summary(meta, trace)
    try:
        histogram = interarrival_histogram(trace, _parse_edges(args.bins))
    except ValueError as e:
        raise ConfigError(f"--bins: {e}") from e
    logger.info("Histogram over %d gap(s) in %d bin(s)", histogram.total, len(histogram.counts))

    lines = [
        f"# file: {args.file}",
        f"# format: pcap {meta.version[0]}.{meta.version[1]} {meta.endianness.value}-endian "
        f"{meta.time_resolution.value} link_type={meta.link_type} snaplen={meta.snaplen}",
    ]
    for key, value in summary.model_dump().items():
        lines.append(f"# {key}: {format_value(value)}")
    if meta.skipped_zero_length:
        lines.append(f"# skipped_zero_length: {meta.skipped_zero_length}")
    if meta.reordered:
        lines.append(f"# reordered: {meta.reordered}")
    print("\n".join(lines))

    table = histogram_csv(histogram)
    if args.out:
        write_text(table, args.out)
    else:
        print(table, end="")
    return 0

