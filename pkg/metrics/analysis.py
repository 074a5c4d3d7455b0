"""
Analysis views over simulation results: interrupt-cause ratios, latency
percentiles and plot-ready sweep tables.
"""

from typing import Dict, List, Optional, Sequence

import numpy as np

from models.errors import TabulationError
from models.nic import InterruptCause
from models.results import CauseRatio, LatencySummary, SimulationResult
from models.sweep import SweepCell, SweepRun, SweepTable

AXIS_NAMES = ("lambda", "counter_threshold", "timer_delay")


def cause_ratio(result: SimulationResult) -> Optional[CauseRatio]:
    """
    Fraction of interrupts per cause; None (the undefined marker) without interrupts.
    """
    total = result.interrupt_count
    if total == 0:
        return None
    counts = result.cause_counts
    return CauseRatio(
        counter_fraction=counts[InterruptCause.COUNTER_THRESHOLD] / total,
        timer_fraction=counts[InterruptCause.TIMER_EXPIRY] / total,
        per_packet_fraction=counts[InterruptCause.PER_PACKET] / total,
        flush_fraction=counts[InterruptCause.END_FLUSH] / total,
    )


def nearest_rank(sorted_values: Sequence[int], percent: int) -> int:
    """
    Nearest-rank percentile: the value at rank ceil(percent/100 * n), 1-based.
    """
    n = len(sorted_values)
    rank = max(1, (percent * n + 99) // 100)
    return sorted_values[rank - 1]


def latency_summary(result: SimulationResult) -> Optional[LatencySummary]:
    """
    Mean, p50, p95 and max packet latency; None when no packet was delivered.
    """
    if not result.latencies:
        return None
    ordered = sorted(result.latencies)
    return LatencySummary(
        mean_ns=sum(ordered) / len(ordered),
        p50_ns=nearest_rank(ordered, 50),
        p95_ns=nearest_rank(ordered, 95),
        max_ns=ordered[-1],
    )


def scalar_metrics(result: SimulationResult) -> Dict[str, Optional[float]]:
    """
    The per-point scalars a sweep table cell holds.
    """
    ratio = cause_ratio(result)
    latency = latency_summary(result)
    counts = result.cause_counts
    return {
        "packet_count": result.packet_count,
        "execution_time": result.execution_time,
        "interrupt_count": result.interrupt_count,
        "per_packet_count": counts[InterruptCause.PER_PACKET],
        "counter_threshold_count": counts[InterruptCause.COUNTER_THRESHOLD],
        "timer_expiry_count": counts[InterruptCause.TIMER_EXPIRY],
        "end_flush_count": counts[InterruptCause.END_FLUSH],
        "per_packet_frac": ratio.per_packet_fraction if ratio else None,
        "counter_frac": ratio.counter_fraction if ratio else None,
        "timer_frac": ratio.timer_fraction if ratio else None,
        "flush_frac": ratio.flush_fraction if ratio else None,
        "stolen_isr": result.stolen_isr,
        "stolen_rx": result.stolen_rx,
        "dropped_packets": result.dropped_packets,
        "latency_mean": latency.mean_ns if latency else None,
        "latency_p50": latency.p50_ns if latency else None,
        "latency_p95": latency.p95_ns if latency else None,
        "latency_max": latency.max_ns if latency else None,
    }


def _axis_values(runs: Sequence[SweepRun], name: str) -> tuple:
    seen = []
    for run in runs:
        value = run.point.coordinates()[name]
        if value not in seen:
            seen.append(value)
    return tuple(seen)


def tabulate(runs: Sequence[SweepRun], aggregate_seeds: bool = False) -> SweepTable:
    """
    Reshape sweep runs into a table with one cell per grid point.

    Without aggregation every (point, seed) keeps its own cell and the raw scalars.
    With `aggregate_seeds`, cells sharing the parameter axes are merged into the
    mean, and `spread` holds the sample standard deviation.

    Args:
        runs (Sequence[SweepRun]): Output of `simulate_sweep`, in grid order.
        aggregate_seeds (bool): Average over seeds.

    Returns:
        SweepTable: Axes with their values and the cells.

    Raises:
        TabulationError: If the runs do not form a complete cartesian grid.
    """
    if not runs:
        raise TabulationError("cannot tabulate an empty sweep")

    axes = {name: _axis_values(runs, name) for name in AXIS_NAMES}
    seeds = _axis_values(runs, "seed")
    groups: Dict[tuple, List[SweepRun]] = {}
    for run in runs:
        coordinates = run.point.coordinates()
        key = tuple(coordinates[name] for name in AXIS_NAMES)
        if not aggregate_seeds:
            key += (coordinates["seed"],)
        groups.setdefault(key, []).append(run)

    if not aggregate_seeds:
        axes["seed"] = seeds
    expected = int(np.prod([len(values) for values in axes.values()]))
    if len(groups) != expected or len(runs) != expected * (len(seeds) if aggregate_seeds else 1):
        raise TabulationError(
            f"dimension mismatch: {len(runs)} run(s) do not fill a grid of shape "
            f"{tuple(len(values) for values in axes.values())}"
        )

    cells = []
    for key, members in groups.items():
        coordinates = dict(zip(AXIS_NAMES, key))
        member_seeds = tuple(run.point.seed for run in members)
        if not aggregate_seeds:
            coordinates["seed"] = key[-1]
            cells.append(
                SweepCell(coordinates=coordinates, seeds=member_seeds, metrics=scalar_metrics(members[0].result))
            )
            continue
        per_seed = [scalar_metrics(run.result) for run in members]
        means = {}
        spreads = {}
        for metric in per_seed[0]:
            values = [row[metric] for row in per_seed if row[metric] is not None]
            means[metric] = float(np.mean(values)) if values else None
            spreads[metric] = float(np.std(values, ddof=1)) if len(values) >= 2 else None
        cells.append(SweepCell(coordinates=coordinates, seeds=member_seeds, metrics=means, spread=spreads))

    return SweepTable(axes=axes, cells=tuple(cells), aggregated=aggregate_seeds)
