"""
Parameter sweeps: one independent simulation per point of a cartesian grid.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import product
from typing import Dict, List, Optional, Tuple, Union

from pydantic import ValidationError

from engine.simulator import simulate
from loads.builder import build_trace
from models.errors import ConfigError, GridPointError
from models.experiment import LoadConfig, SimulationOptions
from models.nic import NicConfig, mode_with
from models.results import SimulationResult, WorkloadSpec
from models.sweep import SweepGrid, SweepPoint, SweepRun
from models.trace import Trace

logger = logging.getLogger(__name__)

TraceSource = Union[LoadConfig, Trace]


def grid_points(grid: SweepGrid, base_lam: Optional[float] = None) -> List[SweepPoint]:
    """
    Enumerate grid points lambda-major, then threshold, then delay, seeds innermost.

    Points carry effective values: an axis that is not swept reports the base value.
    """
    mode = grid.nic.mode
    lams = grid.axes.lam or [base_lam]
    thresholds = grid.axes.counter_threshold or [mode.counter_threshold]
    delays = grid.axes.timer_delay or [mode.timer_delay]
    return [
        SweepPoint(index=index, lam=lam, counter_threshold=threshold, timer_delay=delay, seed=seed)
        for index, (lam, threshold, delay, seed) in enumerate(product(lams, thresholds, delays, grid.seeds))
    ]


def nic_for_point(grid: SweepGrid, point: SweepPoint) -> NicConfig:
    """
    The base NIC with the point's threshold and delay applied.

    Raises:
        GridPointError: If the point's values are invalid for the mode.
    """
    try:
        mode = mode_with(
            grid.nic.mode,
            threshold=point.counter_threshold if grid.axes.counter_threshold is not None else None,
            delay=point.timer_delay if grid.axes.timer_delay is not None else None,
        )
    except (ValueError, ValidationError) as e:
        coordinates = {k: v for k, v in point.coordinates().items() if v is not None}
        raise GridPointError(coordinates, _first_error(e)) from e
    return grid.nic.model_copy(update={"mode": mode})


def _first_error(error: Exception) -> str:
    if isinstance(error, ValidationError):
        first = error.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        return f"{location}: {first['msg']}" if location else first["msg"]
    return str(error)


def _simulate_point(task) -> SimulationResult:
    trace, nic, workload, options = task
    return simulate(
        trace,
        nic,
        workload,
        truncate_at_completion=options.truncate_at_completion,
        keep_events=options.keep_events,
    )


def simulate_sweep(
    source: TraceSource,
    grid: SweepGrid,
    workload: WorkloadSpec,
    jobs: int = 1,
    options: Optional[SimulationOptions] = None,
) -> List[SweepRun]:
    """
    Simulate every grid point independently.

    Synthetic loads are regenerated from the point's seed (and lambda), so all points
    sharing those see the identical trace. Results come back in grid order whatever
    `jobs` is.

    Args:
        source (TraceSource): A LoadConfig, or a fixed Trace shared by all points.
        grid (SweepGrid): Base NIC, axes and seeds.
        workload (WorkloadSpec): The user workload.
        jobs (int): Worker processes; 1 runs in-process.
        options (Optional[SimulationOptions]): Truncation and event retention flags.

    Returns:
        List[SweepRun]: One run per grid point, ordered by grid index.

    Raises:
        GridPointError: A point's configuration is invalid (raised before any run).
        ConfigError: The grid does not fit the source (e.g. lambda axis on a fixed trace).
    """
    if jobs < 1:
        raise ConfigError("jobs must be at least 1")
    options = options or SimulationOptions()

    base_lam = None
    if isinstance(source, LoadConfig) and source.poisson is not None:
        base_lam = source.poisson.lam
    elif grid.axes.lam is not None:
        raise ConfigError("lambda axis is only valid for a poisson load")

    points = grid_points(grid, base_lam)
    nics = [nic_for_point(grid, point) for point in points]
    traces = _traces_for(source, points)

    tasks = [(traces[_trace_key(source, point)], nic, workload, options) for point, nic in zip(points, nics)]
    logger.info("Running sweep of %d point(s) with %d job(s)", len(tasks), jobs)
    if jobs == 1 or len(tasks) == 1:
        results = [_simulate_point(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as executor:
            results = list(executor.map(_simulate_point, tasks))

    return [SweepRun(point=point, result=result) for point, result in zip(points, results)]


def _trace_key(source: TraceSource, point: SweepPoint) -> Tuple:
    if isinstance(source, LoadConfig) and source.poisson is not None:
        return (point.lam, point.seed)
    return ()


def _traces_for(source: TraceSource, points: List[SweepPoint]) -> Dict[Tuple, Trace]:
    traces = {}
    for point in points:
        key = _trace_key(source, point)
        if key in traces:
            continue
        if isinstance(source, Trace):
            traces[key] = source
        else:
            traces[key] = build_trace(source, lam=point.lam, seed=point.seed)
    return traces
