"""
Synthetic load scenarios: uniform and Poisson packet arrivals, plus inter-arrival
histograms for comparing loads.
"""

import logging
from typing import Sequence

import numpy as np

from models.errors import SimulationOverflowError
from models.results import InterarrivalHistogram
from models.trace import MAX_VIRTUAL_TIME_NS, Packet, PoissonLoadSpec, Trace, UniformLoadSpec

logger = logging.getLogger(__name__)

NS_PER_SECOND = 1e9


def generate_uniform(spec: UniformLoadSpec) -> Trace:
    """
    Packets at start_offset + i * period for i in [0, count).

    Args:
        spec (UniformLoadSpec): Period, count, packet length and start offset.

    Returns:
        Trace: The generated trace, with `spec` as its source.
    """
    if spec.count and spec.start_offset + (spec.count - 1) * spec.period > MAX_VIRTUAL_TIME_NS:
        raise SimulationOverflowError("uniform load runs past the 64-bit virtual time range")
    packets = tuple(
        Packet(arrival_time=spec.start_offset + i * spec.period, length=spec.length)
        for i in range(spec.count)
    )
    logger.debug("Generated uniform load: %d packets every %d ns", spec.count, spec.period)
    return Trace(packets=packets, source=spec)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def draw_uniforms(rng: np.random.Generator, size: int) -> np.ndarray:
    """
    Draw `size` uniforms from (0, 1); exact zeros are resampled.
    """
    draws = rng.random(size)
    zeros = draws == 0.0
    while zeros.any():
        draws[zeros] = rng.random(int(zeros.sum()))
        zeros = draws == 0.0
    return draws


def poisson_gaps_ns(uniforms: np.ndarray, lam: float) -> np.ndarray:
    """
    Inverse transform sampling: gap = -ln(u) / lam seconds, rounded half-up to integer ns.
    """
    uniforms = np.asarray(uniforms, dtype=np.float64)
    if (uniforms <= 0.0).any() or (uniforms > 1.0).any():
        raise ValueError("uniform draws must lie in (0, 1]")
    scaled = -np.log(uniforms) / lam * NS_PER_SECOND + 0.5
    if scaled.size and float(scaled.max()) >= MAX_VIRTUAL_TIME_NS:
        raise SimulationOverflowError(f"poisson gap for lambda={lam} exceeds the 64-bit virtual time range")
    return np.floor(scaled).astype(np.int64)


def exponential_gap_ns(u: float, lam: float) -> int:
    """
    Single-draw form of `poisson_gaps_ns`, same arithmetic.
    """
    return int(poisson_gaps_ns(np.array([u]), lam)[0])


def _cumulative(gaps: np.ndarray, offset: int = 0) -> np.ndarray:
    if gaps.size and offset + float(gaps.sum(dtype=np.float64)) > MAX_VIRTUAL_TIME_NS:
        raise SimulationOverflowError("poisson arrivals run past the 64-bit virtual time range")
    return offset + np.cumsum(gaps, dtype=np.int64)


def generate_poisson(spec: PoissonLoadSpec) -> Trace:
    """
    Poisson arrivals: exponential gaps drawn from a PCG64 stream seeded with `spec.seed`.

    The first packet arrives one gap after time zero. With `count` the trace holds
    exactly that many packets; with `duration` it holds every arrival <= duration.

    Args:
        spec (PoissonLoadSpec): Rate, stopping rule, packet length and seed.

    Returns:
        Trace: Deterministic for equal specs.
    """
    rng = make_rng(spec.seed)
    if spec.count is not None:
        arrivals = _cumulative(poisson_gaps_ns(draw_uniforms(rng, spec.count), spec.lam))
    else:
        arrivals = _arrivals_until(rng, spec.lam, spec.duration)

    packets = tuple(Packet(arrival_time=int(t), length=spec.length) for t in arrivals.tolist())
    logger.debug(
        "Generated poisson load: lambda=%s pkt/s, %d packets, seed=%d", spec.lam, len(packets), spec.seed
    )
    return Trace(packets=packets, source=spec)


def _arrivals_until(rng: np.random.Generator, lam: float, duration: int) -> np.ndarray:
    expected = lam * duration / NS_PER_SECOND
    chunk = max(64, int(expected * 1.1) + 64)
    pieces = []
    offset = 0
    while True:
        arrivals = _cumulative(poisson_gaps_ns(draw_uniforms(rng, chunk), lam), offset)
        inside = arrivals[arrivals <= duration]
        pieces.append(inside)
        if inside.size < arrivals.size:
            break
        offset = int(arrivals[-1])
    return np.concatenate(pieces) if pieces else np.empty(0, dtype=np.int64)


def interarrival_histogram(trace: Trace, bin_edges: Sequence[int]) -> InterarrivalHistogram:
    """
    Count consecutive-packet gaps per half-open bin [e_k, e_{k+1}).

    Gaps below the first edge land in `underflow`, gaps at or above the last edge in
    `overflow`, so the grand total is always max(0, len(trace) - 1).

    Args:
        trace (Trace): The load to analyse.
        bin_edges (Sequence[int]): Strictly ascending edges in nanoseconds, at least two.

    Returns:
        InterarrivalHistogram: Per-bin counts plus underflow and overflow.

    Raises:
        ValueError: If the edges are too few, not strictly ascending or outside int64.
    """
    values = [int(e) for e in bin_edges]
    if any(not -MAX_VIRTUAL_TIME_NS - 1 <= e <= MAX_VIRTUAL_TIME_NS for e in values):
        raise ValueError("histogram bin edges must fit in signed 64-bit nanoseconds")
    edges = np.asarray(values, dtype=np.int64)
    if edges.size < 2:
        raise ValueError("histogram needs at least two bin edges")
    if (edges[1:] <= edges[:-1]).any():
        raise ValueError("histogram bin edges must be strictly ascending")

    bins = edges.size - 1
    gaps = np.diff(np.asarray(trace.arrival_times, dtype=np.int64))
    slots = np.searchsorted(edges, gaps, side="right") - 1
    underflow = int((slots < 0).sum())
    overflow = int((slots >= bins).sum())
    inside = slots[(slots >= 0) & (slots < bins)]
    counts = np.bincount(inside, minlength=bins)
    return InterarrivalHistogram(
        edges=tuple(int(e) for e in edges),
        counts=tuple(int(c) for c in counts),
        underflow=underflow,
        overflow=overflow,
    )


def log_spaced_edges(low: int, high: int, bins: int) -> list:
    """
    Integer bin edges spaced evenly on a log scale from `low` to `high` nanoseconds.
    """
    if low < 1 or high <= low or bins < 1:
        raise ValueError("log-spaced edges need 1 <= low < high and at least one bin")
    edges = np.unique(np.rint(np.geomspace(low, high, bins + 1)).astype(np.int64))
    return [int(e) for e in edges]


def exponential_quantile_edges(lam: float, bins: int, upper_quantile: float = 0.999) -> list:
    """
    Edges placing roughly equal Exp(lam) probability mass in each bin.
    """
    quantiles = np.linspace(0.0, upper_quantile, bins + 1)
    edges = np.rint(-np.log1p(-quantiles) / lam * NS_PER_SECOND).astype(np.int64)
    return [int(e) for e in np.unique(edges)]
