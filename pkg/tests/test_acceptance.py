"""
End-to-end acceptance checks. Every test here runs the shipped configs or
randomized instances and asserts the properties the simulator must reproduce.
"""

import math
import random
import struct

import numpy as np
import pytest

from cli import main
from engine.oracle import simulate_ticks
from engine.simulator import simulate
from engine.sweep import simulate_sweep
from loads.generators import generate_poisson, interarrival_histogram, log_spaced_edges
from loads.pcap import parse_pcap, write_pcap
from metrics.analysis import tabulate
from models.capture import ByteOrder, TimeResolution
from models.errors import PcapngUnsupportedError, TruncatedRecordError
from models.nic import CombinedMode, CounterMode, DelayModel, EndPolicy, InterruptCause, NicConfig, SimpleMode, TimerMode
from models.results import WorkloadSpec
from models.sweep import SweepGrid
from models.trace import PoissonLoadSpec, inline_trace
from nic.moderation import moderate
from utils.config_loader import configs_dir, load_example_config


def sweep_config(name, aggregate_seeds=False):
    config = load_example_config(name)
    grid = SweepGrid(nic=config.nic, axes=config.sweep, seeds=config.seeds)
    runs = simulate_sweep(config.load, grid, config.workload, options=config.simulation)
    return config, tabulate(runs, aggregate_seeds=aggregate_seeds)


def random_instance(rng):
    t = 0
    pairs = []
    for _ in range(rng.randint(0, 20)):
        t += rng.randint(0, 500)
        pairs.append((t, rng.randint(1, 60)))
    k = rng.randint(1, 5)
    d = rng.randint(1, 2_000)
    mode = rng.choice([SimpleMode(), CounterMode(threshold=k), TimerMode(delay=d), CombinedMode(threshold=k, delay=d)])
    delays = DelayModel(
        isr_per_byte=rng.randint(0, 3),
        isr_constant=rng.randint(0, 200),
        rx_per_byte=rng.randint(0, 3),
        rx_constant=rng.randint(0, 200),
        allow_zero_cost=True,
    )
    nic = NicConfig(mode=mode, delays=delays, end_policy=rng.choice(list(EndPolicy)))
    return inline_trace(pairs), nic, WorkloadSpec(required_compute=rng.randint(0, 5_000))


def test_engine_matches_tick_oracle():
    rng = random.Random(1)
    for case in range(1000):
        trace, nic, workload = random_instance(rng)
        engine = simulate(trace, nic, workload)
        oracle = simulate_ticks(trace, nic, workload)
        assert engine.scalars() == oracle.scalars(), (case, nic, trace.arrival_times)
        assert engine.latencies == oracle.latencies, case


def test_timer_delay_sweep_is_monotone():
    config, table = sweep_config("timer_delay_sweep")
    delays = table.axes["timer_delay"]
    assert len(delays) >= 8
    assert config.load.poisson.count >= 5000
    cells = [table.cell(timer_delay=d) for d in delays]
    times = [cell.metrics["execution_time"] for cell in cells]
    counts = [cell.metrics["interrupt_count"] for cell in cells]
    assert times == sorted(times, reverse=True)
    assert counts == sorted(counts, reverse=True)
    assert counts[-1] <= 0.2 * counts[0]


def test_counter_mode_scales_linearly_with_load():
    config, table = sweep_config("counter_load_scaling", aggregate_seeds=True)
    lams = table.axes["lambda"]
    assert [lam / lams[0] for lam in lams] == [1, 2, 4]
    assert len(table.axes["counter_threshold"]) >= 6
    assert len(config.seeds) >= 20
    w = config.workload.required_compute
    for k in table.axes["counter_threshold"]:
        e1, e2, e3 = (table.cell(**{"lambda": lam, "counter_threshold": k}).metrics["execution_time"] - w for lam in lams)
        assert abs((e3 - e2) - 2 * (e2 - e1)) <= 0.1 * (e3 - e2), k


def inversions(values):
    return sum(1 for a, b in zip(values, values[1:]) if b > a)


def test_counter_share_falls_with_threshold():
    config, table = sweep_config("cause_ratio_grid")
    thresholds = table.axes["counter_threshold"]
    delays = table.axes["timer_delay"]
    assert len(thresholds) >= 5 and len(delays) >= 5

    first_seed = config.seeds[0]
    in_band = False
    for d in delays:
        row = [table.cell(counter_threshold=k, timer_delay=d, seed=first_seed).metrics["counter_frac"] for k in thresholds]
        assert inversions(row) <= 1, d
        in_band = in_band or any(0.4 <= value <= 0.6 for value in row)
    assert in_band

    _, averaged = sweep_config("cause_ratio_grid", aggregate_seeds=True)
    assert len(config.seeds) >= 10
    for d in delays:
        row = [averaged.cell(counter_threshold=k, timer_delay=d).metrics["counter_frac"] for k in thresholds]
        assert inversions(row) == 0, d


def relative_reduction(name):
    _, table = sweep_config(name)
    delays = table.axes["timer_delay"]
    first = table.cell(timer_delay=delays[0]).metrics["execution_time"]
    last = table.cell(timer_delay=delays[-1]).metrics["execution_time"]
    return (first - last) / first


def test_bursty_load_benefits_more_from_longer_timer():
    assert relative_reduction("replay_bursty") > relative_reduction("replay_continuous")


def test_poisson_generator_statistics():
    lam = 10_000
    trace = generate_poisson(PoissonLoadSpec(lam=lam, count=100_000, seed=42))
    gaps = np.diff(np.asarray([0] + trace.arrival_times, dtype=np.int64))
    mean = 1e9 / lam
    assert abs(gaps.mean() - mean) <= 0.02 * mean
    assert abs(gaps.var() - mean**2) <= 0.05 * mean**2

    edges = log_spaced_edges(1_000, 1_000_000, 10)
    histogram = interarrival_histogram(trace, edges)
    total = len(trace) - 1
    for low, high, count in zip(edges, edges[1:], histogram.counts):
        expected = math.exp(-lam * low / 1e9) - math.exp(-lam * high / 1e9)
        assert abs(count / total - expected) <= 0.03, (low, high)


def test_moderation_suite():
    rng = random.Random(77)
    for _ in range(500):
        t = 0
        pairs = []
        for _ in range(rng.randint(0, 50)):
            t += rng.randint(0, 1_000)
            pairs.append((t, rng.randint(1, 1500)))
        trace = inline_trace(pairs)
        k, d = rng.randint(1, 8), rng.randint(1, 1_500)

        simple = moderate(SimpleMode(), trace)
        counter_one = moderate(CounterMode(threshold=1), trace)
        assert [(e.fire_time, e.batch) for e in simple] == [(e.fire_time, e.batch) for e in counter_one]

        counts = {}
        for mode in (CounterMode(threshold=k), TimerMode(delay=d), CombinedMode(threshold=k, delay=d)):
            events = moderate(mode, trace)
            assert [p for e in events for p in e.batch] == list(trace.packets)
            counts[mode.kind] = len(events)
        assert counts["combined"] >= max(counts["counter"], counts["timer"])
        assert counts["counter"] >= len(moderate(CounterMode(threshold=k + 1), trace))
        assert counts["timer"] >= len(moderate(TimerMode(delay=2 * d), trace))

    timer = moderate(TimerMode(delay=100), inline_trace([(0, 1), (50, 1), (300, 1)]))
    assert [(e.fire_time, e.cause) for e in timer] == [(150, InterruptCause.TIMER_EXPIRY), (400, InterruptCause.TIMER_EXPIRY)]


def capture(endian, magic, records):
    data = struct.pack(endian + "IHHiIII", magic, 2, 4, 0, 0, 65535, 1)
    for ts_sec, ts_frac, length in records:
        data += struct.pack(endian + "IIII", ts_sec, ts_frac, length, length) + bytes(length)
    return data


@pytest.mark.parametrize(
    "endian, magic, scale",
    [("<", 0xA1B2C3D4, 1000), (">", 0xA1B2C3D4, 1000), ("<", 0xA1B23C4D, 1)],
)
def test_pcap_fixtures(endian, magic, scale):
    _, trace = parse_pcap(capture(endian, magic, [(1, 0, 60), (1, 500, 1400)]))
    assert [(p.arrival_time, p.length) for p in trace.packets] == [(0, 60), (500 * scale, 1400)]


def test_pcap_errors_and_round_trip():
    data = capture("<", 0xA1B2C3D4, [(1, 0, 60), (1, 500, 1400)])
    with pytest.raises(TruncatedRecordError) as info:
        parse_pcap(data[:-10])
    assert (info.value.record_index, info.value.offset) == (1, 24 + 16 + 60)
    with pytest.raises(PcapngUnsupportedError):
        parse_pcap(b"\x0a\x0d\x0d\x0a" + data[4:])

    trace = generate_poisson(PoissonLoadSpec(lam=100_000, count=500, length=300, seed=6))
    _, parsed = parse_pcap(write_pcap(trace, TimeResolution.NANOSECOND, ByteOrder.BIG))
    shift = trace.arrival_times[0]
    assert [(p.arrival_time + shift, p.length) for p in parsed.packets] == [(p.arrival_time, p.length) for p in trace.packets]


def test_shipped_config_output_is_deterministic(tmp_path):
    config = f"{configs_dir()}/timer_delay_sweep.json"
    outputs = []
    for jobs in ("1", "1", "8"):
        out = tmp_path / f"run-{len(outputs)}.csv"
        assert main(["--config", config, "--jobs", jobs, "--out", str(out), "sweep"]) == 0
        outputs.append(out.read_bytes())
    assert outputs[0] == outputs[1] == outputs[2]
