import json

import pytest

from engine.simulator import simulate
from engine.sweep import simulate_sweep
from metrics.analysis import cause_ratio, latency_summary, nearest_rank, scalar_metrics, tabulate
from metrics.export import (
    COLUMN_NAMES,
    histogram_csv,
    result_row,
    rows_to_csv,
    rows_to_json,
    summary_line,
    table_columns,
    table_rows,
    write_csv,
)
from models.errors import LoadError, TabulationError
from models.experiment import LoadConfig
from models.nic import CombinedMode, DelayModel, InterruptCause, NicConfig, SimpleMode
from models.results import InterarrivalHistogram, SimulationResult, WorkloadSpec, empty_cause_counts
from models.sweep import SweepAxes, SweepGrid, SweepPoint, SweepRun
from models.trace import PoissonLoadSpec, inline_trace

DELAYS = DelayModel(isr_constant=100, rx_constant=50)
POISSON = LoadConfig(poisson=PoissonLoadSpec(lam=50_000, count=200, seed=1))


def result_with(counts=None, latencies=(), execution_time=1000):
    causes = empty_cause_counts()
    causes.update(counts or {})
    return SimulationResult(
        execution_time=execution_time,
        required_compute=1000,
        interrupt_count=sum(causes.values()),
        cause_counts=causes,
        stolen_before_completion=execution_time - 1000,
        latencies=tuple(latencies),
    )


def test_cause_ratio():
    ratio = cause_ratio(result_with({InterruptCause.COUNTER_THRESHOLD: 3, InterruptCause.TIMER_EXPIRY: 1}))
    assert (ratio.counter_fraction, ratio.timer_fraction, ratio.per_packet_fraction, ratio.flush_fraction) == (
        0.75,
        0.25,
        0.0,
        0.0,
    )
    assert cause_ratio(result_with()) is None

    simple = simulate(inline_trace([(0, 1), (9, 1)]), NicConfig(mode=SimpleMode(), delays=DELAYS), WorkloadSpec(required_compute=10))
    assert cause_ratio(simple).per_packet_fraction == 1.0


def test_latency_summary():
    summary = latency_summary(result_with(latencies=[10, 20, 30]))
    assert (summary.mean_ns, summary.max_ns) == (20.0, 30)
    single = latency_summary(result_with(latencies=[7]))
    assert (single.mean_ns, single.p50_ns, single.p95_ns, single.max_ns) == (7.0, 7, 7, 7)
    assert latency_summary(result_with()) is None


def test_nearest_rank():
    values = list(range(1, 1001))
    assert nearest_rank(values, 95) == 950
    assert nearest_rank(values, 50) == 500
    assert nearest_rank([4, 9], 50) == 4
    assert nearest_rank([4, 9], 95) == 9
    summary = latency_summary(result_with(latencies=[5, 1, 9, 3, 3]))
    assert summary.p50_ns <= summary.p95_ns <= summary.max_ns


def test_tabulate_keeps_every_point():
    grid = SweepGrid(
        nic=NicConfig(mode=CombinedMode(threshold=2, delay=1_000), delays=DELAYS),
        axes=SweepAxes(counter_threshold=[1, 2, 4], timer_delay=[100, 1_000, 10_000]),
    )
    runs = simulate_sweep(POISSON, grid, WorkloadSpec(required_compute=1_000_000))
    table = tabulate(runs)
    assert len(table.cells) == 9
    assert table.axes["counter_threshold"] == (1, 2, 4)
    assert table.axes["seed"] == (0,)
    for run in runs:
        cell = table.cell(counter_threshold=run.point.counter_threshold, timer_delay=run.point.timer_delay)
        assert cell.metrics == scalar_metrics(run.result)


def test_tabulate_single_point():
    run = SweepRun(point=SweepPoint(index=0, seed=4), result=result_with({InterruptCause.PER_PACKET: 2}, [1, 2], 1300))
    table = tabulate([run])
    assert len(table.cells) == 1
    assert table.cells[0].metrics["execution_time"] == 1300
    assert table.cells[0].metrics["interrupt_count"] == 2


def test_tabulate_aggregates_seeds_on_request():
    runs = [
        SweepRun(point=SweepPoint(index=0, timer_delay=10, seed=1), result=result_with(execution_time=100 + 1000)),
        SweepRun(point=SweepPoint(index=1, timer_delay=10, seed=2), result=result_with(execution_time=200 + 1000)),
    ]
    table = tabulate(runs, aggregate_seeds=True)
    [cell] = table.cells
    assert cell.metrics["execution_time"] == 1150.0
    assert cell.spread["execution_time"] == pytest.approx(70.7106781)
    assert cell.seeds == (1, 2)
    assert cell.metrics["counter_frac"] is None
    assert len(tabulate(runs).cells) == 2


def test_table_rows_match_result_rows_without_aggregation():
    grid = SweepGrid(
        nic=NicConfig(mode=CombinedMode(threshold=2, delay=1_000), delays=DELAYS),
        axes=SweepAxes(timer_delay=[100, 10_000]),
        seeds=[1, 2],
    )
    runs = simulate_sweep(POISSON, grid, WorkloadSpec(required_compute=1_000_000))
    assert table_rows(tabulate(runs)) == [result_row(run.point, run.result) for run in runs]
    assert table_columns(False) == COLUMN_NAMES


def test_aggregated_table_rows_pair_means_with_std():
    runs = [
        SweepRun(point=SweepPoint(index=0, timer_delay=10, seed=1), result=result_with(execution_time=1100)),
        SweepRun(point=SweepPoint(index=1, timer_delay=10, seed=2), result=result_with(execution_time=1200)),
    ]
    [row] = table_rows(tabulate(runs, aggregate_seeds=True))
    assert row["timer_delay_ns"] == 10
    assert row["seed_count"] == 2
    assert row["execution_time_ns"] == 1150.0
    assert row["execution_time_ns_std"] == pytest.approx(70.7106781)
    assert row["latency_p95_ns"] is None
    columns = table_columns(True)
    assert set(row) == set(columns)
    assert columns.index("execution_time_ns_std") == columns.index("execution_time_ns") + 1


def test_tabulate_rejects_broken_grids():
    with pytest.raises(TabulationError):
        tabulate([])
    runs = [
        SweepRun(point=SweepPoint(index=0, counter_threshold=1, timer_delay=10), result=result_with()),
        SweepRun(point=SweepPoint(index=1, counter_threshold=2, timer_delay=20), result=result_with()),
    ]
    with pytest.raises(TabulationError, match="dimension mismatch"):
        tabulate(runs)


def test_csv_row_uses_units_and_na():
    point = SweepPoint(index=0, timer_delay=500, seed=None)
    row = result_row(point, result_with({InterruptCause.TIMER_EXPIRY: 1}, [40], 1010))
    text = rows_to_csv([row])
    header, line = text.splitlines()
    assert header.split(",") == COLUMN_NAMES
    assert all(name.endswith(("_ns", "_count", "_frac", "_pps", "_u64")) for name in COLUMN_NAMES)
    values = dict(zip(COLUMN_NAMES, line.split(",")))
    assert values["lambda_pps"] == "NA"
    assert values["seed_u64"] == "NA"
    assert values["timer_delay_ns"] == "500"
    assert values["timer_frac"] == "1.000000"
    assert values["latency_mean_ns"] == "40.000000"
    assert values["execution_time_ns"] == "1010"


def test_json_mirrors_csv_columns():
    row = result_row(SweepPoint(index=0), result_with())
    document = json.loads(rows_to_json([row]))
    assert document["columns"] == COLUMN_NAMES
    assert document["rows"][0]["per_packet_frac"] is None


def test_histogram_csv():
    histogram = InterarrivalHistogram(edges=(10, 100, 1000), counts=(3, 1), underflow=2, overflow=0)
    assert histogram_csv(histogram).splitlines() == [
        "bin_low_ns,bin_high_ns,gap_count",
        "NA,10,2",
        "10,100,3",
        "100,1000,1",
        "1000,NA,0",
    ]


def test_summary_line():
    line = summary_line(result_with({InterruptCause.COUNTER_THRESHOLD: 2, InterruptCause.END_FLUSH: 1}, execution_time=1500))
    assert line == "execution_time_ns=1500 interrupts=3 causes=counter_threshold:2,end_flush:1"
    assert summary_line(result_with()).endswith("causes=none")


def test_write_csv_unwritable(tmp_path):
    with pytest.raises(LoadError):
        write_csv([], str(tmp_path / "missing" / "out.csv"))
