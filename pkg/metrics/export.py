"""
Plot-ready result files. Every CSV column name carries its unit suffix and missing
values are written as NA.
"""

import csv
import io
import json
import logging
from typing import Dict, Iterable, List, Optional

from metrics.analysis import scalar_metrics
from models.errors import LoadError
from models.results import InterarrivalHistogram, SimulationResult
from models.sweep import SweepPoint, SweepTable

logger = logging.getLogger(__name__)

UNDEFINED = "NA"

# column name -> key in scalar_metrics (None for point coordinates)
RESULT_COLUMNS = [
    ("lambda_pps", None),
    ("counter_threshold_count", None),
    ("timer_delay_ns", None),
    ("seed_u64", None),
    ("packet_count", "packet_count"),
    ("execution_time_ns", "execution_time"),
    ("interrupt_count", "interrupt_count"),
    ("per_packet_count", "per_packet_count"),
    ("counter_threshold_cause_count", "counter_threshold_count"),
    ("timer_expiry_count", "timer_expiry_count"),
    ("end_flush_count", "end_flush_count"),
    ("per_packet_frac", "per_packet_frac"),
    ("counter_frac", "counter_frac"),
    ("timer_frac", "timer_frac"),
    ("flush_frac", "flush_frac"),
    ("stolen_isr_ns", "stolen_isr"),
    ("stolen_rx_ns", "stolen_rx"),
    ("dropped_packet_count", "dropped_packets"),
    ("latency_mean_ns", "latency_mean"),
    ("latency_p50_ns", "latency_p50"),
    ("latency_p95_ns", "latency_p95"),
    ("latency_max_ns", "latency_max"),
]
COLUMN_NAMES = [name for name, _ in RESULT_COLUMNS]

# column name -> SweepCell coordinate
AXIS_COLUMNS = [
    ("lambda_pps", "lambda"),
    ("counter_threshold_count", "counter_threshold"),
    ("timer_delay_ns", "timer_delay"),
]


def result_row(point: SweepPoint, result: SimulationResult) -> Dict[str, object]:
    """
    One output row: the point's parameters followed by the result's scalar metrics.
    """
    metrics = scalar_metrics(result)
    row = {
        "lambda_pps": point.lam,
        "counter_threshold_count": point.counter_threshold,
        "timer_delay_ns": point.timer_delay,
        "seed_u64": point.seed,
    }
    for column, key in RESULT_COLUMNS:
        if key is not None:
            row[column] = metrics[key]
    return row


def format_value(value) -> str:
    if value is None:
        return UNDEFINED
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def rows_to_csv(rows: Iterable[Dict[str, object]], columns: Optional[List[str]] = None) -> str:
    columns = columns or COLUMN_NAMES
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row.get(column)) for column in columns])
    return buffer.getvalue()


def rows_to_json(rows: Iterable[Dict[str, object]], columns: Optional[List[str]] = None) -> str:
    return json.dumps({"columns": columns or COLUMN_NAMES, "rows": list(rows)}, indent=2) + "\n"


def write_text(text: str, path: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as file:
            file.write(text)
    except OSError as e:
        raise LoadError(f"cannot write results to '{path}': {e.strerror or e}") from e
    logger.info("Wrote results to %s", path)


def histogram_csv(histogram: InterarrivalHistogram) -> str:
    """
    Histogram as CSV rows (bin_low_ns, bin_high_ns, gap_count); the open-ended
    underflow and overflow rows use NA for their missing bound.
    """
    rows = [{"bin_low_ns": None, "bin_high_ns": histogram.edges[0], "gap_count": histogram.underflow}]
    for low, high, count in zip(histogram.edges, histogram.edges[1:], histogram.counts):
        rows.append({"bin_low_ns": low, "bin_high_ns": high, "gap_count": count})
    rows.append({"bin_low_ns": histogram.edges[-1], "bin_high_ns": None, "gap_count": histogram.overflow})
    return rows_to_csv(rows, ["bin_low_ns", "bin_high_ns", "gap_count"])


def summary_line(result: SimulationResult) -> str:
    causes = ",".join(f"{cause.value}:{count}" for cause, count in result.cause_counts.items() if count)
    return (
        f"execution_time_ns={result.execution_time} interrupts={result.interrupt_count} "
        f"causes={causes or 'none'}"
    )


def write_csv(rows: Iterable[Dict[str, object]], path: str, columns: Optional[List[str]] = None) -> None:
    write_text(rows_to_csv(rows, columns), path)


def write_json(rows: Iterable[Dict[str, object]], path: str, columns: Optional[List[str]] = None) -> None:
    write_text(rows_to_json(rows, columns), path)


def table_columns(aggregated: bool) -> List[str]:
    if not aggregated:
        return COLUMN_NAMES
    columns = [name for name, _ in AXIS_COLUMNS] + ["seed_count"]
    for column, key in RESULT_COLUMNS:
        if key is not None:
            columns += [column, f"{column}_std"]
    return columns


def table_rows(table: SweepTable) -> List[Dict[str, object]]:
    """
    One row per table cell, in cell order. Rows of a seed-aggregated table carry
    `seed_count` instead of `seed_u64`, and every metric mean is followed by its
    `_std` column (NA below two seeds).
    """
    rows = []
    for cell in table.cells:
        row = {column: cell.coordinates[axis] for column, axis in AXIS_COLUMNS}
        if table.aggregated:
            row["seed_count"] = len(cell.seeds)
        else:
            row["seed_u64"] = cell.coordinates["seed"]
        for column, key in RESULT_COLUMNS:
            if key is None:
                continue
            row[column] = cell.metrics[key]
            if table.aggregated:
                row[f"{column}_std"] = cell.spread[key]
        rows.append(row)
    return rows
