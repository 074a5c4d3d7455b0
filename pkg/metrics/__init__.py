from .analysis import cause_ratio, latency_summary, scalar_metrics, tabulate
from .export import (
    histogram_csv,
    result_row,
    rows_to_csv,
    rows_to_json,
    table_columns,
    table_rows,
    write_csv,
    write_json,
)

__all__ = [
    "cause_ratio",
    "histogram_csv",
    "latency_summary",
    "result_row",
    "rows_to_csv",
    "rows_to_json",
    "scalar_metrics",
    "table_columns",
    "table_rows",
    "tabulate",
    "write_csv",
    "write_json",
]
