"""Two-cavity Jaynes-Cummings entanglement simulator."""

import json

from ._core import (
    CSV_HEADER,
    FormatError,
    InvalidState,
    NumericalError,
    Series,
    XState,
    __version__,
    analytic_concurrence,
    choose_truncation,
    coherent_coefficients,
    concurrence_wootters,
    concurrence_x,
    peak_height,
    q_of_t,
    read_csv,
    reduced_density,
    revival_center,
    run_scan,
    saddle_integral,
    series_elements,
    x_project,
)


def report(series, column="exact", threshold=0.05):
    """Revival report for a scan as a dict."""
    return json.loads(series.report_json(column, threshold))


__all__ = [
    "CSV_HEADER",
    "FormatError",
    "InvalidState",
    "NumericalError",
    "Series",
    "XState",
    "__version__",
    "analytic_concurrence",
    "choose_truncation",
    "coherent_coefficients",
    "concurrence_wootters",
    "concurrence_x",
    "peak_height",
    "q_of_t",
    "read_csv",
    "reduced_density",
    "report",
    "revival_center",
    "run_scan",
    "saddle_integral",
    "series_elements",
    "x_project",
]
