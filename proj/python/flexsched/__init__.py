"""Day-ahead scheduling of a distribution company that trades with microgrids."""

import csv
import io
import json

from ._flexsched import (
    Case,
    InputError,
    InvariantError,
    ModelError,
    Report,
    TopologyError,
    compare,
    emit_plot_data,
    export_model,
    load_case,
    random_case,
    run_case,
    solve_dense,
)


def report_dict(report):
    """The JSON report as plain Python objects."""
    return json.loads(report.to_json())


def comparison_rows(off, on):
    """compare() parsed into {metric: (without_flex, with_flex, delta)}."""
    rows = {}
    for row in csv.DictReader(io.StringIO(compare(off, on))):
        vals = [row["without_flex"], row["with_flex"], row["delta"]]
        rows[row["metric"]] = tuple(float(v) if v else None for v in vals)
    return rows


__all__ = [
    "Case", "InputError", "InvariantError", "ModelError", "Report", "TopologyError",
    "compare", "comparison_rows", "emit_plot_data", "export_model", "load_case",
    "random_case", "report_dict", "run_case", "solve_dense",
]
