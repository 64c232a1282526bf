"""Wire formats for chaintree: JSON, CSV, plain text and Graphviz DOT."""

from .dot import render_dot
from .formats import (
    iter_records_csv,
    parse_diagram,
    parse_series,
    prepare_csv,
    prepare_diagram,
    prepare_diagram_csv,
    prepare_json_lines,
    prepare_plain,
    prepare_records_csv,
    prepare_sequence,
    prepare_sequence_csv,
    prepare_series,
    prepare_series_csv,
    table_rows,
)

__all__ = [
    "iter_records_csv",
    "parse_diagram",
    "parse_series",
    "prepare_csv",
    "prepare_diagram",
    "prepare_diagram_csv",
    "prepare_json_lines",
    "prepare_plain",
    "prepare_records_csv",
    "prepare_sequence",
    "prepare_sequence_csv",
    "prepare_series",
    "prepare_series_csv",
    "render_dot",
    "table_rows",
]
