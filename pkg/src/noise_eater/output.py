"""CSV and JSON writers for result tables."""
from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

from .errors import NumericalFailure

SIG_DIGITS = 9


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.{SIG_DIGITS}g}")
    return value


def check_finite(columns, rows) -> None:
    for row in rows:
        for name, value in zip(columns, row):
            if isinstance(value, float) and not math.isfinite(value):
                raise NumericalFailure(f"non-finite value in column {name!r}")


def render(columns, rows, fmt: str = "csv") -> str:
    check_finite(columns, rows)
    if fmt == "json":
        records = [{c: _json_value(v) for c, v in zip(columns, row)} for row in rows]
        return json.dumps(records, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write(text: str, path: str | None) -> None:
    """Write ``text`` to ``path``, or to stdout when no path is given."""
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    Path(path).write_text(text)
