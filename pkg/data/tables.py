"""Rendering report rows as CSV, JSON or an aligned text table."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Mapping, Sequence
from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel

from data.models import OutputFormat

Row = BaseModel | Mapping[str, Any]


def row_dict(row: Row) -> dict[str, Any]:
    if isinstance(row, BaseModel):
        return row.model_dump(mode="json")
    return {k: (v.value if isinstance(v, Enum) else v) for k, v in row.items()}


def _columns(rows: Sequence[dict[str, Any]]) -> list[str]:
    columns: list[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    return columns


def to_csv(rows: Sequence[Row]) -> str:
    """CSV with a mandatory header row."""
    dicts = [row_dict(r) for r in rows]
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=_columns(dicts), lineterminator="\n")
    writer.writeheader()
    writer.writerows(dicts)
    return buffer.getvalue()


def to_json(rows: Sequence[Row]) -> str:
    return json.dumps([row_dict(r) for r in rows], indent=2) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def to_text(rows: Sequence[Row]) -> str:
    dicts = [row_dict(r) for r in rows]
    columns = _columns(dicts)
    if not columns:
        return "(no rows)\n"
    cells = [[_cell(d.get(c, "")) for c in columns] for d in dicts]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("─" * w for w in widths))
    lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in cells)
    return "\n".join(lines) + "\n"


_RENDERERS = {
    OutputFormat.CSV: to_csv,
    OutputFormat.JSON: to_json,
    OutputFormat.TEXT: to_text,
}


def render(rows: Sequence[Row], fmt: OutputFormat | str = OutputFormat.TEXT) -> str:
    return _RENDERERS[OutputFormat(fmt)](rows)


def write_table(rows: Sequence[Row], fmt: OutputFormat | str, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render(rows, fmt), encoding="utf-8")
    return path
