"""Machine-readable table emission (CSV / JSON) with provenance."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional, Sequence

import mpmath as mp

VERSION = "framedet-0.1.0"


def render_number(v, digits: Optional[int] = None):
    """Full-precision decimal rendering for any scalar the package produces."""
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (mp.mpf, mp.mpc)):
        d = digits or int(mp.mp.dps) + 2
        return mp.nstr(v, d, strip_zeros=False)
    if isinstance(v, float):
        return repr(v)
    return v


def rows_to_table(rows: Sequence[dict], digits: Optional[int] = None):
    """Stable column order: first-appearance order across the row dicts."""
    columns = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    rendered = [{k: render_number(row.get(k, ""), digits) for k in columns}
                for row in rows]
    return columns, rendered


def emit_csv(rows: Sequence[dict], path: Optional[str] = None,
             digits: Optional[int] = None) -> str:
    columns, rendered = rows_to_table(rows, digits)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(columns)
    for row in rendered:
        writer.writerow([row[c] for c in columns])
    text = buf.getvalue()
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def emit_json(rows: Sequence[dict], config: dict, path: Optional[str] = None,
              digits: Optional[int] = None) -> str:
    _, rendered = rows_to_table(rows, digits)
    payload = {
        "provenance": {
            "version": VERSION,
            "config": config,
            "precision_bits": config.get("precision_bits"),
            "seed": config.get("seed"),
        },
        "rows": rendered,
    }
    text = json.dumps(payload, indent=2, default=str)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text


def emit_report(rows: Sequence[dict], fmt: str, config: dict,
                path: Optional[str] = None, digits: Optional[int] = None) -> str:
    if fmt == "csv":
        return emit_csv(rows, path, digits)
    if fmt == "json":
        return emit_json(rows, config, path, digits)
    raise ValueError(f"unknown format {fmt!r}")
