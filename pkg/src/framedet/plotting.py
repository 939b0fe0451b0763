"""Figure rendering for the report path (always to files, never interactive)."""

from __future__ import annotations

from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

plt.rcParams.update({
    "figure.figsize": (6.0, 3.6),
    "figure.dpi": 160,
    "savefig.bbox": "tight",
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
})


def _as_float(v):
    try:
        return float(v)
    except (TypeError, ValueError):
        return float(str(v).split("+")[0].strip("(") or "nan")


def save_series_plot(rows: Sequence[dict], x_key: str, y_keys: Sequence[str],
                     path: str, logy: bool = False, title: Optional[str] = None,
                     xlabel: Optional[str] = None) -> str:
    """One line per y-column against the x-column; writes a PNG."""
    fig, ax = plt.subplots()
    xs = [_as_float(r[x_key]) for r in rows]
    for key in y_keys:
        ys = [abs(_as_float(r.get(key, float("nan")))) if logy
              else _as_float(r.get(key, float("nan"))) for r in rows]
        ax.plot(xs, ys, marker="o", ms=3, lw=1, label=key)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel or x_key)
    if title:
        ax.set_title(title)
    if len(y_keys) > 1:
        ax.legend()
    fig.savefig(path)
    plt.close(fig)
    return path
