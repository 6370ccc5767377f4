"""CSV series I/O used by the scenario runner, service and CLI.

Schema: a header row, then columns (abscissa, value[, exact_value]) written
with full-precision ``repr`` so external plotting loses nothing and re-runs
are bit-identical.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .errors import InputError
from .series import TimeSeries


def write_series_csv(path: str | Path, series: TimeSeries,
                     exact: TimeSeries | None = None,
                     abscissa: str = "t") -> Path:
    """Write one series (optionally alongside its exact reference)."""
    path = Path(path)
    header = [abscissa, "value"]
    cols = [series.times, series.values]
    if exact is not None:
        if len(exact) != len(series) or abs(exact.dt - series.dt) > 1e-12 * series.dt:
            raise InputError("exact series must share the grid of the recovered one")
        header.append("exact_value")
        cols.append(exact.values)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in zip(*cols):
            writer.writerow([repr(float(v)) for v in row])
    return path


def read_series_csv(path: str | Path) -> tuple[TimeSeries, TimeSeries | None]:
    """Read a series CSV; returns (series, exact_series_or_None).

    The abscissa must be uniformly spaced (relative tolerance 1e-6 on the
    step).
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or len(header) < 2:
            raise InputError(f"{path}: expected a header row with >= 2 columns")
        rows = [row for row in reader if row]
    if len(rows) < 2:
        raise InputError(f"{path}: need at least 2 data rows")
    try:
        data = np.array([[float(v) for v in row[:len(header)]] for row in rows])
    except ValueError as exc:
        raise InputError(f"{path}: non-numeric data: {exc}") from exc
    t = data[:, 0]
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise InputError(f"{path}: abscissa must be strictly increasing")
    dt = float(np.mean(steps))
    if np.max(np.abs(steps - dt)) > 1e-6 * dt:
        raise InputError(f"{path}: abscissa must be uniformly spaced")
    series = TimeSeries(float(t[0]), dt, data[:, 1])
    exact = TimeSeries(float(t[0]), dt, data[:, 2]) if data.shape[1] > 2 else None
    return series, exact


def write_summary(path: str | Path, summary: dict) -> Path:
    """Deterministic JSON summary (sorted keys, fixed layout)."""
    path = Path(path)
    path.write_text(json.dumps(summary, indent=2, sort_keys=True,
                               default=_jsonable) + "\n")
    return path


def write_plot_manifest(path: str | Path, figures: list[dict]) -> Path:
    """Manifest naming series files per figure for out-of-process plotting."""
    path = Path(path)
    path.write_text(json.dumps({"figures": figures}, indent=2, sort_keys=True)
                    + "\n")
    return path


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    raise TypeError(f"not JSON serializable: {type(obj)}")
