"""Measurement-based waste-factor estimation.

Total consumed power of a radio unit is linear in its output signal
power: P_total = W * P_signal + P_non_path. An ordinary least-squares
fit of logged (P_signal, P_total) pairs therefore recovers W as the
slope and the non-path power as the intercept, without any knowledge of
the internal hardware.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .units import dbm_to_watts

_SIGNAL_COLUMNS = {"p_signal_w": False, "p_signal_dbm": True}
_TOTAL_COLUMNS = {"p_total_w": False, "p_total_dbm": True}


@dataclass(frozen=True)
class PowerSample:
    """One logged operating point. Noisy P_total below P_signal is tolerated."""

    p_signal_w: float
    p_total_w: float

    def __post_init__(self) -> None:
        if self.p_signal_w < 0.0 or self.p_total_w < 0.0:
            raise ValueError("logged powers must be >= 0 W")


@dataclass(frozen=True)
class WasteFit:
    """OLS result: slope (the waste factor), intercept (non-path power), fit quality.

    ``physical`` is False when the fit lands in unphysical territory
    (slope < 1 or negative intercept); the numbers are still reported so
    measurement QA stays in the caller's hands.
    """

    w: float
    p_non_path_w: float
    r_squared: float
    n_samples: int
    physical: bool


def fit_waste_factor(samples: Sequence[PowerSample]) -> WasteFit:
    """Least-squares line through (p_signal, p_total) pairs."""
    n = len(samples)
    if n < 2:
        raise ValueError(f"need at least 2 samples to fit, got {n}")
    x = [s.p_signal_w for s in samples]
    y = [s.p_total_w for s in samples]
    x_mean = sum(x) / n
    y_mean = sum(y) / n
    sxx = sum((xi - x_mean) ** 2 for xi in x)
    if sxx == 0.0:
        raise ValueError("all p_signal values are equal; the slope is undetermined")
    sxy = sum((xi - x_mean) * (yi - y_mean) for xi, yi in zip(x, y))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    ss_res = sum((yi - (slope * xi + intercept)) ** 2 for xi, yi in zip(x, y))
    ss_tot = sum((yi - y_mean) ** 2 for yi in y)
    if ss_tot == 0.0:
        r_squared = 1.0 if ss_res <= 1e-18 else 0.0
    else:
        r_squared = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return WasteFit(
        w=slope,
        p_non_path_w=intercept,
        r_squared=r_squared,
        n_samples=n,
        physical=slope >= 1.0 and intercept >= 0.0,
    )


def _parse_header(fields: Sequence[str], path: Path) -> tuple[int, bool, int, bool]:
    signal_idx = signal_dbm = total_idx = total_dbm = None
    for idx, name in enumerate(fields):
        key = name.strip().lower()
        if key in _SIGNAL_COLUMNS:
            if signal_idx is not None:
                raise ValueError(f"{path}: duplicate signal-power column {name!r}")
            signal_idx, signal_dbm = idx, _SIGNAL_COLUMNS[key]
        elif key in _TOTAL_COLUMNS:
            if total_idx is not None:
                raise ValueError(f"{path}: duplicate total-power column {name!r}")
            total_idx, total_dbm = idx, _TOTAL_COLUMNS[key]
        else:
            raise ValueError(
                f"{path}: unknown column {name!r}; accepted columns are "
                "p_signal_w|p_signal_dbm and p_total_w|p_total_dbm"
            )
    if signal_idx is None:
        raise ValueError(f"{path}: missing column p_signal_w or p_signal_dbm")
    if total_idx is None:
        raise ValueError(f"{path}: missing column p_total_w or p_total_dbm")
    return signal_idx, signal_dbm, total_idx, total_dbm


def load_power_log(path: str | Path) -> list[PowerSample]:
    """Read a power log CSV: header row, optional '#' comment lines.

    Accepted columns: ``p_signal_w`` or ``p_signal_dbm`` and ``p_total_w``
    or ``p_total_dbm``; dBm columns convert to watts on load. Rows are
    preserved in file order. Malformed content raises ValueError naming
    the offending line.
    """
    path = Path(path)
    with path.open(newline="", encoding="utf-8") as handle:
        rows = _read_rows(csv.reader(handle), path)
    if not rows:
        raise ValueError(f"{path}: empty file (no header row)")
    (line_no, header), data = rows[0], rows[1:]
    signal_idx, signal_dbm, total_idx, total_dbm = _parse_header(header, path)
    if not data:
        raise ValueError(f"{path}: no data rows after the header")
    samples = []
    for line_no, row in data:
        if len(row) != len(header):
            raise ValueError(
                f"{path}:{line_no}: expected {len(header)} cells, got {len(row)}"
            )
        signal = _parse_cell(row[signal_idx], path, line_no, header[signal_idx])
        total = _parse_cell(row[total_idx], path, line_no, header[total_idx])
        if signal_dbm:
            signal = dbm_to_watts(signal)
        if total_dbm:
            total = dbm_to_watts(total)
        samples.append(PowerSample(p_signal_w=signal, p_total_w=total))
    return samples


def _read_rows(reader: Iterable[list[str]], path: Path) -> list[tuple[int, list[str]]]:
    rows = []
    for line_no, row in enumerate(reader, start=1):
        if not row or row[0].lstrip().startswith("#"):
            continue
        if all(not cell.strip() for cell in row):
            continue
        rows.append((line_no, row))
    return rows


def _parse_cell(cell: str, path: Path, line_no: int, column: str) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise ValueError(
            f"{path}:{line_no}: non-numeric value {cell!r} in column {column!r}"
        ) from None
    if math.isnan(value):
        raise ValueError(f"{path}:{line_no}: NaN in column {column!r}")
    return value
