"""Min/max cost envelopes over a demand trajectory and containment scoring.

A sweep gives ``(min cost, max cost)`` at a few demand knots.  Mapping a demand
time series through those knots by linear interpolation yields lower and upper
curves over time; an externally produced forecast or actual series can then be
scored by the fraction of its points that fall inside the band.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import ExtrapolationError, InputError
from .io import atomic_write, csv_text
from .pareto import SweepResult

INTERPOLATION_SCHEMES = ("linear",)
ENVELOPE_HEADER = ("t", "lower", "upper")


@dataclass(frozen=True)
class TimeSeries:
    t: np.ndarray
    values: np.ndarray

    def __post_init__(self) -> None:
        t = np.asarray(self.t, dtype=float).ravel()
        v = np.asarray(self.values, dtype=float).ravel()
        if t.shape != v.shape:
            raise InputError("time and value arrays differ in length")
        if len(t) == 0:
            raise InputError("time series is empty")
        bad = np.flatnonzero(np.diff(t) <= 0)
        if len(bad):
            raise InputError(f"time must be strictly increasing (violated at point {bad[0] + 1})")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_points(cls, points: Sequence[tuple[float, float]]) -> TimeSeries:
        arr = np.asarray(points, dtype=float).reshape(-1, 2)
        return cls(arr[:, 0], arr[:, 1])

    def __len__(self) -> int:
        return len(self.t)

    def at(self, t) -> np.ndarray:
        """Linear interpolation between knots; raises outside the time hull."""
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t[0]) or np.any(t > self.t[-1]):
            raise ExtrapolationError(
                f"times outside [{self.t[0]}, {self.t[-1]}] need extrapolation"
            )
        return np.interp(t, self.t, self.values)


@dataclass(frozen=True)
class Envelope:
    lower: TimeSeries
    upper: TimeSeries

    def __post_init__(self) -> None:
        if not np.array_equal(self.lower.t, self.upper.t):
            raise InputError("envelope bounds must share one time grid")
        if np.any(self.lower.values > self.upper.values):
            raise InputError("envelope lower bound exceeds upper bound")

    @property
    def t(self) -> np.ndarray:
        return self.lower.t

    def bounds_at(self, t) -> tuple[np.ndarray, np.ndarray]:
        return self.lower.at(t), self.upper.at(t)

    def widened(self, margin: float) -> Envelope:
        return Envelope(
            TimeSeries(self.t, self.lower.values - margin),
            TimeSeries(self.t, self.upper.values + margin),
        )


def load_series(path: str | Path, column_map: Mapping[str, str] | tuple[str, str] = ("t", "value")) -> TimeSeries:
    """Read a (time, value) series from a headed CSV file.

    ``column_map`` names the time and value columns, either as a pair or as a
    mapping with keys ``"t"`` and ``"value"``.  Any unparseable numeric cell is
    an error listing the offending row numbers (the header is row 1).
    """
    if isinstance(column_map, Mapping):
        t_col, v_col = column_map["t"], column_map["value"]
    else:
        t_col, v_col = column_map
    text = Path(path).read_text()
    reader = csv.DictReader(io.StringIO(text))
    if not reader.fieldnames:
        raise InputError(f"{path}: empty file")
    for col in (t_col, v_col):
        if col not in reader.fieldnames:
            raise InputError(f"{path}: missing column {col!r} (have {reader.fieldnames})")
    times, values, rejected = [], [], []
    for rowno, row in enumerate(reader, start=2):
        try:
            times.append(float(row[t_col]))
            values.append(float(row[v_col]))
        except (TypeError, ValueError):
            rejected.append(rowno)
    if rejected:
        raise InputError(f"{path}: unparseable numeric values in rows {rejected}")
    if not times:
        raise InputError(f"{path}: no data rows")
    for k in range(1, len(times)):
        if times[k] <= times[k - 1]:
            raise InputError(f"{path}: time not strictly increasing at row {k + 2}")
    return TimeSeries(np.array(times), np.array(values))


def write_series(series: TimeSeries, path: str | Path, header: tuple[str, str] = ("t", "value")) -> Path:
    return atomic_write(path, csv_text(header, zip(series.t.tolist(), series.values.tolist())))


def build_envelope(demand_series: TimeSeries, sweep: SweepResult, scheme: str = "linear") -> Envelope:
    """Lower/upper cost curves for a demand trajectory.

    At each time the demand is located between the two nearest sweep demands
    and ``min_cost`` / ``max_cost`` are interpolated linearly.  Demands outside
    the sweep's range raise :class:`ExtrapolationError`.
    """
    if scheme not in INTERPOLATION_SCHEMES:
        raise InputError(f"unknown interpolation scheme {scheme!r}")
    knots = np.array(sweep.demands, dtype=float)
    lo_knots = sweep.column("min_cost")
    hi_knots = sweep.column("max_cost")
    demand = demand_series.values
    outside = np.flatnonzero((demand < knots[0]) | (demand > knots[-1]))
    if len(outside):
        i = outside[0]
        raise ExtrapolationError(
            f"demand {demand[i]} at t={demand_series.t[i]} lies outside the sweep range "
            f"[{knots[0]:g}, {knots[-1]:g}]"
        )
    lower = np.interp(demand, knots, lo_knots)
    upper = np.interp(demand, knots, hi_knots)
    return Envelope(TimeSeries(demand_series.t, lower), TimeSeries(demand_series.t, upper))


def containment_ratio(series: TimeSeries, env: Envelope) -> float:
    """Fraction of series points inside the closed band ``[lower(t), upper(t)]``."""
    return containment_report(series, env)["ratio"]


def containment_report(series: TimeSeries, env: Envelope) -> dict:
    lo, hi = env.bounds_at(series.t)
    inside = int(np.count_nonzero((series.values >= lo) & (series.values <= hi)))
    return {"points": len(series), "inside": inside, "ratio": inside / len(series)}


def envelope_csv(env: Envelope) -> str:
    return csv_text(ENVELOPE_HEADER, zip(env.t.tolist(), env.lower.values.tolist(), env.upper.values.tolist()))


def sample_trace_path() -> Path:
    """Bundled synthetic trace with ``t``, ``demand`` and ``revenue`` columns."""
    return Path(str(resources.files("riskfront") / "data" / "demand_trace.csv"))
