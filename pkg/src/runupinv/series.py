"""Uniformly sampled scalar signals and samples on a Bromwich line."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import GridMismatchError, InputError


@dataclass(frozen=True)
class TimeSeries:
    """A real signal sampled at ``t0 + i*dt`` for ``i = 0..len-1``.

    Also used for spatial profiles, in which case ``t0``/``dt`` are an
    origin and step along x.
    """

    t0: float
    dt: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if not np.isfinite(self.dt) or self.dt <= 0:
            raise InputError(f"dt must be positive, got {self.dt}")
        if vals.ndim != 1 or vals.size < 2:
            raise InputError("values must be a 1-D array of length >= 2")

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.values.size - 1)

    def with_values(self, values: np.ndarray) -> "TimeSeries":
        return TimeSeries(self.t0, self.dt, values)

    def restrict(self, t_lo: float, t_hi: float) -> "TimeSeries":
        """Restriction to the samples with abscissa in [t_lo, t_hi]."""
        if t_lo >= t_hi:
            raise InputError("empty restriction window")
        t = self.times
        mask = (t >= t_lo - 1e-12 * self.dt) & (t <= t_hi + 1e-12 * self.dt)
        idx = np.nonzero(mask)[0]
        if idx.size < 2:
            raise InputError("restriction window contains fewer than 2 samples")
        return TimeSeries(float(t[idx[0]]), self.dt, self.values[idx])


@dataclass(frozen=True)
class ComplexSamples:
    """Samples of a complex function on a single vertical line Re s = a."""

    s_values: np.ndarray
    F_values: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.s_values, dtype=complex)
        F = np.asarray(self.F_values, dtype=complex)
        object.__setattr__(self, "s_values", s)
        object.__setattr__(self, "F_values", F)
        if s.shape != F.shape or s.ndim != 1:
            raise InputError("s_values and F_values must be 1-D of equal length")
        a = s.real
        scale = max(1.0, float(np.max(np.abs(a))))
        if np.max(np.abs(a - a[0])) > 1e-9 * scale:
            raise InputError("s values must lie on a single vertical line")

    @property
    def abscissa(self) -> float:
        return float(self.s_values[0].real)


@dataclass(frozen=True)
class FitResult:
    """Outcome of a nonlinear least-squares fit."""

    parameters: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool


def check_same_grid(f: TimeSeries, g: TimeSeries, *, same_origin: bool = True) -> None:
    tol = 1e-12 * max(f.dt, g.dt)
    if abs(f.dt - g.dt) > tol:
        raise GridMismatchError(f"dt mismatch: {f.dt} vs {g.dt}")
    if same_origin and abs(f.t0 - g.t0) > 1e-9 * max(f.dt, 1.0):
        raise GridMismatchError(f"origin mismatch: {f.t0} vs {g.t0}")


def derivative(f: TimeSeries) -> np.ndarray:
    """First derivative, second-order central with one-sided ends."""
    return np.gradient(f.values, f.dt, edge_order=2)


def second_derivative(f: TimeSeries) -> np.ndarray:
    """Second derivative, central interior, one-sided second-order ends."""
    v = f.values
    h = f.dt
    out = np.empty_like(v)
    out[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h**2
    # one-sided second-order formulas at the ends
    out[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h**2
    out[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h**2
    return out


def resample_uniform(x: np.ndarray, y: np.ndarray, n: int | None = None,
                     t0: float | None = None, t_end: float | None = None) -> TimeSeries:
    """Monotone (shape-preserving) cubic resampling onto a uniform grid.

    ``x`` must be strictly increasing.  Defaults keep the original span and
    sample count.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(np.diff(x) <= 0):
        raise InputError("abscissae must be strictly increasing for resampling")
    n = x.size if n is None else int(n)
    t0 = float(x[0]) if t0 is None else float(t0)
    t_end = float(x[-1]) if t_end is None else float(t_end)
    grid = np.linspace(t0, t_end, n)
    interp = PchipInterpolator(x, y, extrapolate=True)
    return TimeSeries(t0, (t_end - t0) / (n - 1), interp(grid))


def resample_to_grid(f: TimeSeries, target: TimeSeries | np.ndarray) -> TimeSeries:
    """Resample ``f`` onto the grid of ``target`` (pchip, extrapolating)."""
    interp = PchipInterpolator(f.times, f.values, extrapolate=True)
    if isinstance(target, TimeSeries):
        return TimeSeries(target.t0, target.dt, interp(target.times))
    grid = np.asarray(target, dtype=float)
    return TimeSeries(float(grid[0]), float(grid[1] - grid[0]), interp(grid))


def relative_l2(approx: np.ndarray, exact: np.ndarray) -> float:
    """||approx - exact||_2 / ||exact||_2 (0/0 treated as 0)."""
    approx = np.asarray(approx, dtype=float)
    exact = np.asarray(exact, dtype=float)
    denom = float(np.linalg.norm(exact))
    num = float(np.linalg.norm(approx - exact))
    if denom == 0.0:
        return 0.0 if num == 0.0 else np.inf
    return num / denom
