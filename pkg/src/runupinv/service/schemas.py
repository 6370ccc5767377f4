"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..scenarios import ScenarioConfig  # noqa: F401  (re-exported for clients)
from ..series import TimeSeries


class _Model(BaseModel):
    model_config = ConfigDict(extra="forbid")


class SeriesPayload(_Model):
    """A uniformly sampled series on t0 + i*dt."""

    t0: float = 0.0
    dt: float = Field(..., gt=0)
    values: list[float] = Field(..., min_length=2)

    @classmethod
    def from_series(cls, series: TimeSeries) -> "SeriesPayload":
        return cls(t0=float(series.t0), dt=float(series.dt),
                   values=[float(v) for v in series.values])

    def to_series(self) -> TimeSeries:
        return TimeSeries(self.t0, self.dt, np.asarray(self.values))


class BathymetryPayload(_Model):
    L: float = Field(1.0, gt=0)
    sigma_L: Optional[float] = Field(None, gt=0)
    alpha: float = Field(1.0, gt=0)
    H0: float = Field(5.0, gt=0)
    g: float = Field(9.81, gt=0)


class InversionPayload(_Model):
    bromwich_a: Optional[float] = Field(None, gt=0)
    t_window: Optional[float] = Field(None, gt=0)
    n_fft: Optional[int] = Field(None, ge=16)
    eps_reg: float = Field(1e-10, gt=0)
    residue_tol: float = Field(1e-8, gt=0)


class InvertRequest(_Model):
    runup: SeriesPayload
    bathymetry: BathymetryPayload = Field(default_factory=BathymetryPayload)
    inversion: InversionPayload = Field(default_factory=InversionPayload)
    n_modes: int = Field(500, ge=1)
    n_sigma: int = Field(300, ge=8)
    conv_method: Literal["direct", "fft", "oscillator"] = "oscillator"


class DiagnosticsPayload(_Model):
    imag_residue: float
    residue_ok: bool
    floor_count: int
    compatibility_defect: float
    min_abs_jacobian: float
    breaking: bool
    runtime_s: float


class InvertResponse(_Model):
    psi_sh: SeriesPayload
    psi_b: SeriesPayload
    phi_b: SeriesPayload
    eta_b: SeriesPayload
    u_b: SeriesPayload
    diagnostics: DiagnosticsPayload


class ForwardRequest(_Model):
    psi_b: SeriesPayload
    sigma_L: float = Field(1.0, gt=0)
    n_modes: int = Field(500, ge=1)
    conv_method: Literal["direct", "fft", "oscillator"] = "oscillator"
    compat_tol: float = Field(1e-3, gt=0)


class ForwardResponse(_Model):
    psi_sh: SeriesPayload
    phi_sh: SeriesPayload
    runup: SeriesPayload


class SolitonGuessPayload(_Model):
    q1: float = Field(..., gt=0)
    q2: float = Field(..., gt=0)
    t1: float
    t2: float
    eps1: Literal[-1, 1] = 1
    eps2: Literal[-1, 1] = 1


class WaveGuessPayload(_Model):
    kind: Literal["soliton", "n_wave"] = "soliton"
    c: float = Field(4.0, gt=0)
    width: float = Field(25.0, gt=0)
    offsets: Optional[list[float]] = None
    amplitudes: Optional[list[float]] = None


class FitSolitonsRequest(_Model):
    series: SeriesPayload
    L: float = Field(..., gt=0)
    model: Literal["boussinesq", "lswe"] = "boussinesq"
    crop_lo: Optional[float] = None
    crop_hi: Optional[float] = None
    t_event: Optional[float] = None
    soliton_guess: Optional[SolitonGuessPayload] = None
    wave_guess: Optional[WaveGuessPayload] = None


class FitSolitonsResponse(_Model):
    converged: bool
    residual_norm: float
    iterations: int
    parameters: dict[str, float | list[float]]
    positions: Optional[list[float]] = None


class ScenarioRequest(_Model):
    config: ScenarioConfig


class ScenarioResponse(_Model):
    summary: dict


class BenchmarkRequest(_Model):
    n_list: list[int] = Field(default_factory=lambda: [250, 500, 1000, 2000])
    modes_ref: int = Field(500, ge=1)
    n_tau_ref: int = Field(1500, ge=16)
    repetitions: int = Field(3, ge=1)
    t_end: float = Field(40.0, gt=0)


class BenchmarkResponse(_Model):
    n_list: list[int]
    times_s: list[float]
    slope: float
    log_intercept: float
    repetitions: int


class ErrorBody(_Model):
    kind: Literal["validation", "numerical"]
    message: str
    stage: Optional[str] = None
