"""Laplace-domain recovery of boundary data from the shoreline signal.

In the Laplace domain the shoreline equation becomes a multiplication:

    L psi_sh(s) = L psi_b(s) * (s^2 sum_n b_n / (a_n + s^2) + 1),

so the boundary data follows by dividing by the (truncated) bracket and
inverting on a damped Bromwich line with the FFT.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import StageError
from .hodograph import (Bathymetry, BreakingReport, HodographField,
                        breaking_diagnostic, inverse_cgt_on_gamma,
                        shore_to_hodograph)
from .laplace import inverse_laplace_ifft, laplace_forward_bromwich
from .modes import (ModeSet, boundary_velocity, build_modes,
                    duhamel_coefficients, reconstruct_field)
from .series import TimeSeries, relative_l2, resample_to_grid


@dataclass(frozen=True)
class InversionParams:
    """Bromwich-line and regularization knobs for :func:`recover_psi_b`.

    Defaults: the FFT window is twice the record length (zero padding
    suppresses wrap-around), the damping abscissa is 6 / T_window, the FFT
    size is the next power of two holding the padded record, and the
    multiplier denominator is floored at ``eps_reg`` in magnitude.
    """

    bromwich_a: float | None = None
    t_window: float | None = None
    n_fft: int | None = None
    eps_reg: float = 1e-10
    residue_tol: float = 1e-8

    def resolve(self, psi_sh: TimeSeries) -> tuple[float, float, int]:
        T = psi_sh.t_end
        t_window = 2.0 * T if self.t_window is None else self.t_window
        a = 6.0 / t_window if self.bromwich_a is None else self.bromwich_a
        if self.n_fft is None:
            n = 1 << int(np.ceil(np.log2(t_window / psi_sh.dt)))
        else:
            n = self.n_fft
        return a, t_window, n


@dataclass
class MultiplierDiagnostics:
    floor_count: int = 0


def inversion_multiplier(modes: ModeSet, s, eps_reg: float = 1e-10,
                         diagnostics: MultiplierDiagnostics | None = None):
    """M(s) = 1 / (s^2 sum_n b_n/(a_n + s^2) + 1), denominator floored at eps_reg."""
    s_arr = np.asarray(s, dtype=complex)
    s2 = np.ravel(s_arr)[:, None] ** 2
    denom = s2.ravel() * ((modes.b[None, :] / (modes.a[None, :] + s2)).sum(axis=1)) + 1.0
    mag = np.abs(denom)
    small = mag < eps_reg
    if np.any(small):
        if diagnostics is not None:
            diagnostics.floor_count += int(np.sum(small))
        safe = np.where(mag[small] > 0, mag[small], 1.0)
        phase = np.where(mag[small] > 0, denom[small] / safe, 1.0)
        denom[small] = eps_reg * phase
    M = (1.0 / denom).reshape(s_arr.shape)
    return complex(M) if np.isscalar(s) else M


def velocity_multiplier(modes: ModeSet, s):
    """G(s) with L phi_b = G(s) L psi_b, from the truncated mode sum.

    Each mode contributes (j_n J1(j_n) / (2 sigma_L)) L d_n with
    L d_n = b_n s L psi_b / (s^2 + a_n); the weights cancel b_n exactly,
    leaving G(s) = -(s / sigma_L) sum_n 1 / (s^2 + a_n).
    """
    s_arr = np.asarray(s, dtype=complex)
    s2 = np.ravel(s_arr)[:, None] ** 2
    total = (1.0 / (modes.a[None, :] + s2)).sum(axis=1)
    G = (-np.ravel(s_arr) / modes.sigma_L * total).reshape(s_arr.shape)
    return complex(G) if np.isscalar(s) else G


def recover_psi_b(psi_sh: TimeSeries, modes: ModeSet,
                  params: InversionParams = InversionParams()
                  ) -> tuple[TimeSeries, dict]:
    """Invert the shoreline equation: psi_b on the grid of ``psi_sh``.

    Returns the recovered series plus a diagnostics dict (imaginary residue
    of the Bromwich sum, denominator floor count, compatibility defect of
    the output).
    """
    a, t_window, n_fft = params.resolve(psi_sh)
    mdiag = MultiplierDiagnostics()
    Fsh = laplace_forward_bromwich(psi_sh, a, t_window, n_fft).F_values

    def F(s):
        return Fsh * inversion_multiplier(modes, s, params.eps_reg, mdiag)

    inv = inverse_laplace_ifft(F, a, t_window, n_fft,
                               residue_tol=params.residue_tol)
    psi_b = resample_to_grid(inv.series, psi_sh)
    scale = max(float(np.max(np.abs(psi_b.values))), 1e-300)
    diagnostics = {
        "imag_residue": inv.imag_residue,
        "residue_ok": inv.residue_ok,
        "floor_count": mdiag.floor_count,
        "compatibility_defect": abs(psi_b.values[0]) / scale,
        "bromwich_a": a,
        "t_window": t_window,
        "n_fft": n_fft,
    }
    return psi_b, diagnostics


def recover_phi_b(psi_sh: TimeSeries, modes: ModeSet,
                  params: InversionParams = InversionParams()
                  ) -> tuple[TimeSeries, dict]:
    """Recover the boundary velocity phi_b directly from the shoreline signal.

    Applies the chained multiplier G(s) M(s) on the Bromwich line, avoiding
    the accumulation of quadrature noise in the time-domain mode integrals.
    """
    a, t_window, n_fft = params.resolve(psi_sh)
    mdiag = MultiplierDiagnostics()
    Fsh = laplace_forward_bromwich(psi_sh, a, t_window, n_fft).F_values

    def F(s):
        return (Fsh * inversion_multiplier(modes, s, params.eps_reg, mdiag)
                * velocity_multiplier(modes, s))

    inv = inverse_laplace_ifft(F, a, t_window, n_fft,
                               residue_tol=params.residue_tol)
    phi_b = resample_to_grid(inv.series, psi_sh)
    diagnostics = {
        "imag_residue": inv.imag_residue,
        "residue_ok": inv.residue_ok,
        "floor_count": mdiag.floor_count,
    }
    return phi_b, diagnostics


@dataclass
class PipelineDiagnostics:
    imag_residue: float = np.nan
    residue_ok: bool = True
    floor_count: int = 0
    compatibility_defect: float = np.nan
    breaking: BreakingReport | None = None
    truncation_change: float = np.nan
    runtime_s: float = np.nan


@dataclass
class PipelineResult:
    eta_b: TimeSeries
    u_b: TimeSeries
    psi_sh: TimeSeries
    psi_b: TimeSeries
    phi_b: TimeSeries
    field: HodographField
    modes: ModeSet
    diagnostics: PipelineDiagnostics = field(default_factory=PipelineDiagnostics)


def invert_runup(R: TimeSeries, bathymetry: Bathymetry,
                 n_modes: int = 500, n_sigma: int = 300,
                 params: InversionParams = InversionParams(),
                 conv_method: str = "direct",
                 compat_tol: float = 1e-3,
                 estimate_truncation: bool = False) -> PipelineResult:
    """Full run-up -> buoy pipeline.

    Steps: shoreline transform, Laplace-domain recovery of psi_b, spectral
    field reconstruction, inverse transform along the buoy curve.  Stage
    failures are re-raised tagged with the stage name.
    """
    tic = time.perf_counter()
    diag = PipelineDiagnostics()

    def stage(name, fn, *args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except Exception as exc:
            raise StageError(name, exc) from exc

    psi_sh = stage("shore_to_hodograph", shore_to_hodograph, R)
    modes = stage("build_modes", build_modes, bathymetry.sigma_L, n_modes)
    psi_b, rec_diag = stage("recover_psi_b", recover_psi_b, psi_sh, modes, params)
    diag.imag_residue = rec_diag["imag_residue"]
    diag.residue_ok = rec_diag["residue_ok"]
    diag.floor_count = rec_diag["floor_count"]
    diag.compatibility_defect = rec_diag["compatibility_defect"]

    if estimate_truncation:
        half = build_modes(bathymetry.sigma_L, max(1, n_modes // 2))
        psi_b_half, _ = stage("recover_psi_b", recover_psi_b, psi_sh, half, params)
        diag.truncation_change = relative_l2(psi_b_half.values, psi_b.values)

    filled = stage("duhamel_coefficients", duhamel_coefficients,
                   psi_b, modes, method=conv_method, compat_tol=compat_tol)
    # the buoy curve sigma = L + psi - phi^2/2 strays slightly past sigma_L,
    # so reconstruct on a grid with a matching margin
    margin = 4.0 * float(np.max(np.abs(psi_b.values)))
    sigma_grid = np.linspace(0.0, bathymetry.sigma_L + margin, n_sigma)
    fld = stage("reconstruct_field", reconstruct_field, filled, psi_b, sigma_grid)
    diag.breaking = breaking_diagnostic(fld)
    eta_b, u_b = stage("inverse_cgt_on_gamma", inverse_cgt_on_gamma, fld, bathymetry)
    phi_b, _ = stage("recover_phi_b", recover_phi_b, psi_sh, modes, params)
    diag.runtime_s = time.perf_counter() - tic
    return PipelineResult(eta_b=eta_b, u_b=u_b, psi_sh=psi_sh, psi_b=psi_b,
                          phi_b=phi_b, field=fld, modes=filled, diagnostics=diag)
