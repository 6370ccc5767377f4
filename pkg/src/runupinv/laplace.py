"""Finite-window Laplace transform and Bromwich-line FFT inversion.

The forward transform is a composite trapezoid rule on the uniform grid,
O(N_s * N_t).  The inverse evaluates the Bromwich sum

    f(t) ~ (e^{a t} / T) * sum_m F(a + i w_m) e^{i w_m t},  w_m = 2 pi m / T,

with m in [-N/2, N/2), via a radix-2 inverse FFT in O(N log N).  The sum is
valid when every singularity of F lies strictly left of Re s = a; a violated
assumption shows up as a large imaginary residue, which is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.interpolate import PchipInterpolator

from .errors import InputError, LaplaceInversionError
from .series import ComplexSamples, TimeSeries


def laplace_forward(f: TimeSeries, s_grid) -> ComplexSamples:
    """Trapezoidal approximation of int_0^T f(t) e^{-s t} dt on a vertical line."""
    if abs(f.t0) > 1e-12 * f.dt:
        raise InputError("signal must start at t = 0")
    s = np.asarray(s_grid, dtype=complex).ravel()
    a = s.real
    if np.max(np.abs(a - a[0])) > 1e-9 * max(1.0, float(np.max(np.abs(a)))):
        raise InputError("s grid must lie on a single vertical line")
    t = f.times
    w = np.full(t.size, f.dt)
    w[0] *= 0.5
    w[-1] *= 0.5
    F = np.exp(-np.outer(s, t)) @ (w * f.values)
    return ComplexSamples(s, F)


def laplace_forward_bromwich(f: TimeSeries, a: float, T_window: float,
                             N: int) -> ComplexSamples:
    """Forward transform sampled exactly on the Bromwich FFT frequencies.

    Equivalent to :func:`laplace_forward` at :func:`bromwich_frequencies`
    (trapezoid rule on the FFT-aligned grid) but computed with one FFT in
    O(N log N) instead of a dense O(N_s * N_t) matrix.
    """
    if abs(f.t0) > 1e-12 * f.dt:
        raise InputError("signal must start at t = 0")
    if N < 2 or (N & (N - 1)) != 0:
        raise InputError(f"N must be a power of two, got {N}")
    delta = T_window / N
    m_last = int(np.floor(f.t_end / delta + 1e-12))
    if m_last < 1:
        raise InputError("T_window / N must resolve the record")
    grid = delta * np.arange(min(m_last + 1, N))
    interp = PchipInterpolator(f.times, f.values, extrapolate=True)
    g = np.zeros(N)
    g[:grid.size] = interp(grid) * np.exp(-a * grid)
    omega = 2.0 * np.pi * np.fft.fftfreq(N, d=delta)
    last = grid.size - 1
    F = delta * (np.fft.fft(g) - 0.5 * g[0]
                 - 0.5 * g[last] * np.exp(-1j * omega * grid[last]))
    # the record may overhang the FFT grid by a fraction of a step
    stub = f.t_end - grid[last]
    if stub > 1e-12 * delta:
        g_end = f.values[-1] * np.exp(-a * f.t_end)
        F += 0.5 * stub * (g[last] * np.exp(-1j * omega * grid[last])
                           + g_end * np.exp(-1j * omega * f.t_end))
    return ComplexSamples(bromwich_frequencies(a, T_window, N), F)


@dataclass(frozen=True)
class InversionResult:
    series: TimeSeries
    imag_residue: float
    residue_ok: bool


def bromwich_frequencies(a: float, T_window: float, N: int) -> np.ndarray:
    """The s grid used by :func:`inverse_laplace_ifft`, in FFT ordering."""
    m = np.fft.fftfreq(N) * N
    return a + 2j * np.pi * m / T_window


def inverse_laplace_ifft(F: Callable[[np.ndarray], np.ndarray], a: float,
                         T_window: float, N: int,
                         residue_tol: float = 1e-8,
                         raise_on_residue: bool = False) -> InversionResult:
    """Invert the transform ``F`` on the line Re s = a over [0, T_window).

    ``F`` is called once with the whole vector of s values.  ``N`` must be a
    power of two.  The (unpaired) Nyquist term is projected to its real part
    so the sum of an exactly conjugate-symmetric transform is real up to
    roundoff; the relative imaginary residue left after that is reported and
    compared with ``residue_tol``.
    """
    if T_window <= 0:
        raise InputError("T_window must be positive")
    if N < 2 or (N & (N - 1)) != 0:
        raise InputError(f"N must be a power of two, got {N}")
    s = bromwich_frequencies(a, T_window, N)
    Fs = np.asarray(F(s), dtype=complex)
    if Fs.shape != s.shape:
        raise InputError("F must return one value per s sample")
    half = N // 2
    Fs = Fs.copy()
    Fs[half] = Fs[half].real  # Nyquist term has no conjugate partner
    t = np.arange(N) * (T_window / N)
    f = (N / T_window) * np.exp(a * t) * np.fft.ifft(Fs)
    scale = float(np.max(np.abs(f.real)))
    residue = float(np.max(np.abs(f.imag)) / scale) if scale > 0 else 0.0
    ok = residue <= residue_tol
    if raise_on_residue and not ok:
        raise LaplaceInversionError(
            f"imaginary residue {residue:.3e} exceeds {residue_tol:.1e}; "
            "pole assumption or aliasing suspect")
    return InversionResult(TimeSeries(0.0, T_window / N, f.real), residue, ok)
