"""Causal convolution quadrature on a shared uniform grid."""

from __future__ import annotations

import numpy as np
from scipy.signal import fftconvolve

from .errors import InputError
from .series import TimeSeries, check_same_grid


def convolve_causal(f: TimeSeries, g: TimeSeries, method: str = "direct") -> TimeSeries:
    """Trapezoid-rule causal convolution (f*g)(t_k) = int_0^{t_k} f g(t_k - .).

    Both inputs must start at 0 and share dt.  ``method`` selects the plain
    O(N^2) sum or an FFT fast path; the two agree to roundoff.
    """
    check_same_grid(f, g)
    if abs(f.t0) > 1e-12 * f.dt or abs(g.t0) > 1e-12 * g.dt:
        raise InputError("both signals must start at t = 0")
    n = min(len(f), len(g))
    fv, gv = f.values[:n], g.values[:n]
    if method == "direct":
        raw = np.convolve(fv, gv)[:n]
    elif method == "fft":
        raw = fftconvolve(fv, gv)[:n]
    else:
        raise InputError(f"unknown convolution method {method!r}")
    # trapezoid endpoint correction: halve the j=0 and j=k terms
    corrected = f.dt * (raw - 0.5 * (fv[0] * gv + fv * gv[0]))
    return TimeSeries(0.0, f.dt, corrected)


def convolve_causal_kernels(kernels: np.ndarray, g: np.ndarray, dt: float,
                            method: str = "direct") -> np.ndarray:
    """Row-wise :func:`convolve_causal` of many kernels against one signal.

    ``kernels`` is (n_kernels, n); ``g`` is (n,); both sampled from t = 0.
    """
    kernels = np.asarray(kernels, dtype=float)
    g = np.asarray(g, dtype=float)
    n = g.size
    if kernels.ndim != 2 or kernels.shape[1] != n:
        raise InputError("kernel rows must match the signal length")
    if method == "direct":
        raw = np.empty_like(kernels)
        for i in range(kernels.shape[0]):
            raw[i] = np.convolve(kernels[i], g)[:n]
    elif method == "fft":
        raw = fftconvolve(kernels, g[None, :], axes=1)[:, :n]
    else:
        raise InputError(f"unknown convolution method {method!r}")
    return dt * (raw - 0.5 * (np.outer(kernels[:, 0], g) + kernels * g[0]))
