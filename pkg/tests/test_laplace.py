"""Finite-window Laplace transform and Bromwich-FFT inversion."""

import numpy as np
import pytest

from runupinv import TimeSeries, laplace_forward, laplace_forward_bromwich
from runupinv.errors import InputError, LaplaceInversionError
from runupinv.laplace import bromwich_frequencies, inverse_laplace_ifft


def _exp_series(T=20.0, n=4001):
    t = np.linspace(0.0, T, n)
    return TimeSeries(0.0, t[1] - t[0], np.exp(-t))


def test_forward_matches_closed_form_exponential():
    # int_0^T e^{-t} e^{-st} dt = (1 - e^{-(s+1)T}) / (s + 1)
    f = _exp_series()
    s = 0.3 + 1j * np.linspace(-5.0, 5.0, 21)
    F = laplace_forward(f, s).F_values
    exact = (1.0 - np.exp(-(s + 1.0) * f.t_end)) / (s + 1.0)
    # trapezoid rule is second order in dt
    assert np.max(np.abs(F - exact)) < 5.0 * f.dt**2


def test_forward_requires_t0_zero_and_vertical_line():
    f = TimeSeries(1.0, 0.1, np.ones(10))
    with pytest.raises(InputError):
        laplace_forward(f, np.array([1.0 + 0j]))
    g = TimeSeries(0.0, 0.1, np.ones(10))
    with pytest.raises(InputError):
        laplace_forward(g, np.array([1.0 + 0j, 2.0 + 0j]))


def test_forward_linearity():
    t = np.linspace(0.0, 5.0, 200)
    dt = t[1] - t[0]
    f = TimeSeries(0.0, dt, np.sin(t))
    g = TimeSeries(0.0, dt, np.cos(3.0 * t))
    s = 0.5 + 1j * np.linspace(-3, 3, 7)
    Fsum = laplace_forward(TimeSeries(0.0, dt, 2.0 * f.values - g.values), s)
    assert np.allclose(Fsum.F_values,
                       2.0 * laplace_forward(f, s).F_values
                       - laplace_forward(g, s).F_values, atol=1e-14)


def test_bromwich_fast_path_matches_dense_forward():
    # smooth pulse sampled on a grid commensurate with the FFT grid
    T_window, N, a = 40.0, 1024, 0.15
    t = np.arange(0.0, 20.0 + 1e-9, T_window / N)
    f = TimeSeries(0.0, t[1] - t[0], np.exp(-((t - 8.0) / 2.0) ** 2))
    s = bromwich_frequencies(a, T_window, N)
    dense = laplace_forward(f, s).F_values
    fast = laplace_forward_bromwich(f, a, T_window, N).F_values
    scale = np.max(np.abs(dense))
    assert np.max(np.abs(fast - dense)) < 1e-10 * scale


def test_bromwich_forward_validates_inputs():
    f = TimeSeries(0.0, 0.1, np.ones(10))
    with pytest.raises(InputError):
        laplace_forward_bromwich(f, 0.1, 10.0, 100)  # not a power of two
    with pytest.raises(InputError):
        laplace_forward_bromwich(TimeSeries(1.0, 0.1, np.ones(10)),
                                 0.1, 10.0, 128)


def test_bromwich_frequencies_layout():
    s = bromwich_frequencies(0.25, 10.0, 8)
    assert np.allclose(s.real, 0.25)
    assert s[0].imag == 0.0
    assert s[1].imag == pytest.approx(2.0 * np.pi / 10.0)
    assert s[4].imag == pytest.approx(-8.0 * np.pi / 10.0)  # Nyquist (fft order)


def test_inverse_recovers_exponential():
    # F(s) = 1/(s + 1)  <->  f(t) = e^{-t}.  The jump at t = 0 leaves Gibbs
    # ringing in a small initial neighborhood, which is excluded.
    T_window, N, a = 20.0, 1 << 18, 0.1
    inv = inverse_laplace_ifft(lambda s: 1.0 / (s + 1.0), a, T_window, N)
    assert inv.residue_ok
    t = inv.series.times
    mask = (t > 0.1) & (t <= 0.5 * T_window)
    err = np.max(np.abs(inv.series.values[mask] - np.exp(-t[mask])))
    assert err < 1e-4


def test_inverse_recovers_t_exponential():
    # F(s) = 1/(s + 1.5)^2  <->  t e^{-1.5 t}: continuous at t = 0, so the
    # whole first half-window meets the tolerance
    T_window, N, a = 20.0, 1 << 18, 0.1
    inv = inverse_laplace_ifft(lambda s: 1.0 / (s + 1.5) ** 2, a, T_window, N)
    t = inv.series.times
    mask = (t > 0) & (t <= 0.5 * T_window)
    exact = t[mask] * np.exp(-1.5 * t[mask])
    err = np.max(np.abs(inv.series.values[mask] - exact)) / np.max(exact)
    assert err < 1e-4


def test_inverse_recovers_damped_cosine():
    # F(s) = (s + 1) / ((s + 1)^2 + 4)  <->  e^{-t} cos(2t)
    T_window, N, a = 20.0, 1 << 18, 0.1
    inv = inverse_laplace_ifft(lambda s: (s + 1.0) / ((s + 1.0) ** 2 + 4.0),
                               a, T_window, N)
    t = inv.series.times
    mask = (t > 0.1) & (t <= 0.5 * T_window)
    err = np.max(np.abs(inv.series.values[mask]
                        - np.exp(-t[mask]) * np.cos(2.0 * t[mask])))
    assert err < 1e-4


def test_forward_then_inverse_roundtrip_smooth_pulse():
    T_window, N = 40.0, 1 << 13
    a = 6.0 / T_window
    t = np.linspace(0.0, 20.0, 1500)
    f = TimeSeries(0.0, t[1] - t[0], np.exp(-((t - 8.0) / 2.0) ** 2))
    F = laplace_forward_bromwich(f, a, T_window, N).F_values
    inv = inverse_laplace_ifft(lambda s: F, a, T_window, N)
    rec = np.interp(t, inv.series.times, inv.series.values)
    assert np.max(np.abs(rec - f.values)) < 1e-5 * np.max(np.abs(f.values))


def test_inverse_linearity():
    T_window, N = 10.0, 1 << 10
    a = 0.6
    F1 = lambda s: 1.0 / (s + 1.0)          # noqa: E731
    F2 = lambda s: 1.0 / (s + 2.0) ** 2     # noqa: E731
    combo = inverse_laplace_ifft(lambda s: 3.0 * F1(s) - F2(s), a, T_window, N)
    f1 = inverse_laplace_ifft(F1, a, T_window, N)
    f2 = inverse_laplace_ifft(F2, a, T_window, N)
    assert np.allclose(combo.series.values,
                       3.0 * f1.series.values - f2.series.values, atol=1e-12)


def test_residue_flags_asymmetric_transform():
    # a transform without conjugate symmetry cannot come from a real signal
    inv = inverse_laplace_ifft(lambda s: 1.0 / (s + 1.0) + 0.5j,
                               0.6, 10.0, 1 << 10)
    assert not inv.residue_ok
    with pytest.raises(LaplaceInversionError):
        inverse_laplace_ifft(lambda s: 1.0 / (s + 1.0) + 0.5j,
                             0.6, 10.0, 1 << 10, raise_on_residue=True)


def test_inverse_validates_inputs():
    with pytest.raises(InputError):
        inverse_laplace_ifft(lambda s: s, 0.5, -1.0, 64)
    with pytest.raises(InputError):
        inverse_laplace_ifft(lambda s: s, 0.5, 1.0, 100)
    with pytest.raises(InputError):
        inverse_laplace_ifft(lambda s: np.ones(3), 0.5, 1.0, 64)
