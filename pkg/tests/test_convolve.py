"""Trapezoid-rule causal convolution."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from runupinv import TimeSeries, convolve_causal
from runupinv.errors import GridMismatchError, InputError
from runupinv.signalops import convolve_causal_kernels


def _grid(n=200, T=4.0):
    t = np.linspace(0.0, T, n)
    return t, t[1] - t[0]


def test_constant_times_constant_is_t():
    # (1 * 1)(t) = t; trapezoid is exact for a constant integrand
    t, dt = _grid()
    one = TimeSeries(0.0, dt, np.ones(t.size))
    out = convolve_causal(one, one)
    assert np.max(np.abs(out.values - t)) < 1e-12


def test_ramp_times_constant_is_half_t_squared():
    # (t * 1)(t) = t^2/2; trapezoid is exact for a linear integrand
    t, dt = _grid()
    ramp = TimeSeries(0.0, dt, t)
    one = TimeSeries(0.0, dt, np.ones(t.size))
    out = convolve_causal(ramp, one)
    assert np.max(np.abs(out.values - 0.5 * t**2)) < 1e-12


def test_sine_autoconvolution_second_order():
    # (sin * sin)(t) = (sin t - t cos t) / 2
    errs = []
    for n in (201, 401):
        t, dt = _grid(n)
        f = TimeSeries(0.0, dt, np.sin(t))
        out = convolve_causal(f, f)
        exact = 0.5 * (np.sin(t) - t * np.cos(t))
        errs.append(np.max(np.abs(out.values - exact)))
    assert errs[0] < 1e-4
    assert errs[1] < errs[0] / 3.0


def test_direct_and_fft_agree_to_roundoff():
    rng = np.random.default_rng(7)
    dt = 0.05
    f = TimeSeries(0.0, dt, rng.standard_normal(300))
    g = TimeSeries(0.0, dt, rng.standard_normal(300))
    a = convolve_causal(f, g, method="direct").values
    b = convolve_causal(f, g, method="fft").values
    assert np.max(np.abs(a - b)) < 1e-12 * max(1.0, np.max(np.abs(a)))


def test_causality_preserved():
    # g vanishing before t_on keeps the convolution zero before t_on
    t, dt = _grid(300, 6.0)
    f = TimeSeries(0.0, dt, np.cos(t))
    gv = np.where(t >= 2.0, np.sin(t - 2.0), 0.0)
    out = convolve_causal(f, TimeSeries(0.0, dt, gv))
    assert np.max(np.abs(out.values[t < 2.0])) == 0.0


def test_input_validation():
    f = TimeSeries(0.0, 0.1, np.ones(5))
    with pytest.raises(GridMismatchError):
        convolve_causal(f, TimeSeries(0.0, 0.2, np.ones(5)))
    with pytest.raises(InputError):
        convolve_causal(TimeSeries(1.0, 0.1, np.ones(5)), f)
    with pytest.raises(InputError):
        convolve_causal(f, f, method="nope")


def test_kernels_variant_matches_scalar_variant():
    rng = np.random.default_rng(3)
    dt = 0.02
    g = rng.standard_normal(128)
    kernels = rng.standard_normal((4, 128))
    rows = convolve_causal_kernels(kernels, g, dt)
    for i in range(4):
        single = convolve_causal(TimeSeries(0.0, dt, kernels[i]),
                                 TimeSeries(0.0, dt, g)).values
        assert np.allclose(rows[i], single, atol=1e-13)
    with pytest.raises(InputError):
        convolve_causal_kernels(kernels[:, :64], g, dt)


@given(st.floats(min_value=-3, max_value=3), st.floats(min_value=-3, max_value=3),
       st.integers(min_value=0, max_value=9))
@settings(max_examples=25, deadline=None)
def test_bilinearity_and_commutativity(alpha, beta, seed):
    rng = np.random.default_rng(seed)
    dt = 0.1
    f1 = TimeSeries(0.0, dt, rng.standard_normal(64))
    f2 = TimeSeries(0.0, dt, rng.standard_normal(64))
    g = TimeSeries(0.0, dt, rng.standard_normal(64))
    lhs = convolve_causal(
        TimeSeries(0.0, dt, alpha * f1.values + beta * f2.values), g).values
    rhs = (alpha * convolve_causal(f1, g).values
           + beta * convolve_causal(f2, g).values)
    assert np.allclose(lhs, rhs, atol=1e-10)
    assert np.allclose(convolve_causal(f1, g).values,
                       convolve_causal(g, f1).values, atol=1e-12)
