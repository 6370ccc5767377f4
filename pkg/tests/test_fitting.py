"""Levenberg-Marquardt wrapper."""

import numpy as np

from runupinv import least_squares


def _sech2(p, t):
    A, a, b = p
    return A / np.cosh(a * t - b) ** 2


def test_recovers_sech2_parameters_exactly():
    t = np.linspace(0.0, 20.0, 400)
    truth = np.array([0.8, 0.5, 5.0])
    data = _sech2(truth, t)
    fit = least_squares(lambda p: _sech2(p, t) - data, [0.6, 0.4, 4.0])
    assert fit.converged
    assert np.max(np.abs(fit.parameters - truth)) < 1e-8
    assert fit.residual_norm < 1e-10
    assert fit.iterations > 0


def test_noisy_fit_recovers_within_noise_level():
    rng = np.random.default_rng(11)
    t = np.linspace(0.0, 20.0, 400)
    truth = np.array([0.8, 0.5, 5.0])
    data = _sech2(truth, t) + 0.01 * rng.standard_normal(t.size)
    fit = least_squares(lambda p: _sech2(p, t) - data, [0.7, 0.45, 4.5])
    assert fit.converged
    assert np.max(np.abs(fit.parameters - truth) / truth) < 0.05


def test_non_convergence_is_reported_not_raised():
    t = np.linspace(0.0, 20.0, 50)
    data = _sech2([0.8, 0.5, 5.0], t)
    fit = least_squares(lambda p: _sech2(p, t) - data, [0.1, 0.1, 0.1],
                        max_nfev=2)
    assert not fit.converged
