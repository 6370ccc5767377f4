"""Nonlinear least squares with a Levenberg-Marquardt contract."""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np
from scipy import optimize

from .series import FitResult


def least_squares(residual: Callable[[np.ndarray], np.ndarray],
                  initial_guess: Sequence[float],
                  xtol: float = 1e-12, ftol: float = 1e-12, gtol: float = 1e-12,
                  max_nfev: int | None = None) -> FitResult:
    """Locally minimize the root-sum-square of ``residual`` from ``initial_guess``.

    Damped Gauss-Newton (Levenberg-Marquardt).  Non-convergence is reported
    through ``converged``, never silently.
    """
    x0 = np.asarray(initial_guess, dtype=float)
    res = optimize.least_squares(residual, x0, method="lm",
                                 xtol=xtol, ftol=ftol, gtol=gtol,
                                 max_nfev=max_nfev)
    return FitResult(parameters=res.x,
                     residual_norm=float(np.linalg.norm(res.fun)),
                     iterations=int(res.nfev),
                     converged=bool(res.status > 0))
