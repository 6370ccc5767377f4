"""Shared fixtures: expensive oracle solutions computed once per session."""

import numpy as np
import pytest

from runupinv import TimeSeries, semi_infinite_ivp
from runupinv.oracle import STANDARD_PROFILES


@pytest.fixture(scope="session")
def gaussian_oracle():
    """Semi-infinite oracle for the standard gaussian profile, T = 40."""
    tau = np.linspace(0.0, 40.0, 1500)
    return semi_infinite_ivp(STANDARD_PROFILES["gaussian"], tau)


@pytest.fixture(scope="session")
def smooth_psi_b():
    """A compatible smooth boundary pulse on [0, 40]."""
    tau = np.linspace(0.0, 40.0, 1500)
    vals = 0.01 * np.exp(-((tau - 10.0) / 2.0) ** 2)
    return TimeSeries(0.0, float(tau[1] - tau[0]), vals)
