"""Carrier-Greenspan transform machinery.

The transform maps the physical variables (x, t, eta, u) of the shallow
water system on a plane slope to hodograph variables (sigma, tau, psi, phi)
in which the system is linear and the moving shoreline sits at sigma = 0:

    sigma = x + eta,  tau = t - u,  psi = eta + u^2/2,  phi = u.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (BreakingAtShoreError, DomainTooSmallError, InputError)
from .series import TimeSeries, derivative, resample_uniform


@dataclass(frozen=True)
class PhysicalState:
    x: float
    t: float
    eta: float
    u: float


@dataclass(frozen=True)
class HodographState:
    sigma: float
    tau: float
    psi: float
    phi: float


@dataclass(frozen=True)
class Bathymetry:
    """Finite plane slope of dimensionless length L.

    ``sigma_L`` defaults to L: with zero initial data on the interval,
    sigma(L, 0) = L, and for the long-slope scenarios considered here the
    boundary displacement stays negligible.  Override when a recorded
    displacement says otherwise.
    """

    L: float = 1.0
    sigma_L: float | None = None
    alpha: float = 1.0
    H0: float = 5.0
    g: float = 9.81

    def __post_init__(self):
        if self.L <= 0 or self.alpha <= 0 or self.H0 <= 0 or self.g <= 0:
            raise InputError("L, alpha, H0 and g must all be positive")
        if self.sigma_L is None:
            object.__setattr__(self, "sigma_L", self.L)
        if self.sigma_L <= 0:
            raise InputError("sigma_L must be positive")


@dataclass(frozen=True)
class HodographField:
    """psi and phi sampled on a rectangular (sigma, tau) grid."""

    sigma_grid: np.ndarray
    tau_grid: np.ndarray
    psi: np.ndarray = field(repr=False)
    phi: np.ndarray = field(repr=False)

    def __post_init__(self):
        ns, nt = self.sigma_grid.size, self.tau_grid.size
        if self.psi.shape != (ns, nt) or self.phi.shape != (ns, nt):
            raise InputError("psi/phi must be shaped (n_sigma, n_tau)")


def cgt_forward(state: PhysicalState) -> HodographState:
    """Pointwise Carrier-Greenspan transform of a wet physical state."""
    if state.x + state.eta < 0:
        raise InputError(f"dry region: x + eta = {state.x + state.eta} < 0")
    return HodographState(sigma=state.x + state.eta,
                          tau=state.t - state.u,
                          psi=state.eta + 0.5 * state.u**2,
                          phi=state.u)


def cgt_inverse(state: HodographState) -> PhysicalState:
    """Algebraic inverse of :func:`cgt_forward`."""
    u = state.phi
    eta = state.psi - 0.5 * u**2
    return PhysicalState(x=state.sigma - eta, t=state.tau + u, eta=eta, u=u)


def shore_to_hodograph(R: TimeSeries, rest_tol: float = 1e-6) -> TimeSeries:
    """Convert a run-up record R(t) to psi at the shoreline on a uniform tau grid.

    At sigma = 0 the transform reads tau = t + R'(t), psi = R + (R')^2 / 2.
    The non-uniform tau samples are resampled by monotone cubic
    interpolation.  A non-monotone tau(t) means the wave breaks at the
    shore and is rejected.
    """
    Rp = derivative(R)
    tau = R.times + Rp
    if np.any(np.diff(tau) <= 0):
        raise BreakingAtShoreError("tau(t) = t + R'(t) is not strictly increasing")
    psi = R.values + 0.5 * Rp**2
    # a record starting at rest maps to tau ~ 0; snap the grid origin there
    t0 = 0.0 if abs(tau[0]) <= 0.05 * R.dt else None
    out = resample_uniform(tau, psi, t0=t0)
    scale = max(1.0, float(np.max(np.abs(R.values))))
    if (out.t0 == 0.0 and abs(R.values[0]) <= rest_tol * scale
            and abs(Rp[0]) <= rest_tol * scale):
        vals = out.values.copy()
        vals[0] = 0.0
        out = TimeSeries(0.0, out.dt, vals)
    return out


def shore_from_hodograph(psi_sh: TimeSeries, phi_sh: TimeSeries) -> TimeSeries:
    """Inverse of :func:`shore_to_hodograph`: build R(t) from shoreline psi, phi.

    u = phi at the shore, so t = tau + phi and R = eta = psi - phi^2 / 2,
    resampled onto a uniform t grid.
    """
    t = psi_sh.times + phi_sh.values
    if np.any(np.diff(t) <= 0):
        raise BreakingAtShoreError("t(tau) = tau + phi is not strictly increasing")
    R = psi_sh.values - 0.5 * phi_sh.values**2
    return resample_uniform(t, R)


def inverse_cgt_on_gamma(field: HodographField, bathymetry: Bathymetry,
                         boundary_frac_tol: float = 0.01
                         ) -> tuple[TimeSeries, TimeSeries]:
    """Recover (eta, u) at the buoy x = L from a hodograph field.

    For each tau the buoy curve Gamma satisfies
    sigma = L + psi - phi^2/2; the minimizer of
    |sigma - L - psi(sigma, tau) + phi(sigma, tau)^2 / 2| over the sigma grid
    is found by brute force (first minimal index on ties).  Then
    eta = psi - phi^2/2, u = phi and t = tau + phi along Gamma, resampled to
    a uniform t grid.
    """
    L = bathymetry.L
    target = np.abs(field.sigma_grid[:, None] - L - field.psi
                    + 0.5 * field.phi**2)
    idx = np.argmin(target, axis=0)  # first minimum on ties
    cols = np.arange(idx.size)
    dsig = field.sigma_grid[1] - field.sigma_grid[0]
    # a boundary hit only means the curve left the grid if the curve
    # residual there exceeds one grid cell
    exited = ((idx == 0) | (idx == field.sigma_grid.size - 1)) \
        & (target[idx, cols] > dsig)
    n_boundary = int(np.sum(exited))
    if n_boundary > boundary_frac_tol * idx.size:
        raise DomainTooSmallError(
            f"buoy curve leaves the sigma grid for {n_boundary} of "
            f"{idx.size} tau samples")
    psi_g = field.psi[idx, cols]
    phi_g = field.phi[idx, cols]
    eta = psi_g - 0.5 * phi_g**2
    t = field.tau_grid + phi_g
    eta_b = resample_uniform(t, eta)
    u_b = resample_uniform(t, phi_g)
    return eta_b, u_b


@dataclass(frozen=True)
class BreakingReport:
    min_abs_jacobian: float
    breaking: bool
    threshold: float


def breaking_diagnostic(field: HodographField, threshold: float = 1e-3) -> BreakingReport:
    """Minimum |det d(x,t)/d(sigma,tau)| over the interior grid.

    x = sigma - psi + phi^2/2 and t = tau + phi; derivatives by central
    differences.  The transform is invertible (no breaking) while the
    Jacobian stays away from zero.
    """
    # x = sigma + xp, t = tau + phi; differentiating only the perturbation
    # keeps the identity map exact (det = 1 on the zero field).
    xp = 0.5 * field.phi**2 - field.psi
    dsig = field.sigma_grid[1] - field.sigma_grid[0]
    dtau = field.tau_grid[1] - field.tau_grid[0]
    xp_s, xp_t = np.gradient(xp, dsig, dtau, edge_order=1)
    phi_s, phi_t = np.gradient(field.phi, dsig, dtau, edge_order=1)
    det = (1.0 + xp_s) * (1.0 + phi_t) - xp_t * phi_s
    interior = det[1:-1, 1:-1] if det.shape[0] > 2 and det.shape[1] > 2 else det
    min_det = float(np.min(np.abs(interior)))
    return BreakingReport(min_det, min_det < threshold, threshold)


_NSWE_KINDS = ("x", "t", "eta", "u")
_BOUSSINESQ_KINDS = ("x", "t", "eta")


def dimensionalize_nswe(value: float, kind: str, bathymetry: Bathymetry) -> float:
    """Dimensionless shallow-water quantity -> SI units."""
    H0, alpha, g = bathymetry.H0, bathymetry.alpha, bathymetry.g
    if kind == "x":
        return (H0 / alpha) * value
    if kind == "t":
        return np.sqrt(H0 / g) * value / alpha
    if kind == "eta":
        return H0 * value
    if kind == "u":
        return np.sqrt(H0 * g) * value
    raise InputError(f"unknown quantity kind {kind!r}; expected one of {_NSWE_KINDS}")


def dimensionalize_boussinesq(value: float, kind: str, H0: float, g: float) -> float:
    """Dimensionless Boussinesq quantity -> SI units."""
    if kind == "x":
        return (H0 / np.sqrt(3.0)) * value
    if kind == "t":
        return np.sqrt(H0 / (3.0 * g)) * value
    if kind == "eta":
        return 4.0 * H0 * value
    raise InputError(f"unknown quantity kind {kind!r}; expected one of {_BOUSSINESQ_KINDS}")
