"""Spectral forward solver on the hodograph interval [0, sigma_L].

The linear hodograph system with boundary data psi_b at sigma = sigma_L is
diagonalized by the Fourier-Bessel basis J0(j_n sqrt(sigma/sigma_L)).  Each
mode obeys a forced oscillator whose Duhamel solution is a sine-kernel
convolution with psi_b'':

    c_n(tau) = (b_n / sqrt(a_n)) (sin(sqrt(a_n) .) * psi_b'')(tau),
    a_n = j_n^2 / (4 sigma_L),   b_n = -2 / (j_n J1(j_n)),

with d_n the running integral of c_n.  The field is then

    psi(sigma, tau) = sum_n c_n J0(j_n r) + psi_b,
    phi(sigma, tau) = (1 / (2 sigma_L)) sqrt(sigma_L / sigma)
                      * sum_n j_n d_n J1(j_n r),        r = sqrt(sigma/sigma_L),

and the shoreline signal is psi_sh = psi(0, .) = sum_n c_n + psi_b.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .bessel import bessel_j, bessel_j0_roots
from .errors import CompatibilityError, InputError
from .hodograph import HodographField
from .series import TimeSeries, derivative, second_derivative
from .signalops import convolve_causal_kernels


@dataclass(frozen=True)
class ModeSet:
    """Truncated Fourier-Bessel mode data for a given interval length."""

    sigma_L: float
    n_modes: int
    j: np.ndarray = field(repr=False)
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    tau: np.ndarray | None = field(default=None, repr=False)
    c: np.ndarray | None = field(default=None, repr=False)  # (n_modes, n_tau)
    d: np.ndarray | None = field(default=None, repr=False)

    @property
    def has_coefficients(self) -> bool:
        return self.c is not None and self.d is not None


def build_modes(sigma_L: float, n_modes: int) -> ModeSet:
    """Roots and series constants; time-dependent coefficients left empty."""
    if sigma_L <= 0:
        raise InputError("sigma_L must be positive")
    if n_modes < 1:
        raise InputError("n_modes must be >= 1")
    j = bessel_j0_roots(n_modes)
    a = j**2 / (4.0 * sigma_L)
    b = -2.0 / (j * bessel_j(1, j))
    return ModeSet(sigma_L=sigma_L, n_modes=n_modes, j=j, a=a, b=b)


def check_compatibility(psi_b: TimeSeries, tol: float = 1e-8) -> None:
    """Require psi_b(0) = psi_b'(0) = 0 within ``tol`` (relative to signal size)."""
    scale = max(1.0, float(np.max(np.abs(psi_b.values))))
    p0 = abs(psi_b.values[0])
    d0 = abs(derivative(psi_b)[0]) * max(psi_b.dt, 1.0)
    if p0 > tol * scale or d0 > tol * scale:
        raise CompatibilityError(
            f"boundary data violates psi_b(0) = psi_b'(0) = 0: "
            f"|psi_b(0)| = {p0:.3e}, |psi_b'(0)|*dt = {d0:.3e} (tol {tol:.1e})")


def _oscillator_coefficients(modes: ModeSet, w: np.ndarray, dt: float):
    """Exact propagation of c_n'' + a_n c_n = b_n w with piecewise-linear w.

    Integrates each mode oscillator (and its running integral d_n) in closed
    form over every step, so under-resolved high-frequency modes still
    contribute their correct smooth part.  O(n_modes * n_tau).
    """
    om = np.sqrt(modes.a)
    h = dt
    z = om * h
    cz, sz = np.cos(z), np.sin(z)
    small = z < 1e-3
    one_m_cos = np.where(small, z**2 / 2 - z**4 / 24, 1.0 - cz)
    z_m_sin = np.where(small, z**3 / 6 - z**5 / 120, z - sz)
    # response to constant and ramp parts of the forcing over one step
    rc_c = one_m_cos / modes.a                      # c from constant u
    rr_c = z_m_sin / (modes.a * om * h)             # c from ramp (u1 - u0)
    rc_v = sz / om                                  # velocity from constant
    rr_v = one_m_cos / (modes.a * h)                # velocity from ramp
    # step integrals of the response (for d_n)
    ic_c = (h - sz / om) / modes.a
    int_z_m_sin = np.where(small, z**3 * h / 24 - z**5 * h / 720,
                           om * h**2 / 2 + (cz - 1.0) / om)
    ir_c = int_z_m_sin / (modes.a * om * h)

    n_modes, n_tau = modes.a.size, w.size
    c = np.zeros((n_modes, n_tau))
    d = np.zeros((n_modes, n_tau))
    ck = np.zeros(n_modes)
    vk = np.zeros(n_modes)
    dk = np.zeros(n_modes)
    for k in range(n_tau - 1):
        u0 = w[k]
        du = w[k + 1] - u0
        dk = dk + ck * sz / om + vk * one_m_cos / modes.a \
            + modes.b * (u0 * ic_c + du * ir_c)
        ck, vk = (ck * cz + vk * sz / om + modes.b * (u0 * rc_c + du * rr_c),
                  -ck * om * sz + vk * cz + modes.b * (u0 * rc_v + du * rr_v))
        c[:, k + 1] = ck
        d[:, k + 1] = dk
    return c, d


def duhamel_coefficients(psi_b: TimeSeries, modes: ModeSet,
                         method: str = "direct",
                         compat_tol: float = 1e-8) -> ModeSet:
    """Fill c_n(tau) and d_n(tau) for the given boundary data.

    ``method``: "direct" (O(N^2) trapezoid convolutions, the reference
    path), "fft" (same quadrature, fast), or "oscillator" (exact per-step
    propagation of the mode ODEs; accurate for modes the tau grid cannot
    resolve).
    """
    check_compatibility(psi_b, compat_tol)
    if abs(psi_b.t0) > 1e-12 * psi_b.dt:
        raise InputError("boundary data must start at tau = 0")
    w = second_derivative(psi_b)
    tau = psi_b.times
    if method == "oscillator":
        c, d = _oscillator_coefficients(modes, w, psi_b.dt)
    else:
        kernels = np.sin(np.sqrt(modes.a)[:, None] * tau[None, :])
        conv = convolve_causal_kernels(kernels, w, psi_b.dt, method=method)
        c = (modes.b / np.sqrt(modes.a))[:, None] * conv
        d = cumulative_trapezoid(c, dx=psi_b.dt, axis=1, initial=0.0)
    return replace(modes, tau=tau, c=c, d=d)


def _basis_matrices(modes: ModeSet, sigma_grid: np.ndarray):
    """J0 matrix for psi and the (limit-aware) weight matrix for phi."""
    rho = np.sqrt(np.clip(sigma_grid, 0.0, None) / modes.sigma_L)
    arg = np.outer(rho, modes.j)  # (n_sigma, n_modes)
    B0 = bessel_j(0, arg)
    W = np.empty_like(B0)
    pos = sigma_grid > 0
    if np.any(pos):
        W[pos] = (bessel_j(1, arg[pos]) * modes.j[None, :]
                  / (2.0 * modes.sigma_L)
                  * np.sqrt(modes.sigma_L / sigma_grid[pos])[:, None])
    # sigma -> 0 limit of each summand: J1(z) ~ z/2 gives a_n as the weight
    W[~pos] = modes.a[None, :]
    return B0, W


def reconstruct_field(modes: ModeSet, psi_b: TimeSeries,
                      sigma_grid: np.ndarray) -> HodographField:
    """Evaluate psi and phi on a (sigma, tau) grid from filled coefficients."""
    if not modes.has_coefficients:
        raise InputError("mode coefficients are empty; run duhamel_coefficients first")
    sigma_grid = np.asarray(sigma_grid, dtype=float)
    B0, W = _basis_matrices(modes, sigma_grid)
    psi = B0 @ modes.c + psi_b.values[None, :]
    phi = W @ modes.d
    return HodographField(sigma_grid=sigma_grid, tau_grid=modes.tau,
                          psi=psi, phi=phi)


def shoreline_equation(psi_b: TimeSeries, modes: ModeSet,
                       method: str = "direct",
                       compat_tol: float = 1e-8) -> TimeSeries:
    """Forward map psi_b -> psi_sh (truncated mode sum at the shoreline)."""
    filled = modes if modes.has_coefficients else duhamel_coefficients(
        psi_b, modes, method=method, compat_tol=compat_tol)
    return psi_b.with_values(filled.c.sum(axis=0) + psi_b.values)


def boundary_velocity(modes: ModeSet) -> TimeSeries:
    """phi(sigma_L, tau) = (1 / (2 sigma_L)) sum_n j_n d_n(tau) J1(j_n)."""
    if not modes.has_coefficients:
        raise InputError("mode coefficients are empty; run duhamel_coefficients first")
    weights = modes.j * bessel_j(1, modes.j) / (2.0 * modes.sigma_L)
    dt = modes.tau[1] - modes.tau[0]
    return TimeSeries(float(modes.tau[0]), float(dt), weights @ modes.d)


def shoreline_velocity(modes: ModeSet) -> TimeSeries:
    """phi(0, tau) = sum_n a_n d_n(tau) (the sigma -> 0 limit of the phi series)."""
    if not modes.has_coefficients:
        raise InputError("mode coefficients are empty; run duhamel_coefficients first")
    dt = modes.tau[1] - modes.tau[0]
    return TimeSeries(float(modes.tau[0]), float(dt), modes.a @ modes.d)
