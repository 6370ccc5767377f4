"""Acceptance gate: one test per release criterion, one verdict line each.

Each test prints a single "[PASS]/[FAIL] criterion N" line so the verdicts
can be grepped out of the run log, then asserts the same condition.
"""

import time

import numpy as np
import pytest

from runupinv import (Bathymetry, ScenarioConfig, TimeSeries, build_modes,
                      fd_solve_ibvp, invert_runup, recover_psi_b,
                      reconstruct_field, relative_l2, run_scenario,
                      semi_infinite_ivp, shoreline_equation)
from runupinv.hodograph import breaking_diagnostic
from runupinv.modes import duhamel_coefficients
from runupinv.oracle import STANDARD_PROFILES
from runupinv.scenarios import TRUSTED_FRACTION, run_benchmark
from runupinv.series import resample_to_grid

DEFAULT_N_TAU = 1500
DEFAULT_MODES = 500
T_END = 40.0


def _verdict(capfd, number: int, label: str, ok: bool, detail: str = ""):
    # bypass capture so the verdict line lands in the run log under plain -v
    with capfd.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {label}"
              + (f" ({detail})" if detail else ""))
    assert ok, f"criterion {number}: {label} {detail}"


def _trusted_l2(recovered: TimeSeries, exact: TimeSeries) -> float:
    ex = resample_to_grid(exact, recovered)
    n = int(TRUSTED_FRACTION * len(recovered))
    return relative_l2(recovered.values[:n], ex.values[:n])


def test_criterion_1_manufactured_profiles(capfd):
    """Four standard profiles: psi_b and phi_b within 2% on the trusted window."""
    worst = 0.0
    slowest = 0.0
    for name, profile in STANDARD_PROFILES.items():
        tic = time.perf_counter()
        tau = np.linspace(0.0, T_END, DEFAULT_N_TAU)
        sol = semi_infinite_ivp(profile, tau)
        result = invert_runup(sol.R, Bathymetry(L=1.0),
                              n_modes=DEFAULT_MODES)
        elapsed = time.perf_counter() - tic
        psi_err = _trusted_l2(result.psi_b, sol.psi_b_exact)
        phi_err = _trusted_l2(result.phi_b, sol.phi_b_exact)
        worst = max(worst, psi_err, phi_err)
        slowest = max(slowest, elapsed)
    ok = worst < 0.02 and slowest < 300.0
    _verdict(capfd, 1, "manufactured profiles within 2 percent", ok,
             f"worst rel L2 {worst:.2e}, slowest {slowest:.1f} s")


def test_criterion_2_shoreline_roundtrip(capfd):
    """recover_psi_b inverts shoreline_equation within 1% in seconds."""
    tau = np.linspace(0.0, T_END, DEFAULT_N_TAU)
    psi_b = TimeSeries(0.0, float(tau[1] - tau[0]),
                       0.01 * np.exp(-((tau - 10.0) / 2.0) ** 2))
    modes = build_modes(1.0, DEFAULT_MODES)
    psi_sh = shoreline_equation(psi_b, modes, method="oscillator")
    tic = time.perf_counter()
    recovered, diag = recover_psi_b(psi_sh, modes)
    elapsed = time.perf_counter() - tic
    n = int(TRUSTED_FRACTION * len(recovered))
    err = relative_l2(recovered.values[:n], psi_b.values[:n])
    ok = err < 0.01 and diag["residue_ok"] and elapsed < 30.0
    _verdict(capfd, 2, "shoreline equation roundtrip within 1 percent", ok,
             f"rel L2 {err:.2e}, {elapsed:.2f} s")


def test_criterion_3_boussinesq_stitch(tmp_path, capfd):
    """Two-soliton recovery: peaks within 0.2, parameters within 2%."""
    cfg = ScenarioConfig(kind="boussinesq_stitch",
                         out_dir=str(tmp_path / "out"),
                         bathymetry={"L": 200.0},
                         grid={"n_tau": 3000, "t_end": 560.0,
                               "n_modes": 500, "n_sigma": 300})
    summary = run_scenario(cfg)
    peak_disc = max(summary["errors"]["peak_discrepancy"])
    param_rel = max(summary["errors"]["parameter_rel"].values())
    ok = (summary["fit"]["converged"] and peak_disc <= 0.2
          and param_rel < 0.02)
    _verdict(capfd, 3, "boussinesq two-soliton back-track", ok,
             f"peak disc {peak_disc:.3f}, param rel {param_rel:.2e}")


@pytest.mark.parametrize("wave_kind", ["soliton", "n_wave"])
def test_criterion_4_lswe_stitch(tmp_path, wave_kind, capfd):
    """Travelling-wave recovery: features within 0.2, boundary within 2%."""
    cfg = ScenarioConfig(kind="lswe_stitch", out_dir=str(tmp_path / "out"),
                         bathymetry={"L": 200.0},
                         wave={"kind": wave_kind},
                         grid={"n_tau": 3000, "t_end": 160.0,
                               "n_modes": 500, "n_sigma": 300})
    summary = run_scenario(cfg)
    feat_disc = max(summary["errors"]["feature_discrepancy"])
    cropped = summary["errors"]["cropped_l2"]
    ok = (summary["fit"]["converged"] and feat_disc <= 0.2
          and cropped < 0.02)
    _verdict(capfd, 4, f"lswe {wave_kind} back-track", ok,
             f"feature disc {feat_disc:.2e}, cropped rel L2 {cropped:.2e}")


def test_criterion_5_scaling_benchmark(capfd):
    """log-log slope of runtime vs N in [2.4, 3.3]; N = 1500 under 300 s."""
    table = run_benchmark([250, 500, 1000, 2000], repetitions=3)
    slope = table["slope"]

    tau = np.linspace(0.0, T_END, DEFAULT_N_TAU)
    sol = semi_infinite_ivp(STANDARD_PROFILES["gaussian"], tau)
    tic = time.perf_counter()
    invert_runup(sol.R, Bathymetry(L=1.0), n_modes=DEFAULT_MODES,
                 n_sigma=DEFAULT_N_TAU // 2, conv_method="direct")
    elapsed = time.perf_counter() - tic
    ok = 2.4 <= slope <= 3.3 and elapsed <= 300.0
    _verdict(capfd, 5, "runtime scaling", ok,
             f"slope {slope:.2f}, N=1500 run {elapsed:.1f} s")


def test_criterion_6_mode_asymptotics(capfd):
    """Coefficient asymptotics and the Cesaro sum of b_n."""
    modes = build_modes(1.0, 500)
    n = np.arange(1, 501)
    sel = n >= 5
    a_ratio = modes.a[sel] / (n[sel] ** 2 * np.pi**2 / 4.0)
    b_ratio = np.abs(modes.b[sel]) * np.sqrt(n[sel]) / np.sqrt(2.0 * np.pi)
    signs_alternate = bool(np.all(modes.b[:-1] * modes.b[1:] < 0))
    cesaro = float(np.mean(np.cumsum(modes.b)))
    ok = (np.all((a_ratio > 0.5) & (a_ratio < 1.5))
          and np.all((b_ratio > 0.5) & (b_ratio < 1.5))
          and signs_alternate and abs(cesaro + 1.0) < 0.05)
    _verdict(capfd, 6, "mode coefficient asymptotics", ok,
             f"a in [{a_ratio.min():.2f},{a_ratio.max():.2f}], "
             f"b in [{b_ratio.min():.2f},{b_ratio.max():.2f}], "
             f"Cesaro {cesaro:.3f}")


def _spectral_vs_fd(n_sigma: int) -> float:
    tau = np.linspace(0.0, 20.0, 1601)
    psi_b = TimeSeries(0.0, float(tau[1] - tau[0]),
                       np.exp(-((tau - 8.0) / 2.0) ** 2))
    filled = duhamel_coefficients(psi_b, build_modes(1.0, 400),
                                  method="oscillator", compat_tol=1e-3)
    fd = fd_solve_ibvp(psi_b, 1.0, n_sigma)
    spectral = reconstruct_field(filled, psi_b, fd.sigma_grid)
    keep = fd.sigma_grid >= 0.05
    err = np.max(np.abs(fd.psi[keep] - spectral.psi[keep]))
    return float(err / np.max(np.abs(spectral.psi)))


def test_criterion_7_solver_cross_check(capfd):
    """Spectral and FD solvers agree to 1e-2; FD improves at second order."""
    err_fine = _spectral_vs_fd(200)
    err_coarse = _spectral_vs_fd(100)
    ratio = err_coarse / err_fine
    ok = err_fine < 1e-2 and 2.5 < ratio < 6.0
    _verdict(capfd, 7, "independent solver cross-check", ok,
             f"L-inf {err_fine:.2e}, refinement ratio {ratio:.2f}")


def test_criterion_8_zero_record(capfd):
    """Zero run-up maps to zero outputs; unit Jacobian on the zero field."""
    R = TimeSeries(0.0, T_END / (DEFAULT_N_TAU - 1),
                   np.zeros(DEFAULT_N_TAU))
    result = invert_runup(R, Bathymetry(L=1.0), n_modes=100, n_sigma=100)
    peak = max(float(np.max(np.abs(s.values)))
               for s in (result.psi_sh, result.psi_b, result.phi_b,
                         result.eta_b, result.u_b))
    report = breaking_diagnostic(result.field)
    ok = peak <= 1e-9 and report.min_abs_jacobian == 1.0
    _verdict(capfd, 8, "zero record sanity", ok,
             f"max output {peak:.1e}, min |J| {report.min_abs_jacobian}")
