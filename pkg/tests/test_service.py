"""HTTP service: endpoints, payload validation, error mapping."""

import numpy as np
import pytest
from fastapi.testclient import TestClient

from runupinv import TimeSeries, TravellingWaveSpec, lswe_boundary
from runupinv import __version__
from runupinv.service.app import create_app


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app())


def _payload(series: TimeSeries) -> dict:
    return {"t0": float(series.t0), "dt": float(series.dt),
            "values": [float(v) for v in series.values]}


def _small_record(amplitude=1e-3, n=400, t_end=40.0):
    t = np.linspace(0.0, t_end, n)
    return TimeSeries(0.0, t[1] - t[0],
                      amplitude * np.exp(-((t - 10.0) / 2.0) ** 2))


def test_health(client):
    resp = client.get("/health")
    assert resp.status_code == 200
    assert resp.json() == {"status": "ok", "version": __version__}


def test_invert_small_record(client):
    record = _small_record()
    resp = client.post("/invert", json={
        "runup": _payload(record), "n_modes": 80, "n_sigma": 64})
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == {"psi_sh", "psi_b", "phi_b", "eta_b", "u_b",
                         "diagnostics"}
    assert len(body["psi_b"]["values"]) == len(record)
    diag = body["diagnostics"]
    assert diag["residue_ok"] is True
    assert diag["breaking"] is False
    assert diag["runtime_s"] > 0.0
    # at this amplitude the recovered boundary signal is small but nonzero
    peak = max(abs(v) for v in body["psi_b"]["values"])
    assert 1e-5 < peak < 1e-2


def test_invert_scales_linearly(client):
    # the shoreline transform carries quadratic terms (R'^2/2 and the tau
    # shift), so doubling the record doubles psi_b only up to O(amplitude^2)
    record = _small_record()
    one = client.post("/invert", json={
        "runup": _payload(record), "n_modes": 60, "n_sigma": 64}).json()
    two = client.post("/invert", json={
        "runup": _payload(record.with_values(2.0 * record.values)),
        "n_modes": 60, "n_sigma": 64}).json()
    a = np.array(one["psi_b"]["values"])
    b = np.array(two["psi_b"]["values"])
    assert np.max(np.abs(b - 2.0 * a)) < 1e-3 * np.max(np.abs(a))


def test_forward_endpoint(client):
    record = _small_record()
    resp = client.post("/forward", json={
        "psi_b": _payload(record), "sigma_L": 1.0, "n_modes": 100})
    assert resp.status_code == 200
    body = resp.json()
    assert set(body) == {"psi_sh", "phi_sh", "runup"}
    runup = np.array(body["runup"]["values"])
    assert np.max(np.abs(runup)) > 1e-4
    assert len(runup) == len(record)


def test_schema_validation_is_422(client):
    # pydantic-level rejection: dt must be positive
    resp = client.post("/invert", json={
        "runup": {"t0": 0.0, "dt": -0.1, "values": [0.0, 1.0]}})
    assert resp.status_code == 422
    # unknown fields are forbidden
    resp = client.post("/invert", json={
        "runup": _payload(_small_record(n=64)), "bogus": 1})
    assert resp.status_code == 422


def test_missing_guess_is_validation_error(client):
    resp = client.post("/fit-solitons", json={
        "series": _payload(_small_record(n=64)), "L": 200.0,
        "model": "boussinesq"})
    assert resp.status_code == 422
    body = resp.json()
    assert body["kind"] == "validation"
    assert "soliton_guess" in body["message"]
    resp = client.post("/fit-solitons", json={
        "series": _payload(_small_record(n=64)), "L": 200.0, "model": "lswe"})
    assert resp.status_code == 422
    assert resp.json()["kind"] == "validation"


def test_breaking_record_is_409_with_stage(client):
    t = np.linspace(0.0, 20.0, 400)
    breaking = TimeSeries(0.0, t[1] - t[0], 2.0 * np.sin(t))
    resp = client.post("/invert", json={"runup": _payload(breaking),
                                        "n_modes": 20, "n_sigma": 32})
    assert resp.status_code == 409
    body = resp.json()
    assert body["kind"] == "numerical"
    assert body["stage"] == "shore_to_hodograph"


def test_fit_solitons_lswe_roundtrip(client):
    truth = TravellingWaveSpec(kind="n_wave", c=4.0, width=25.0)
    t = np.linspace(0.0, 160.0, 4000)
    series = lswe_boundary(truth, 200.0, t)
    resp = client.post("/fit-solitons", json={
        "series": _payload(series), "L": 200.0, "model": "lswe",
        "crop_lo": 20.0, "crop_hi": 110.0, "t_event": -100.0,
        "wave_guess": {"kind": "n_wave", "c": 4.0, "width": 25.0,
                       "offsets": [112.0, 80.0], "amplitudes": [0.8, -0.6]}})
    assert resp.status_code == 200
    body = resp.json()
    assert body["converged"] is True
    assert np.allclose(body["parameters"]["offsets"], truth.offsets,
                       atol=1e-3)
    # positions at t_event = -100: x = c (t0 - t_event)
    assert body["positions"] == pytest.approx(
        [4.0 * (o + 100.0) for o in truth.offsets], abs=1e-2)


def test_scenario_endpoint(client, tmp_path):
    resp = client.post("/scenario", json={"config": {
        "kind": "roundtrip", "out_dir": str(tmp_path / "out"),
        "grid": {"n_tau": 600, "n_modes": 150, "t_end": 40.0}}})
    assert resp.status_code == 200
    summary = resp.json()["summary"]
    assert summary["errors"]["psi_b_l2"] < 0.01
    assert (tmp_path / "out" / "summary.json").exists()


def test_benchmark_endpoint(client):
    resp = client.post("/benchmark", json={
        "n_list": [60, 120, 240], "modes_ref": 40, "n_tau_ref": 240,
        "repetitions": 1, "t_end": 20.0})
    assert resp.status_code == 200
    body = resp.json()
    assert body["n_list"] == [60, 120, 240]
    assert len(body["times_s"]) == 3
    assert body["repetitions"] == 1
