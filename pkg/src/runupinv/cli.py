"""Command-line interface.

A thin client over the HTTP service: by default the service app runs
in-process (no network), while ``--server URL`` targets a remote instance.
Exit codes: 0 success, 2 validation error, 3 numerical-diagnostic failure.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click
import httpx
import numpy as np

from .csvio import read_series_csv, write_series_csv, write_summary
from .errors import InputError, NumericalDiagnosticError, StageError
from .scenarios import load_scenario_config
from .series import TimeSeries, resample_to_grid

EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


class ServiceClient:
    """POSTs to the service, in-process by default."""

    def __init__(self, server: str | None = None):
        if server:
            self._client = httpx.Client(base_url=server, timeout=600.0)
        else:
            import warnings
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .service import create_app
            self._client = TestClient(create_app(),
                                      raise_server_exceptions=False)

    def post(self, path: str, payload: dict) -> dict:
        response = self._client.post(path, json=payload)
        if response.status_code in (422, 409):
            body = response.json()
            message = (body.get("message") or json.dumps(body.get("detail"))
                       if isinstance(body, dict) else response.text)
            click.echo(f"error: {message}", err=True)
            sys.exit(EXIT_VALIDATION if response.status_code == 422
                     else EXIT_NUMERICAL)
        response.raise_for_status()
        return response.json()


def _fail_validation(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_VALIDATION)


def _fail_numerical(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_NUMERICAL)


def _guard(fn, *args, **kwargs):
    """Run a local library call with CLI error mapping."""
    try:
        return fn(*args, **kwargs)
    except StageError as exc:
        if isinstance(exc.cause, (InputError, ValueError)):
            _fail_validation(str(exc))
        _fail_numerical(str(exc))
    except NumericalDiagnosticError as exc:
        _fail_numerical(str(exc))
    except (InputError, ValueError) as exc:
        _fail_validation(str(exc))


def _load_series(path: str, tau_points: int | None) -> TimeSeries:
    series, _ = _guard(read_series_csv, path)
    if tau_points is not None and tau_points != len(series):
        grid = np.linspace(series.t0, series.t_end, tau_points)
        series = resample_to_grid(series, grid)
    return series


def _series_payload(series: TimeSeries) -> dict:
    return {"t0": float(series.t0), "dt": float(series.dt),
            "values": [float(v) for v in series.values]}


def _payload_series(payload: dict) -> TimeSeries:
    return TimeSeries(payload["t0"], payload["dt"],
                      np.asarray(payload["values"]))


def _out_dir(path: str) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


server_option = click.option("--server", default=None,
                             help="URL of a running service; default runs in-process.")


@click.group()
def main():
    """Recover offshore wave fields from shoreline run-up records."""


@main.command()
@click.argument("runup_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--sigma-l", type=float, default=None,
              help="Hodograph interval length (defaults to the slope length).")
@click.option("--length", "-L", "length", type=float, default=None,
              help="Dimensionless slope length L (default 1, or sigma-l if given).")
@click.option("--modes", type=int, default=500, show_default=True)
@click.option("--tau-points", type=int, default=1500, show_default=True,
              help="Resample the record to this many samples.")
@click.option("--bromwich-a", type=float, default=None,
              help="Damping abscissa of the Bromwich line (default 6/T_window).")
@click.option("--n-sigma", type=int, default=300, show_default=True)
@click.option("--conv-method", type=click.Choice(["direct", "fft", "oscillator"]),
              default="oscillator", show_default=True)
@click.option("--out-dir", default="out", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@server_option
def invert(runup_csv, sigma_l, length, modes, tau_points, bromwich_a,
           n_sigma, conv_method, out_dir, seed, server):
    """Run-up CSV -> recovered boundary series CSVs."""
    series = _load_series(runup_csv, tau_points)
    L = length if length is not None else (sigma_l if sigma_l is not None else 1.0)
    payload = {
        "runup": _series_payload(series),
        "bathymetry": {"L": L, "sigma_L": sigma_l},
        "inversion": {"bromwich_a": bromwich_a},
        "n_modes": modes,
        "n_sigma": n_sigma,
        "conv_method": conv_method,
    }
    body = ServiceClient(server).post("/invert", payload)
    out = _out_dir(out_dir)
    for name in ("psi_sh", "psi_b", "phi_b", "eta_b", "u_b"):
        write_series_csv(out / f"{name}.csv", _payload_series(body[name]))
    write_summary(out / "summary.json",
                  {"diagnostics": body["diagnostics"], "seed": seed})
    click.echo(f"wrote recovered series to {out}")


@main.command()
@click.argument("psi_b_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--sigma-l", type=float, default=1.0, show_default=True)
@click.option("--modes", type=int, default=500, show_default=True)
@click.option("--tau-points", type=int, default=1500, show_default=True)
@click.option("--conv-method", type=click.Choice(["direct", "fft", "oscillator"]),
              default="oscillator", show_default=True)
@click.option("--out-dir", default="out", show_default=True)
@server_option
def forward(psi_b_csv, sigma_l, modes, tau_points, conv_method, out_dir, server):
    """Boundary psi_b CSV -> shoreline signal and run-up CSVs."""
    series = _load_series(psi_b_csv, tau_points)
    payload = {
        "psi_b": _series_payload(series),
        "sigma_L": sigma_l,
        "n_modes": modes,
        "conv_method": conv_method,
    }
    body = ServiceClient(server).post("/forward", payload)
    out = _out_dir(out_dir)
    write_series_csv(out / "psi_shore.csv", _payload_series(body["psi_sh"]),
                     abscissa="tau")
    write_series_csv(out / "phi_shore.csv", _payload_series(body["phi_sh"]),
                     abscissa="tau")
    write_series_csv(out / "runup.csv", _payload_series(body["runup"]))
    click.echo(f"wrote shoreline series to {out}")


@main.command()
@click.argument("config_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out-dir", default=None, help="Override the config's out_dir.")
@click.option("--seed", type=int, default=None, help="Override the config's seed.")
@server_option
def scenario(config_file, out_dir, seed, server):
    """Run a scenario described by a YAML config file."""
    config = _guard(load_scenario_config, config_file)
    if out_dir is not None:
        config = config.model_copy(update={"out_dir": out_dir})
    if seed is not None:
        config = config.model_copy(update={"seed": seed})
    body = ServiceClient(server).post(
        "/scenario", {"config": config.model_dump()})
    click.echo(json.dumps(body["summary"], indent=2, sort_keys=True))


@main.command()
@click.option("--sizes", default="250,500,1000,2000", show_default=True,
              help="Comma-separated list of grid sizes N.")
@click.option("--modes", type=int, default=500, show_default=True,
              help="Reference mode count at the reference grid size.")
@click.option("--tau-points", type=int, default=1500, show_default=True,
              help="Reference grid size the mode count is anchored to.")
@click.option("--reps", type=int, default=3, show_default=True)
@click.option("--out-dir", default="out", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@server_option
def benchmark(sizes, modes, tau_points, reps, out_dir, seed, server):
    """Time invert_runup across grid sizes and fit the log-log slope."""
    try:
        n_list = [int(s) for s in sizes.split(",") if s.strip()]
    except ValueError:
        _fail_validation(f"--sizes must be comma-separated integers, got {sizes!r}")
    payload = {"n_list": n_list, "modes_ref": modes, "n_tau_ref": tau_points,
               "repetitions": reps}
    body = ServiceClient(server).post("/benchmark", payload)
    out = _out_dir(out_dir)
    with (out / "timings.csv").open("w") as fh:
        fh.write("abscissa,value\n")
        for n, t in zip(body["n_list"], body["times_s"]):
            fh.write(f"{n},{repr(float(t))}\n")
    write_summary(out / "summary.json", {**body, "seed": seed})
    click.echo(f"slope {body['slope']:.3f} over N = {body['n_list']}")


@main.command(name="fit-solitons")
@click.argument("series_csv", type=click.Path(exists=True, dir_okay=False))
@click.option("--length", "-L", "length", type=float, required=True,
              help="Flat-region length L (buoy position).")
@click.option("--model", type=click.Choice(["boussinesq", "lswe"]),
              default="boussinesq", show_default=True)
@click.option("--q1", type=float, default=None, help="Guess for q1 (boussinesq).")
@click.option("--q2", type=float, default=None, help="Guess for q2 (boussinesq).")
@click.option("--t1", type=float, default=None, help="Guess for t1 (boussinesq).")
@click.option("--t2", type=float, default=None, help="Guess for t2 (boussinesq).")
@click.option("--wave-kind", type=click.Choice(["soliton", "n_wave"]),
              default="soliton", show_default=True)
@click.option("--wave-c", type=float, default=4.0, show_default=True)
@click.option("--wave-width", type=float, default=25.0, show_default=True)
@click.option("--offsets", default=None, help="Comma-separated offset guesses (lswe).")
@click.option("--amplitudes", default=None,
              help="Comma-separated amplitude guesses (lswe).")
@click.option("--crop-lo", type=float, default=None)
@click.option("--crop-hi", type=float, default=None)
@click.option("--t-event", type=float, default=None,
              help="Back-track fitted features to this event time.")
@click.option("--out-dir", default=None, help="Also write fit.json here.")
@server_option
def fit_solitons(series_csv, length, model, q1, q2, t1, t2, wave_kind, wave_c,
                 wave_width, offsets, amplitudes, crop_lo, crop_hi, t_event,
                 out_dir, server):
    """Fit wave parameters to a (cropped) recovered boundary series."""
    series, _ = _guard(read_series_csv, series_csv)
    payload = {
        "series": _series_payload(series),
        "L": length,
        "model": model,
        "crop_lo": crop_lo,
        "crop_hi": crop_hi,
        "t_event": t_event,
    }
    if model == "boussinesq":
        if None in (q1, q2, t1, t2):
            _fail_validation("boussinesq fit requires --q1 --q2 --t1 --t2 guesses")
        payload["soliton_guess"] = {"q1": q1, "q2": q2, "t1": t1, "t2": t2}
    else:
        def parse_list(text):
            try:
                return [float(v) for v in text.split(",") if v.strip()]
            except ValueError:
                _fail_validation(f"expected comma-separated numbers, got {text!r}")
        payload["wave_guess"] = {
            "kind": wave_kind, "c": wave_c, "width": wave_width,
            "offsets": parse_list(offsets) if offsets else None,
            "amplitudes": parse_list(amplitudes) if amplitudes else None,
        }
    body = ServiceClient(server).post("/fit-solitons", payload)
    text = json.dumps(body, indent=2, sort_keys=True)
    click.echo(text)
    if out_dir is not None:
        out = _out_dir(out_dir)
        (out / "fit.json").write_text(text + "\n")
    if not body["converged"]:
        _fail_numerical("fit did not converge")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service with uvicorn."""
    import uvicorn
    uvicorn.run("runupinv.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
