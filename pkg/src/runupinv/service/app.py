"""FastAPI service exposing the inversion pipeline.

Validation problems (malformed series, bad parameters) map to HTTP 422;
numerical-diagnostic failures (breaking, pole assumption, non-convergence)
map to HTTP 409 so clients can distinguish "fix the request" from "the
method's assumptions failed on this data".
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import InputError, NumericalDiagnosticError, StageError
from ..hodograph import Bathymetry, shore_from_hodograph
from ..inversion import InversionParams, invert_runup
from ..modes import (build_modes, duhamel_coefficients, shoreline_equation,
                     shoreline_velocity)
from ..scenarios import run_benchmark, run_scenario
from ..solitons import (SolitonPair, TravellingWaveSpec, backtrack_solitons,
                        crop, fit_travelling_wave, fit_two_soliton,
                        lswe_backtrack)
from .schemas import (BenchmarkRequest, BenchmarkResponse, DiagnosticsPayload,
                      ErrorBody, FitSolitonsRequest, FitSolitonsResponse,
                      ForwardRequest, ForwardResponse, InvertRequest,
                      InvertResponse, ScenarioRequest, ScenarioResponse,
                      SeriesPayload)


def _error_response(exc: Exception) -> JSONResponse:
    stage = getattr(exc, "stage", None)
    root = exc.cause if isinstance(exc, StageError) else exc
    kind = "validation" if isinstance(root, (InputError, ValueError)) else "numerical"
    status = 422 if kind == "validation" else 409
    body = ErrorBody(kind=kind, message=str(exc), stage=stage)
    return JSONResponse(status_code=status, content=body.model_dump())


def create_app() -> FastAPI:
    app = FastAPI(title="runupinv", version=__version__)

    @app.exception_handler(InputError)
    async def _input_error(request: Request, exc: InputError):
        return _error_response(exc)

    @app.exception_handler(NumericalDiagnosticError)
    async def _numerical_error(request: Request, exc: NumericalDiagnosticError):
        return _error_response(exc)

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/invert", response_model=InvertResponse)
    def invert(req: InvertRequest) -> InvertResponse:
        bath = Bathymetry(L=req.bathymetry.L, sigma_L=req.bathymetry.sigma_L,
                          alpha=req.bathymetry.alpha, H0=req.bathymetry.H0,
                          g=req.bathymetry.g)
        params = InversionParams(bromwich_a=req.inversion.bromwich_a,
                                 t_window=req.inversion.t_window,
                                 n_fft=req.inversion.n_fft,
                                 eps_reg=req.inversion.eps_reg,
                                 residue_tol=req.inversion.residue_tol)
        result = invert_runup(req.runup.to_series(), bath,
                              n_modes=req.n_modes, n_sigma=req.n_sigma,
                              params=params, conv_method=req.conv_method)
        d = result.diagnostics
        return InvertResponse(
            psi_sh=SeriesPayload.from_series(result.psi_sh),
            psi_b=SeriesPayload.from_series(result.psi_b),
            phi_b=SeriesPayload.from_series(result.phi_b),
            eta_b=SeriesPayload.from_series(result.eta_b),
            u_b=SeriesPayload.from_series(result.u_b),
            diagnostics=DiagnosticsPayload(
                imag_residue=float(d.imag_residue),
                residue_ok=bool(d.residue_ok),
                floor_count=int(d.floor_count),
                compatibility_defect=float(d.compatibility_defect),
                min_abs_jacobian=float(d.breaking.min_abs_jacobian),
                breaking=bool(d.breaking.breaking),
                runtime_s=float(d.runtime_s)))

    @app.post("/forward", response_model=ForwardResponse)
    def forward(req: ForwardRequest) -> ForwardResponse:
        psi_b = req.psi_b.to_series()
        modes = build_modes(req.sigma_L, req.n_modes)
        filled = duhamel_coefficients(psi_b, modes, method=req.conv_method,
                                      compat_tol=req.compat_tol)
        psi_sh = shoreline_equation(psi_b, filled)
        phi_sh = shoreline_velocity(filled)
        runup = shore_from_hodograph(psi_sh, phi_sh)
        return ForwardResponse(psi_sh=SeriesPayload.from_series(psi_sh),
                               phi_sh=SeriesPayload.from_series(phi_sh),
                               runup=SeriesPayload.from_series(runup))

    @app.post("/fit-solitons", response_model=FitSolitonsResponse)
    def fit_solitons(req: FitSolitonsRequest) -> FitSolitonsResponse:
        series = req.series.to_series()
        if req.crop_lo is not None and req.crop_hi is not None:
            series = crop(series, req.crop_lo, req.crop_hi)
        if req.model == "boussinesq":
            if req.soliton_guess is None:
                raise InputError("boussinesq fit requires soliton_guess")
            g = req.soliton_guess
            guess = SolitonPair(q1=g.q1, q2=g.q2, t1=g.t1, t2=g.t2,
                                eps1=g.eps1, eps2=g.eps2)
            fit, pair = fit_two_soliton(series, req.L, guess)
            params: dict = {"q1": pair.q1, "q2": pair.q2,
                            "t1": pair.t1, "t2": pair.t2}
            positions = (list(backtrack_solitons(pair, req.t_event))
                         if req.t_event is not None else None)
        else:
            if req.wave_guess is None:
                raise InputError("lswe fit requires wave_guess")
            g = req.wave_guess
            guess = TravellingWaveSpec(kind=g.kind, c=g.c, width=g.width,
                                       offsets=tuple(g.offsets or ()),
                                       amplitudes=tuple(g.amplitudes or ()))
            fit, spec = fit_travelling_wave(series, req.L, guess)
            params = {"offsets": list(spec.offsets),
                      "amplitudes": list(spec.amplitudes)}
            positions = (lswe_backtrack(spec, req.t_event)
                         if req.t_event is not None else None)
        return FitSolitonsResponse(converged=bool(fit.converged),
                                   residual_norm=float(fit.residual_norm),
                                   iterations=int(fit.iterations),
                                   parameters=params, positions=positions)

    @app.post("/scenario", response_model=ScenarioResponse)
    def scenario(req: ScenarioRequest) -> ScenarioResponse:
        return ScenarioResponse(summary=run_scenario(req.config))

    @app.post("/benchmark", response_model=BenchmarkResponse)
    def benchmark(req: BenchmarkRequest) -> BenchmarkResponse:
        table = run_benchmark(req.n_list, modes_ref=req.modes_ref,
                              n_tau_ref=req.n_tau_ref,
                              repetitions=req.repetitions, t_end=req.t_end)
        return BenchmarkResponse(**table)

    return app


app = create_app()
