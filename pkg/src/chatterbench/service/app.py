"""FastAPI service exposing the chattering-analysis toolkit.

Every endpoint is a pure computation on the request body; the service holds
no state, so instances can be load-balanced or embedded in-process (the CLI
does the latter). Domain errors map to HTTP 422 with an ``error`` code naming
the exception class.
"""

from __future__ import annotations

import math

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, bench, scenarios, tuning
from ..errors import ChatterbenchError, NoCrossing, NonNegativeF
from ..harmonic_balance import (
    closed_form_dsm_limit,
    closed_form_ssm,
    nyquist_sample,
    solve_limit_cycle_numeric,
)
from ..models import StaticManifold, check_stability, sigma_transfer, x_transfer
from ..simulator import simulate
from . import schemas

_DF_LOCUS_DECADES = 4.0


def create_app() -> FastAPI:
    app = FastAPI(
        title="chatterbench",
        version=__version__,
        description=(
            "Limit-cycle prediction (describing-function harmonic balance) and "
            "time-domain measurement of relay-loop chattering with static or "
            "dynamic sliding manifolds."
        ),
    )

    @app.exception_handler(ChatterbenchError)
    async def _domain_error(request: Request, exc: ChatterbenchError):
        return JSONResponse(
            status_code=422,
            content=schemas.ErrorBody(error=type(exc).__name__, detail=str(exc)).model_dump(),
        )

    @app.exception_handler(ValueError)
    async def _value_error(request: Request, exc: ValueError):
        return JSONResponse(
            status_code=422,
            content=schemas.ErrorBody(error="ValueError", detail=str(exc)).model_dump(),
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/stability", response_model=schemas.StabilityModel)
    def stability(req: schemas.LoopRequest):
        report = check_stability(req.plant.to_core(), req.manifold.to_core())
        return schemas.StabilityModel.from_core(report)

    @app.post("/transfer", response_model=schemas.TransferResponse)
    def transfer(req: schemas.LoopRequest):
        plant, manifold = req.plant.to_core(), req.manifold.to_core()
        g_sigma = sigma_transfer(plant, manifold)
        g_x = x_transfer(plant, manifold)
        return schemas.TransferResponse(
            sigma=schemas.TransferFunctionModel(
                num=list(g_sigma.numerator.coeffs), den=list(g_sigma.denominator.coeffs)
            ),
            x=schemas.TransferFunctionModel(
                num=list(g_x.numerator.coeffs), den=list(g_x.denominator.coeffs)
            ),
        )

    @app.post("/predict/closed-form", response_model=schemas.PredictionModel)
    def predict_closed_form(req: schemas.LoopRequest):
        plant = req.plant.to_core()
        manifold = req.manifold.to_core()
        if isinstance(manifold, StaticManifold):
            return schemas.PredictionModel.from_core(closed_form_ssm(plant))
        if not manifold.f < 0.0:
            raise NonNegativeF(f"closed-form prediction requires f < 0, got f = {manifold.f}")
        return schemas.PredictionModel.from_core(closed_form_dsm_limit(plant, manifold.f))

    @app.post("/predict/numeric", response_model=schemas.NumericPredictionResponse)
    def predict_numeric(req: schemas.LoopRequest):
        plant, manifold = req.plant.to_core(), req.manifold.to_core()
        g_sigma = sigma_transfer(plant, manifold)
        g_x = x_transfer(plant, manifold)
        try:
            pred = solve_limit_cycle_numeric(g_sigma, g_x, tau_ref=plant.tau)
        except NoCrossing:
            return schemas.NumericPredictionResponse(status="no_crossing", prediction=None)
        return schemas.NumericPredictionResponse(
            status="ok", prediction=schemas.PredictionModel.from_core(pred)
        )

    @app.post("/nyquist", response_model=schemas.NyquistResponse)
    def nyquist(req: schemas.NyquistRequest):
        plant, manifold = req.plant.to_core(), req.manifold.to_core()
        lo, hi = bench.default_nyquist_range(plant.tau)
        omega_min = req.omega_min if req.omega_min is not None else lo
        omega_max = req.omega_max if req.omega_max is not None else hi
        curve = nyquist_sample(sigma_transfer(plant, manifold), omega_min, omega_max, req.points)
        return schemas.NyquistResponse.from_core(curve, _df_locus(curve, req.points))

    @app.post("/simulate", response_model=schemas.TimeSeriesModel)
    def run_simulation(req: schemas.SimulateRequest):
        plant, manifold = req.plant.to_core(), req.manifold.to_core()
        sc = scenarios.Scenario(label="adhoc", plant=plant, manifold=manifold, sim=req.sim.to_core())
        return schemas.TimeSeriesModel.from_core(simulate(plant, manifold, sc.sim_config()))

    @app.post("/scenarios/parse", response_model=schemas.ParseResponse)
    def parse(req: schemas.ParseRequest):
        parsed = scenarios.parse_scenarios(req.config_text)
        return schemas.ParseResponse(
            scenarios=[schemas.ScenarioModel.from_core(sc) for sc in parsed],
            canonical_text=scenarios.serialize_scenarios(parsed),
        )

    @app.post("/scenarios/run", response_model=schemas.RunResponse)
    def run(req: schemas.RunRequest):
        if req.config_text is not None:
            batch = scenarios.parse_scenarios(req.config_text)
        else:
            batch = tuple(sc.to_core() for sc in req.scenarios)
        results, failures = bench.run_scenarios(
            batch, discard_fraction=req.discard_fraction, nyquist_points=req.nyquist_points
        )
        return schemas.RunResponse(
            results=[schemas.ScenarioResultModel.from_core(r) for r in results],
            failures=[
                schemas.ScenarioFailureModel(
                    label=f.label, error_type=f.error_type, message=f.message
                )
                for f in failures
            ],
            table=[
                schemas.ComparisonRowModel.from_core(row)
                for row in bench.comparison_table(results)
            ],
        )

    @app.post("/tune", response_model=schemas.TuneResponse)
    def tune(req: schemas.TuneRequest):
        return schemas.TuneResponse.from_core(tuning.tune_dsm(req.to_core()))

    return app


def _df_locus(curve, points: int):
    """Relay locus samples ``(a, -pi a / 4, 0)`` on a log amplitude grid.

    The grid is anchored at the largest positive real part of the curve (the
    amplitude the balance condition would select there), spanning four
    decades below it.
    """
    top = max((s.re for s in curve.samples if math.isfinite(s.re)), default=1.0)
    a_max = (4.0 / math.pi) * top if top > 0.0 else 1.0
    amplitudes = np.logspace(
        math.log10(a_max) - _DF_LOCUS_DECADES, math.log10(a_max), points
    )
    return [(float(a), -math.pi * float(a) / 4.0, 0.0) for a in amplitudes]


app = create_app()
