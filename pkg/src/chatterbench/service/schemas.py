"""Pydantic request/response models for the HTTP service.

These mirror the core dataclasses one-to-one; each request model knows how to
build its core counterpart and each response model how to read one. Floats
pass through JSON loss-free (shortest round-trip encoding on both sides), so
clients can rebuild byte-identical exports from a response.
"""

from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator, model_validator

from .. import bench, metrics, models, scenarios, simulator, tuning
from ..harmonic_balance import LimitCyclePrediction, NyquistCurve


class PlantModel(BaseModel):
    k: float = Field(gt=0, description="relay gain")
    tau: float = Field(gt=0, description="actuator time constant [s]")

    def to_core(self) -> models.PlantParams:
        return models.PlantParams(k=self.k, tau=self.tau)


class StaticManifoldModel(BaseModel):
    variant: Literal["static"] = "static"

    def to_core(self) -> models.StaticManifold:
        return models.StaticManifold()


class DynamicManifoldModel(BaseModel):
    variant: Literal["dynamic"] = "dynamic"
    f: float
    g: float
    h: float
    l: float

    @field_validator("l")
    @classmethod
    def _l_nonzero(cls, v: float) -> float:
        if v == 0.0:
            raise ValueError("constraint 'l != 0' violated: the manifold needs relative degree one")
        return v

    def to_core(self) -> models.DynamicManifold:
        return models.DynamicManifold(f=self.f, g=self.g, h=self.h, l=self.l)


ManifoldModel = Annotated[
    Union[StaticManifoldModel, DynamicManifoldModel], Field(discriminator="variant")
]


def manifold_to_model(m: models.ManifoldSpec) -> StaticManifoldModel | DynamicManifoldModel:
    if isinstance(m, models.StaticManifold):
        return StaticManifoldModel()
    return DynamicManifoldModel(f=m.f, g=m.g, h=m.h, l=m.l)


class SimOverridesModel(BaseModel):
    dt: Optional[float] = Field(default=None, gt=0)
    t_end: Optional[float] = Field(default=None, gt=0)
    x0: Optional[float] = None
    xi0: Optional[tuple[float, float]] = None
    record_stride: Optional[int] = Field(default=None, ge=1)

    def to_core(self) -> scenarios.SimOverrides:
        return scenarios.SimOverrides(
            dt=self.dt, t_end=self.t_end, x0=self.x0, xi0=self.xi0, record_stride=self.record_stride
        )


class LoopRequest(BaseModel):
    """Plant plus manifold: enough to build the partially closed loop."""

    plant: PlantModel
    manifold: ManifoldModel


class StabilityModel(BaseModel):
    f_negative: bool
    reduced_order_stable: bool
    loop_denominator_hurwitz: bool
    overall: bool

    @classmethod
    def from_core(cls, rep: models.StabilityReport) -> "StabilityModel":
        return cls(
            f_negative=rep.f_negative,
            reduced_order_stable=rep.reduced_order_stable,
            loop_denominator_hurwitz=rep.loop_denominator_hurwitz,
            overall=rep.overall,
        )


class TransferFunctionModel(BaseModel):
    """Coefficients in ascending powers of s."""

    num: list[float]
    den: list[float]


class TransferResponse(BaseModel):
    sigma: TransferFunctionModel
    x: TransferFunctionModel


class PredictionModel(BaseModel):
    omega_p: float
    sigma_hat: float
    x_hat: float
    u_hb_hat: float
    method: Literal["closed_form_ssm", "closed_form_dsm_limit", "numeric"]
    crossings: list[float]

    @classmethod
    def from_core(cls, pred: LimitCyclePrediction) -> "PredictionModel":
        return cls(
            omega_p=pred.omega_p,
            sigma_hat=pred.sigma_hat,
            x_hat=pred.x_hat,
            u_hb_hat=pred.u_hb_hat,
            method=pred.method.value,
            crossings=list(pred.crossings),
        )


class NumericPredictionResponse(BaseModel):
    """``status = "no_crossing"`` is a legitimate outcome (no predicted
    chattering), not an error."""

    status: Literal["ok", "no_crossing"]
    prediction: Optional[PredictionModel] = None


class NyquistRequest(BaseModel):
    plant: PlantModel
    manifold: ManifoldModel
    omega_min: Optional[float] = Field(default=None, gt=0)
    omega_max: Optional[float] = Field(default=None, gt=0)
    points: int = Field(default=bench.DEFAULT_NYQUIST_POINTS, ge=2)

    @model_validator(mode="after")
    def _range_ordered(self):
        if self.omega_min is not None and self.omega_max is not None:
            if not self.omega_min < self.omega_max:
                raise ValueError("omega_min must be < omega_max")
        return self


class NyquistSampleModel(BaseModel):
    omega: float
    re: float
    im: float


class DFLocusSampleModel(BaseModel):
    sigma_hat: float
    re: float
    im: float


class NyquistResponse(BaseModel):
    samples: list[NyquistSampleModel]
    df_line: str
    df_samples: list[DFLocusSampleModel]

    @classmethod
    def from_core(cls, curve: NyquistCurve, df_samples) -> "NyquistResponse":
        return cls(
            samples=[NyquistSampleModel(omega=s.omega, re=s.re, im=s.im) for s in curve.samples],
            df_line=curve.df_line,
            df_samples=[DFLocusSampleModel(sigma_hat=a, re=r, im=i) for a, r, i in df_samples],
        )


class SimulateRequest(BaseModel):
    plant: PlantModel
    manifold: ManifoldModel
    sim: SimOverridesModel = SimOverridesModel()


class TimeSeriesModel(BaseModel):
    t: list[float]
    x: list[float]
    sigma: list[float]
    u_a: list[float]
    xi1: list[float]
    z: Optional[list[float]] = None

    @classmethod
    def from_core(cls, ts: simulator.TimeSeries) -> "TimeSeriesModel":
        return cls(
            t=ts.t.tolist(),
            x=ts.x.tolist(),
            sigma=ts.sigma.tolist(),
            u_a=ts.u_a.tolist(),
            xi1=ts.xi1.tolist(),
            z=None if ts.z is None else ts.z.tolist(),
        )


class ScenarioModel(BaseModel):
    label: str = Field(min_length=1)
    plant: PlantModel
    manifold: ManifoldModel
    sim: SimOverridesModel = SimOverridesModel()

    def to_core(self) -> scenarios.Scenario:
        return scenarios.Scenario(
            label=self.label,
            plant=self.plant.to_core(),
            manifold=self.manifold.to_core(),
            sim=self.sim.to_core(),
        )

    @classmethod
    def from_core(cls, sc: scenarios.Scenario) -> "ScenarioModel":
        return cls(
            label=sc.label,
            plant=PlantModel(k=sc.plant.k, tau=sc.plant.tau),
            manifold=manifold_to_model(sc.manifold),
            sim=SimOverridesModel(
                dt=sc.sim.dt,
                t_end=sc.sim.t_end,
                x0=sc.sim.x0,
                xi0=sc.sim.xi0,
                record_stride=sc.sim.record_stride,
            ),
        )


class ParseRequest(BaseModel):
    config_text: str


class ParseResponse(BaseModel):
    scenarios: list[ScenarioModel]
    canonical_text: str


class RunRequest(BaseModel):
    """Scenario batch: either raw config text or structured scenarios."""

    config_text: Optional[str] = None
    scenarios: Optional[list[ScenarioModel]] = None
    discard_fraction: float = Field(default=0.5, ge=0.0, lt=1.0)
    nyquist_points: int = Field(default=bench.DEFAULT_NYQUIST_POINTS, ge=2)

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.config_text is None) == (self.scenarios is None):
            raise ValueError("provide exactly one of 'config_text' or 'scenarios'")
        return self


class OscillationReportModel(BaseModel):
    signal: str
    amplitude: float
    frequency: float
    window: tuple[float, float]
    n_periods: int

    @classmethod
    def from_core(cls, rep: metrics.OscillationReport) -> "OscillationReportModel":
        return cls(
            signal=rep.signal,
            amplitude=rep.amplitude,
            frequency=rep.frequency,
            window=rep.window,
            n_periods=rep.n_periods,
        )


class ComparisonRowModel(BaseModel):
    label: str
    sigma_hb: float
    sigma_sim: float
    x_hb: float
    x_sim: float
    omega_hb: float
    omega_sim: float
    err_sigma: float
    err_x: float
    err_omega: float

    @classmethod
    def from_core(cls, row: metrics.ComparisonRow) -> "ComparisonRowModel":
        return cls(**{f: getattr(row, f) for f in cls.model_fields})


class ScenarioResultModel(BaseModel):
    label: str
    scenario: ScenarioModel
    stability: StabilityModel
    closed_form: Optional[PredictionModel]
    numeric: Optional[PredictionModel]
    no_crossing: bool
    timeseries: TimeSeriesModel
    sigma_report: OscillationReportModel
    x_report: OscillationReportModel
    comparison: ComparisonRowModel
    nyquist: list[NyquistSampleModel]

    @classmethod
    def from_core(cls, res: bench.ScenarioResult) -> "ScenarioResultModel":
        return cls(
            label=res.scenario.label,
            scenario=ScenarioModel.from_core(res.scenario),
            stability=StabilityModel.from_core(res.stability),
            closed_form=None if res.closed_form is None else PredictionModel.from_core(res.closed_form),
            numeric=None if res.numeric is None else PredictionModel.from_core(res.numeric),
            no_crossing=res.no_crossing,
            timeseries=TimeSeriesModel.from_core(res.timeseries),
            sigma_report=OscillationReportModel.from_core(res.sigma_report),
            x_report=OscillationReportModel.from_core(res.x_report),
            comparison=ComparisonRowModel.from_core(res.comparison),
            nyquist=[
                NyquistSampleModel(omega=s.omega, re=s.re, im=s.im) for s in res.nyquist.samples
            ],
        )


class ScenarioFailureModel(BaseModel):
    label: str
    error_type: str
    message: str


class RunResponse(BaseModel):
    results: list[ScenarioResultModel]
    failures: list[ScenarioFailureModel]
    table: list[ComparisonRowModel]


class TuneRequest(BaseModel):
    tau_min: float = Field(gt=0)
    tau_max: float = Field(gt=0)
    omega_max: float = Field(gt=0)
    k: float = Field(gt=0)
    alpha: float = Field(default=0.98, gt=0, lt=1)

    @model_validator(mode="after")
    def _interval_ordered(self):
        if not self.tau_min <= self.tau_max:
            raise ValueError("tau_min must be <= tau_max")
        return self

    def to_core(self) -> tuning.TunerRequest:
        return tuning.TunerRequest(
            tau_min=self.tau_min,
            tau_max=self.tau_max,
            omega_max=self.omega_max,
            k=self.k,
            alpha=self.alpha,
        )


class EndpointPredictionModel(BaseModel):
    tau: float
    closed_form: PredictionModel
    numeric: Optional[PredictionModel]
    no_crossing: bool


class TuneResponse(BaseModel):
    manifold: DynamicManifoldModel
    f: float
    g: float
    endpoints: list[EndpointPredictionModel]

    @classmethod
    def from_core(cls, result: tuning.TuneResult) -> "TuneResponse":
        return cls(
            manifold=DynamicManifoldModel(
                f=result.manifold.f, g=result.manifold.g, h=result.manifold.h, l=result.manifold.l
            ),
            f=result.f,
            g=result.g,
            endpoints=[
                EndpointPredictionModel(
                    tau=e.tau,
                    closed_form=PredictionModel.from_core(e.closed_form),
                    numeric=None if e.numeric is None else PredictionModel.from_core(e.numeric),
                    no_crossing=e.no_crossing,
                )
                for e in result.endpoints
            ],
        )


class HealthResponse(BaseModel):
    status: Literal["ok"]
    version: str


class ErrorBody(BaseModel):
    error: str
    detail: str
