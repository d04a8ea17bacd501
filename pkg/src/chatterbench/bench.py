"""Scenario pipeline: predict, simulate, measure, compare.

One scenario run produces the harmonic-balance predictions (closed form where
available plus the numeric solution), the simulated trajectories, measured
oscillation reports for the sliding variable and the plant state, a
prediction-vs-measurement comparison row, and Nyquist samples of the loop
transfer function. Scenarios are independent; failures are captured per
scenario so a bad entry never stops the batch.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ChatterbenchError, NoCrossing
from .harmonic_balance import (
    LimitCyclePrediction,
    NyquistCurve,
    closed_form_dsm_limit,
    closed_form_ssm,
    nyquist_sample,
    solve_limit_cycle_numeric,
)
from .metrics import ComparisonRow, OscillationReport, compare, measure_oscillation
from .models import (
    DynamicManifold,
    StabilityReport,
    StaticManifold,
    check_stability,
    sigma_transfer,
    x_transfer,
)
from .scenarios import Scenario
from .simulator import TimeSeries, simulate

__all__ = [
    "NYQUIST_DECADES",
    "StabilityViolation",
    "ScenarioResult",
    "ScenarioFailure",
    "default_nyquist_range",
    "run_scenario",
    "run_scenarios",
    "comparison_table",
]

# Nyquist export default: six decades centered on the actuator corner 1/tau.
NYQUIST_DECADES = 3.0
DEFAULT_NYQUIST_POINTS = 600


class StabilityViolation(ChatterbenchError):
    """Dynamic scenario fails its design stability constraints; batch runs
    reject it (direct calls to :func:`chatterbench.simulate` only warn)."""


@dataclass(frozen=True)
class ScenarioResult:
    scenario: Scenario
    stability: StabilityReport
    closed_form: LimitCyclePrediction | None
    numeric: LimitCyclePrediction | None
    no_crossing: bool
    timeseries: TimeSeries
    sigma_report: OscillationReport
    x_report: OscillationReport
    comparison: ComparisonRow
    nyquist: NyquistCurve


@dataclass(frozen=True)
class ScenarioFailure:
    label: str
    error_type: str
    message: str


def default_nyquist_range(tau: float) -> tuple[float, float]:
    scale = 10.0**NYQUIST_DECADES
    return (1.0 / (tau * scale), scale / tau)


def run_scenario(
    scenario: Scenario,
    discard_fraction: float = 0.5,
    nyquist_points: int = DEFAULT_NYQUIST_POINTS,
) -> ScenarioResult:
    """Full pipeline for one scenario.

    The comparison row measures the simulation against the closed-form
    prediction when one exists (it always does for the static manifold and
    for dynamic manifolds with f < 0), falling back to the numeric one.

    Raises
    ------
    StabilityViolation
        For dynamic scenarios that fail their design constraints.
    NoCrossing
        Is *not* raised: a missing crossing is recorded on the result.
    """
    plant, manifold = scenario.plant, scenario.manifold
    stability = check_stability(plant, manifold)
    if isinstance(manifold, DynamicManifold) and not stability.overall:
        raise StabilityViolation(
            f"scenario {scenario.label!r}: manifold fails design stability constraints "
            f"(f<0: {stability.f_negative}, reduced-order: {stability.reduced_order_stable}, "
            f"loop Hurwitz: {stability.loop_denominator_hurwitz})"
        )

    g_sigma = sigma_transfer(plant, manifold)
    g_x = x_transfer(plant, manifold)

    if isinstance(manifold, StaticManifold):
        closed_form = closed_form_ssm(plant)
    elif manifold.f < 0.0:
        closed_form = closed_form_dsm_limit(plant, manifold.f)
    else:
        closed_form = None

    try:
        numeric = solve_limit_cycle_numeric(g_sigma, g_x, tau_ref=plant.tau)
        no_crossing = False
    except NoCrossing:
        numeric = None
        no_crossing = True

    ts = simulate(plant, manifold, scenario.sim_config())
    sigma_report = measure_oscillation(ts, "sigma", discard_fraction)
    x_report = measure_oscillation(ts, "x", discard_fraction)

    reference = closed_form if closed_form is not None else numeric
    if reference is None:
        raise NoCrossing(
            f"scenario {scenario.label!r}: no prediction available to compare against"
        )
    comparison = compare(reference, sigma_report, x_report, scenario.label)

    omega_lo, omega_hi = default_nyquist_range(plant.tau)
    nyquist = nyquist_sample(g_sigma, omega_lo, omega_hi, nyquist_points)

    return ScenarioResult(
        scenario=scenario,
        stability=stability,
        closed_form=closed_form,
        numeric=numeric,
        no_crossing=no_crossing,
        timeseries=ts,
        sigma_report=sigma_report,
        x_report=x_report,
        comparison=comparison,
        nyquist=nyquist,
    )


def run_scenarios(
    scenarios,
    discard_fraction: float = 0.5,
    nyquist_points: int = DEFAULT_NYQUIST_POINTS,
) -> tuple[list[ScenarioResult], list[ScenarioFailure]]:
    """Run every scenario, capturing per-scenario domain errors as failures."""
    results: list[ScenarioResult] = []
    failures: list[ScenarioFailure] = []
    for sc in scenarios:
        try:
            results.append(run_scenario(sc, discard_fraction, nyquist_points))
        except (ChatterbenchError, ValueError) as exc:
            failures.append(
                ScenarioFailure(label=sc.label, error_type=type(exc).__name__, message=str(exc))
            )
    return results, failures


def comparison_table(results) -> list[ComparisonRow]:
    """Aggregate comparison rows, deterministically sorted by label."""
    return sorted((r.comparison for r in results), key=lambda row: row.label)
