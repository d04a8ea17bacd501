"""Dynamic-manifold parameter selection under a chattering-frequency budget.

The predicted frequency ``sqrt(1 - 2 f tau) / tau`` grows as ``f`` becomes
more negative, while the predicted amplitudes shrink like ``1/f^2``. Given an
interval of possible actuator time constants and a maximum acceptable
frequency, the tuner picks the most negative admissible ``f`` (so the
amplitude reduction is maximal), pairs it with ``g = -alpha f``, and fixes
``h = -1``, ``l = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Infeasible, NoCrossing
from .harmonic_balance import LimitCyclePrediction, closed_form_dsm_limit, solve_limit_cycle_numeric
from .models import DynamicManifold, PlantParams, sigma_transfer, x_transfer

__all__ = ["F_FLOOR", "TunerRequest", "EndpointPrediction", "TuneResult", "tune_dsm"]

# Amplitudes decay like 1/f^2, so pushing f below this floor buys nothing and
# only stiffens the loop.
F_FLOOR = -1e4

_SCAN_POINTS = 100


@dataclass(frozen=True)
class TunerRequest:
    """Bounds on the unknown actuator time constant, the frequency budget in
    rad/s, the relay gain, and the ``g = -alpha f`` spacing factor."""

    tau_min: float
    tau_max: float
    omega_max: float
    k: float
    alpha: float = 0.98

    def __post_init__(self):
        if not 0.0 < self.tau_min <= self.tau_max:
            raise ValueError(
                f"need 0 < tau_min <= tau_max, got [{self.tau_min}, {self.tau_max}]"
            )
        if not self.omega_max > 0.0:
            raise ValueError(f"omega_max must be > 0, got {self.omega_max}")
        if not self.k > 0.0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")


@dataclass(frozen=True)
class EndpointPrediction:
    """Predictions at one end of the time-constant interval: the closed-form
    limit and the numeric solution with the actual finite ``g``."""

    tau: float
    closed_form: LimitCyclePrediction
    numeric: LimitCyclePrediction | None
    no_crossing: bool


@dataclass(frozen=True)
class TuneResult:
    manifold: DynamicManifold
    f: float
    g: float
    endpoints: tuple[EndpointPrediction, ...]


def tune_dsm(req: TunerRequest) -> TuneResult:
    """Pick the most negative ``f`` keeping the predicted frequency within budget.

    The frequency constraint is evaluated on a 100-point scan of the
    time-constant interval rather than assuming which endpoint binds; the
    admissible ``f`` for each scanned ``tau`` is ``(1 - (omega_max tau)^2) /
    (2 tau)`` and the binding (largest) value wins. ``f`` is clamped at
    ``F_FLOOR`` when the budget is loose.

    Raises
    ------
    Infeasible
        If no ``f < 0`` satisfies the budget: already the manifold-filter-free
        frequency ``1/tau`` exceeds ``omega_max`` somewhere in the interval.
    """
    taus = np.linspace(req.tau_min, req.tau_max, _SCAN_POINTS)
    f_required = float(np.max((1.0 - (req.omega_max * taus) ** 2) / (2.0 * taus)))
    if f_required >= 0.0:
        raise Infeasible(
            f"omega_max = {req.omega_max} rad/s is below the minimum achievable "
            f"frequency 1/tau_min = {1.0 / req.tau_min} rad/s; no f < 0 can satisfy it"
        )
    f = max(f_required, F_FLOOR)

    # sanity: the selected f must respect the budget over the whole scan
    predicted = np.sqrt(1.0 - 2.0 * f * taus) / taus
    if f == f_required and not np.all(predicted <= req.omega_max * (1.0 + 1e-9)):
        raise AssertionError("frequency budget violated after solving the binding constraint")

    g = -req.alpha * f
    manifold = DynamicManifold(f=f, g=g, h=-1.0, l=1.0)

    endpoints = []
    for tau in dict.fromkeys((req.tau_min, req.tau_max)):  # skip duplicate endpoint
        plant = PlantParams(k=req.k, tau=tau)
        g_sigma = sigma_transfer(plant, manifold)
        g_x = x_transfer(plant, manifold)
        try:
            numeric = solve_limit_cycle_numeric(g_sigma, g_x, tau_ref=tau)
            no_crossing = False
        except NoCrossing:
            numeric = None
            no_crossing = True
        endpoints.append(
            EndpointPrediction(
                tau=tau,
                closed_form=closed_form_dsm_limit(plant, f),
                numeric=numeric,
                no_crossing=no_crossing,
            )
        )
    return TuneResult(manifold=manifold, f=f, g=g, endpoints=tuple(endpoints))
