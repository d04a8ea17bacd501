"""Steady-state oscillation measurement and prediction-vs-simulation reports.

Amplitude is half the peak-to-peak excursion over the analysis window (after
mean removal), which is what the describing-function fundamental should be
compared against while staying robust to mild harmonic distortion. Frequency
comes from the mean interval between same-direction zero crossings of the
mean-removed signal, with sub-sample linear interpolation; this is exact for
near-sinusoidal chattering and independent of window-length choices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstantSignal, TooFewPeriods
from .harmonic_balance import LimitCyclePrediction
from .simulator import TimeSeries

__all__ = ["OscillationReport", "ComparisonRow", "measure_oscillation", "compare"]

_MIN_SAMPLES = 1000
_MIN_PERIODS = 10
_CONSTANT_PTP = 1e-15


@dataclass(frozen=True)
class OscillationReport:
    """Measured steady-state oscillation of one signal."""

    signal: str
    amplitude: float
    frequency: float
    window: tuple[float, float]
    n_periods: int


@dataclass(frozen=True)
class ComparisonRow:
    """Predicted vs measured amplitudes and frequency for one scenario.

    Relative errors are ``|sim - hb| / hb``.
    """

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


def measure_oscillation(
    ts: TimeSeries,
    signal: str = "sigma",
    discard_fraction: float = 0.5,
) -> OscillationReport:
    """Measure amplitude and frequency after discarding the initial transient.

    The first ``discard_fraction`` of the horizon is dropped; at least 1000
    samples must remain. Frequency uses rising zero crossings of the
    mean-removed signal.

    Raises
    ------
    ConstantSignal
        If the windowed peak-to-peak is below 1e-15.
    TooFewPeriods
        If fewer than 10 full periods fit in the window.
    """
    if not 0.0 <= discard_fraction < 1.0:
        raise ValueError(f"discard_fraction must lie in [0, 1), got {discard_fraction}")
    t = ts.t
    y = ts.signal(signal)
    t_cut = t[0] + discard_fraction * (t[-1] - t[0])
    keep = t >= t_cut
    t_w = t[keep]
    y_w = y[keep]
    if t_w.shape[0] < _MIN_SAMPLES:
        raise ValueError(
            f"only {t_w.shape[0]} samples left after discarding {discard_fraction:.0%}; "
            f"need >= {_MIN_SAMPLES}"
        )

    ptp = float(np.max(y_w) - np.min(y_w))
    if ptp < _CONSTANT_PTP:
        raise ConstantSignal(f"signal {signal!r} is constant over the window (ptp = {ptp:.3e})")

    centered = y_w - float(np.mean(y_w))
    amplitude = 0.5 * float(np.max(centered) - np.min(centered))

    crossings = _rising_crossings(t_w, centered)
    n_periods = len(crossings) - 1
    if n_periods < _MIN_PERIODS:
        raise TooFewPeriods(
            f"found {max(n_periods, 0)} periods of {signal!r} in the window; need >= {_MIN_PERIODS}"
        )
    mean_period = (crossings[-1] - crossings[0]) / n_periods
    return OscillationReport(
        signal=signal,
        amplitude=amplitude,
        frequency=2.0 * np.pi / mean_period,
        window=(float(t_w[0]), float(t_w[-1])),
        n_periods=n_periods,
    )


def _rising_crossings(t: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Times of negative-to-positive zero crossings, linearly interpolated."""
    neg = y < 0.0
    pos_next = y[1:] >= 0.0
    idx = np.nonzero(neg[:-1] & pos_next)[0]
    y0, y1 = y[idx], y[idx + 1]
    frac = -y0 / (y1 - y0)
    return t[idx] + frac * (t[idx + 1] - t[idx])


def compare(
    hb: LimitCyclePrediction,
    sim_sigma: OscillationReport,
    sim_x: OscillationReport,
    label: str,
) -> ComparisonRow:
    """Assemble one prediction-vs-measurement row (reports from the same run)."""
    return ComparisonRow(
        label=label,
        sigma_hb=hb.sigma_hat,
        sigma_sim=sim_sigma.amplitude,
        x_hb=hb.x_hat,
        x_sim=sim_x.amplitude,
        omega_hb=hb.omega_p,
        omega_sim=sim_sigma.frequency,
        err_sigma=abs(sim_sigma.amplitude - hb.sigma_hat) / hb.sigma_hat,
        err_x=abs(sim_x.amplitude - hb.x_hat) / hb.x_hat,
        err_omega=abs(sim_sigma.frequency - hb.omega_p) / hb.omega_p,
    )
