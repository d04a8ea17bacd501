"""Describing-function / harmonic-balance limit-cycle prediction.

The relay is replaced by its describing function ``N(a) = 4 / (pi a)``; a
sustained oscillation is predicted where the loop frequency response crosses
the real axis with positive real part. Sign convention: the loop transfer
functions built in :mod:`chatterbench.models` absorb both the relay gain
``-K`` and the negative feedback, so the balance point sits on the positive
real axis and the predicted amplitude is ``(4/pi) * Re G(i w_p)``.

Closed-form predictions exist for the static manifold and for the dynamic
manifold in its tightest admissible parameterization (``g -> -f`` with
``h = -1``, ``l = 1``); the numeric solver handles any loop transfer pair.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import NoCrossing, NonNegativeF, NonPositiveAmplitude, PoleOnAxis
from .models import PlantParams
from .ratfun import TransferFunction

__all__ = [
    "PredictionMethod",
    "LimitCyclePrediction",
    "NyquistPoint",
    "NyquistCurve",
    "describing_function",
    "closed_form_ssm",
    "closed_form_dsm_limit",
    "solve_limit_cycle_numeric",
    "nyquist_sample",
]

U_HB_FUNDAMENTAL = 4.0 / math.pi

# Numeric solver grid: six decades around 1/tau_ref, bisection to 1e-12
# relative in omega.
_GRID_POINTS = 2000
_GRID_DECADES_BELOW = 3.0
_GRID_DECADES_ABOVE = 3.0
_OMEGA_REL_TOL = 1e-12


class PredictionMethod(enum.Enum):
    CLOSED_FORM_SSM = "closed_form_ssm"
    CLOSED_FORM_DSM_LIMIT = "closed_form_dsm_limit"
    NUMERIC = "numeric"


@dataclass(frozen=True)
class LimitCyclePrediction:
    """Predicted fundamental oscillation.

    ``omega_p`` is the angular frequency in rad/s, ``sigma_hat`` / ``x_hat``
    the amplitudes of the sliding variable and the plant state, and
    ``u_hb_hat`` the fundamental amplitude of the relay output (always
    ``4/pi`` for an ideal relay). ``crossings`` lists every positive-real-axis
    crossing frequency found; the lowest one is selected as ``omega_p``.
    """

    omega_p: float
    sigma_hat: float
    x_hat: float
    u_hb_hat: float
    method: PredictionMethod
    crossings: tuple[float, ...] = field(default=())

    def __post_init__(self):
        if not self.omega_p > 0.0:
            raise ValueError(f"omega_p must be > 0, got {self.omega_p}")
        if not (self.sigma_hat > 0.0 and self.x_hat > 0.0):
            raise ValueError(
                f"amplitudes must be > 0, got sigma_hat={self.sigma_hat}, x_hat={self.x_hat}"
            )
        if not self.crossings:
            object.__setattr__(self, "crossings", (self.omega_p,))


class NyquistPoint(NamedTuple):
    omega: float
    re: float
    im: float


@dataclass(frozen=True)
class NyquistCurve:
    """Log-spaced frequency-response samples plus the describing-function locus.

    ``df_line`` describes the relay locus ``-1/N(a) = -pi a / 4`` (the
    negative real axis parameterized by the amplitude ``a``). The loop
    transfer functions used here absorb the loop sign, so their balance
    crossing appears on the positive real axis; the curve is emitted raw.
    """

    samples: tuple[NyquistPoint, ...]
    df_line: str = "-1/N(a) = -pi*a/4 for amplitude a > 0 (negative real axis)"

    def __post_init__(self):
        omegas = [s.omega for s in self.samples]
        if any(b <= a for a, b in zip(omegas, omegas[1:])):
            raise ValueError("sample frequencies must be strictly increasing")


def describing_function(sigma_hat: float) -> float:
    """Describing function of the ideal relay: ``N(a) = 4 / (pi a)``."""
    if not sigma_hat > 0.0:
        raise NonPositiveAmplitude(f"amplitude must be > 0, got {sigma_hat}")
    return 4.0 / (math.pi * sigma_hat)


def closed_form_ssm(p: PlantParams) -> LimitCyclePrediction:
    """Static-manifold prediction: ``w_p = 1/tau``, amplitudes ``2 K tau / pi``.

    The plant state equals the sliding variable here, so both amplitudes
    coincide. The amplitude is bilinear in ``K`` and ``tau`` exactly.
    """
    amplitude = (p.k * p.tau) * (2.0 / math.pi)
    return LimitCyclePrediction(
        omega_p=1.0 / p.tau,
        sigma_hat=amplitude,
        x_hat=amplitude,
        u_hb_hat=U_HB_FUNDAMENTAL,
        method=PredictionMethod.CLOSED_FORM_SSM,
    )


def closed_form_dsm_limit(p: PlantParams, f: float) -> LimitCyclePrediction:
    """Dynamic-manifold prediction in the limit ``g -> -f`` (h = -1, l = 1).

    With the scaled rate ``ft = f * tau``:

    * ``w_p = sqrt(1 - 2 ft) / tau``
    * ``sigma_hat = 4 K tau / (pi (2 ft^2 - 5 ft + 2))``
    * ``x_hat = 4 K tau (1 - ft) / (pi sqrt(1 - 2 ft) (2 ft^2 - 5 ft + 2))``

    Raises
    ------
    NonNegativeF
        If ``f >= 0``; the manifold filter must be stable.
    """
    if not f < 0.0:
        raise NonNegativeF(f"closed-form dynamic-manifold prediction requires f < 0, got {f}")
    ft = f * p.tau
    quad = 2.0 * ft * ft - 5.0 * ft + 2.0  # > 2 for ft < 0
    root = math.sqrt(1.0 - 2.0 * ft)
    scale = 4.0 * p.k * p.tau / math.pi
    return LimitCyclePrediction(
        omega_p=root / p.tau,
        sigma_hat=scale / quad,
        x_hat=scale * (1.0 - ft) / (root * quad),
        u_hb_hat=U_HB_FUNDAMENTAL,
        method=PredictionMethod.CLOSED_FORM_DSM_LIMIT,
    )


def _imag_at(g: TransferFunction, omega: float) -> float:
    return g.at_omega(omega).imag


def _bisect_imag_zero(g: TransferFunction, lo: float, hi: float) -> float:
    """Refine a bracketed sign change of Im G(i w) to 1e-12 relative in w."""
    f_lo = _imag_at(g, lo)
    while (hi - lo) > _OMEGA_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        f_mid = _imag_at(g, mid)
        if f_mid == 0.0:
            return mid
        if (f_lo > 0.0) == (f_mid > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_limit_cycle_numeric(
    g_sigma: TransferFunction,
    g_x: TransferFunction,
    tau_ref: float = 1.0,
) -> LimitCyclePrediction:
    """Locate the harmonic-balance point of an arbitrary loop numerically.

    Scans ``Im g_sigma(i w)`` on a 2000-point log grid over six decades
    centered on ``1/tau_ref``, brackets every sign change, refines each by
    bisection, and keeps crossings with positive real part. The lowest
    crossing frequency is selected; all of them are reported on the
    prediction. Amplitudes follow the relay balance: ``sigma_hat =
    (4/pi) Re g_sigma(i w_p)`` and ``x_hat = |g_x(i w_p)| * 4/pi``.

    Raises
    ------
    NoCrossing
        If no positive-real-part crossing exists: the loop is predicted not
        to sustain an oscillation.
    """
    if not g_sigma.strictly_proper:
        raise ValueError("loop transfer function must be strictly proper")
    if not tau_ref > 0.0:
        raise ValueError(f"tau_ref must be > 0, got {tau_ref}")

    center = math.log10(1.0 / tau_ref)
    grid = np.logspace(center - _GRID_DECADES_BELOW, center + _GRID_DECADES_ABOVE, _GRID_POINTS)

    imag = np.empty(_GRID_POINTS)
    for i, w in enumerate(grid):
        try:
            imag[i] = _imag_at(g_sigma, float(w))
        except PoleOnAxis:
            imag[i] = np.nan

    candidates: list[float] = []
    for i in range(_GRID_POINTS - 1):
        a, b = imag[i], imag[i + 1]
        if math.isnan(a) or math.isnan(b):
            continue
        if a == 0.0:
            candidates.append(float(grid[i]))
        elif a * b < 0.0:
            candidates.append(_bisect_imag_zero(g_sigma, float(grid[i]), float(grid[i + 1])))
    if imag[-1] == 0.0:
        candidates.append(float(grid[-1]))

    crossings = []
    for w in candidates:
        if crossings and abs(w - crossings[-1]) <= 1e-9 * w:
            continue  # duplicate from adjacent brackets
        if g_sigma.at_omega(w).real > 0.0:
            crossings.append(w)

    if not crossings:
        raise NoCrossing("Im G never crosses zero with Re G > 0: no sustained oscillation predicted")

    omega_p = min(crossings)
    re_at_crossing = g_sigma.at_omega(omega_p).real
    return LimitCyclePrediction(
        omega_p=omega_p,
        sigma_hat=U_HB_FUNDAMENTAL * re_at_crossing,
        x_hat=abs(g_x.at_omega(omega_p)) * U_HB_FUNDAMENTAL,
        u_hb_hat=U_HB_FUNDAMENTAL,
        method=PredictionMethod.NUMERIC,
        crossings=tuple(sorted(crossings)),
    )


def nyquist_sample(
    g: TransferFunction,
    omega_min: float,
    omega_max: float,
    n: int,
) -> NyquistCurve:
    """Sample ``g(i w)`` at ``n`` log-spaced frequencies in [omega_min, omega_max].

    A frequency landing on an imaginary-axis pole is kept in the curve as a
    gap marker with NaN real and imaginary parts.
    """
    if not (0.0 < omega_min < omega_max):
        raise ValueError(f"need 0 < omega_min < omega_max, got [{omega_min}, {omega_max}]")
    if n < 2:
        raise ValueError(f"need at least 2 sample points, got {n}")

    omegas = np.logspace(math.log10(omega_min), math.log10(omega_max), n)
    samples = []
    for w in omegas:
        try:
            value = g.at_omega(float(w))
            samples.append(NyquistPoint(float(w), value.real, value.imag))
        except PoleOnAxis:
            samples.append(NyquistPoint(float(w), math.nan, math.nan))
    return NyquistCurve(samples=tuple(samples))
