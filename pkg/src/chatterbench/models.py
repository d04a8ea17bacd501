"""Plant, actuator and sliding-manifold models.

The controlled plant is the scalar integrator ``x' = u`` driven through a
critically damped second-order actuator with time constant ``tau``. Replacing
the relay output by an auxiliary input turns the loop into a linear system
whose transfer function is built here twice, on purpose:

* directly from the closed-form coefficient expressions, and
* from the state-space matrices via Faddeev-LeVerrier (:func:`state_space_to_tf`),

so each path can validate the other.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import InvalidManifold
from .ratfun import Polynomial, TransferFunction, hurwitz_stable

__all__ = [
    "PlantParams",
    "StaticManifold",
    "DynamicManifold",
    "ManifoldSpec",
    "StateSpace",
    "StabilityReport",
    "build_state_space",
    "sigma_transfer",
    "x_transfer",
    "loop_cubic",
    "check_stability",
    "state_space_to_tf",
]


@dataclass(frozen=True)
class PlantParams:
    """Relay gain ``k`` (> 0) and actuator time constant ``tau`` in seconds (> 0)."""

    k: float
    tau: float

    def __post_init__(self):
        if not self.k > 0.0:
            raise ValueError(f"control gain k must be > 0, got {self.k}")
        if not self.tau > 0.0:
            raise ValueError(f"actuator time constant tau must be > 0, got {self.tau}")


@dataclass(frozen=True)
class StaticManifold:
    """Memoryless sliding variable sigma = x."""


@dataclass(frozen=True)
class DynamicManifold:
    """First-order filter manifold: z' = f*z + g*x, sigma = h*z + l*x.

    ``l`` must be nonzero so the relative degree from ``x`` to ``sigma``
    stays one.
    """

    f: float
    g: float
    h: float
    l: float

    def __post_init__(self):
        if self.l == 0.0:
            raise InvalidManifold("dynamic manifold requires l != 0")


ManifoldSpec = Union[StaticManifold, DynamicManifold]


@dataclass(frozen=True)
class StateSpace:
    """Linear system (A, B, C) with named states, single input, single output."""

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    state_labels: tuple[str, ...]

    def __post_init__(self):
        n = len(self.state_labels)
        if self.a.shape != (n, n) or self.b.shape != (n,) or self.c.shape != (n,):
            raise ValueError(
                f"inconsistent dimensions: A{self.a.shape}, B{self.b.shape}, "
                f"C{self.c.shape} for {n} states"
            )


@dataclass(frozen=True)
class StabilityReport:
    """Design-constraint checks for a manifold choice.

    For the static manifold the first two flags are vacuously true; the loop
    denominator flag always refers to the non-integrator factor of the
    partially closed loop.
    """

    f_negative: bool
    reduced_order_stable: bool
    loop_denominator_hurwitz: bool

    @property
    def overall(self) -> bool:
        return self.f_negative and self.reduced_order_stable and self.loop_denominator_hurwitz


def build_state_space(p: PlantParams, m: ManifoldSpec) -> StateSpace:
    """Partially closed loop with the relay replaced by an auxiliary input.

    Static manifold: states (x, xi1, xi2), output sigma = x.
    Dynamic manifold: states (z, x, xi1, xi2), output sigma = h*z + l*x.
    """
    tau = p.tau
    if isinstance(m, StaticManifold):
        a = np.array(
            [
                [0.0, 1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, -1.0 / tau**2, -2.0 / tau],
            ]
        )
        b = np.array([0.0, 0.0, -p.k / tau**2])
        c = np.array([1.0, 0.0, 0.0])
        return StateSpace(a, b, c, ("x", "xi1", "xi2"))

    f, g, h, l = m.f, m.g, m.h, m.l
    lt2 = l * tau**2
    a = np.array(
        [
            [f, g, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [-h * f / lt2, -h * g / lt2, -1.0 / tau**2, -2.0 / tau],
        ]
    )
    b = np.array([0.0, 0.0, 0.0, -p.k / lt2])
    c = np.array([h, l, 0.0, 0.0])
    return StateSpace(a, b, c, ("z", "x", "xi1", "xi2"))


def _dynamic_denominator(p: PlantParams, m: DynamicManifold) -> Polynomial:
    # s * (l tau^2 s^3 + a2 s^2 + a1 s + (g h - f l)) in ascending coefficients
    tau, f, g, h, l = p.tau, m.f, m.g, m.h, m.l
    a2 = 2.0 * l * tau - f * l * tau**2
    a1 = l - 2.0 * f * l * tau
    return Polynomial((0.0, g * h - f * l, a1, a2, l * tau**2))


def sigma_transfer(p: PlantParams, m: ManifoldSpec) -> TransferFunction:
    """Transfer function from the auxiliary input to the sliding variable.

    Static: ``-K / (s (tau^2 s^2 + 2 tau s + 1))``.
    Dynamic: ``-K (g h - f l + l s) / (s (l tau^2 s^3 + a2 s^2 + a1 s + g h - f l))``
    with ``a2 = 2 l tau - f l tau^2`` and ``a1 = l - 2 f l tau``. Coefficients
    are written down in closed form, not realized numerically.
    """
    if isinstance(m, StaticManifold):
        tau = p.tau
        num = Polynomial((-p.k,))
        den = Polynomial((0.0, 1.0, 2.0 * tau, tau**2))
        return TransferFunction(num, den)

    num = Polynomial((-p.k * (m.g * m.h - m.f * m.l), -p.k * m.l))
    return TransferFunction(num, _dynamic_denominator(p, m))


def x_transfer(p: PlantParams, m: ManifoldSpec) -> TransferFunction:
    """Transfer function from the auxiliary input to the plant state ``x``.

    For the static manifold ``x`` is the sliding variable, so this equals
    :func:`sigma_transfer`. For the dynamic manifold the numerator becomes
    ``K (f - s)`` over the same loop denominator.
    """
    if isinstance(m, StaticManifold):
        return sigma_transfer(p, m)
    num = Polynomial((p.k * m.f, -p.k))
    return TransferFunction(num, _dynamic_denominator(p, m))


def loop_cubic(p: PlantParams, m: ManifoldSpec) -> Polynomial:
    """Non-integrator factor of the loop denominator (the pole at s = 0 is
    structural and excluded from stability checks)."""
    full = sigma_transfer(p, m).denominator
    # denominator is s * q(s) by construction: shift coefficients down by one
    return Polynomial(full.coeffs[1:])


def check_stability(p: PlantParams, m: ManifoldSpec) -> StabilityReport:
    """Evaluate every design stability constraint independently.

    Dynamic manifold: ``f < 0`` (the manifold filter itself), the reduced
    sliding dynamics ``f - g h / l < 0``, and the Hurwitz property of the
    loop-denominator cubic. Static manifold: the first two hold vacuously.
    """
    if isinstance(m, StaticManifold):
        return StabilityReport(
            f_negative=True,
            reduced_order_stable=True,
            loop_denominator_hurwitz=hurwitz_stable(loop_cubic(p, m)),
        )
    return StabilityReport(
        f_negative=m.f < 0.0,
        reduced_order_stable=m.f - m.g * m.h / m.l < 0.0,
        loop_denominator_hurwitz=hurwitz_stable(loop_cubic(p, m)),
    )


def state_space_to_tf(ss: StateSpace) -> TransferFunction:
    """Transfer function ``C (sI - A)^{-1} B`` via Faddeev-LeVerrier.

    The characteristic polynomial and the adjugate expansion are produced by
    the same recurrence, so numerator and denominator come out as exact
    rational expressions in the matrix entries (up to floating rounding).
    Serves as the independent oracle for the closed-form constructions.
    """
    a, b, c = ss.a, ss.b, ss.c
    n = a.shape[0]
    ident = np.eye(n)

    den_desc = [1.0]  # characteristic polynomial, descending powers
    num_desc = []  # C M_k B, descending powers of the adjugate expansion
    m_k = ident.copy()
    for k in range(1, n + 1):
        num_desc.append(float(c @ m_k @ b))
        coeff = -np.trace(a @ m_k) / k
        den_desc.append(float(coeff))
        m_k = a @ m_k + coeff * ident

    return TransferFunction(
        Polynomial(tuple(reversed(num_desc))),
        Polynomial(tuple(reversed(den_desc))),
    )
