"""Fixed-step time-domain simulation of the discontinuous closed loop.

Classical RK4 with the relay evaluated inside every stage (``sign(0) = 0``).
The loop has relative degree three, so solutions cross the switching surface
as genuine fast oscillations rather than Zeno accumulations; a fixed step
keeps the sampled spectrum clean for the downstream frequency measurement.

Note on initial conditions: the all-zero state is an exact equilibrium of
these equations under ``sign(0) = 0`` (every derivative vanishes), so a
simulation started exactly at the origin stays there forever. The default
``x0`` is therefore a tiny nonzero offset; the limit cycle attracts from any
such perturbation and the offset is orders of magnitude below the chattering
amplitudes of interest.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateManifold, NonFiniteState
from .models import DynamicManifold, ManifoldSpec, PlantParams, StaticManifold, check_stability

__all__ = [
    "DEFAULT_X0",
    "SimConfig",
    "TimeSeries",
    "default_sim_config",
    "initial_state",
    "simulate",
]

DEFAULT_X0 = 1e-6

# Run-time guards: the chattering period is O(tau), so dt <= tau/50 keeps
# >= 100 steps per period; t_end >= 100 tau leaves room for a steady window.
_MAX_DT_FACTOR = 1.0 / 50.0
_MIN_T_END_FACTOR = 100.0
_REL_SLACK = 1e-9


@dataclass(frozen=True)
class SimConfig:
    """Step size, horizon, initial values and output decimation."""

    dt: float
    t_end: float
    x0: float = DEFAULT_X0
    xi0: tuple[float, float] = (0.0, 0.0)
    record_stride: int = 1

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not self.t_end > 0.0:
            raise ValueError(f"t_end must be > 0, got {self.t_end}")
        if int(self.record_stride) != self.record_stride or self.record_stride < 1:
            raise ValueError(f"record_stride must be a positive integer, got {self.record_stride}")
        if len(self.xi0) != 2:
            raise ValueError(f"xi0 must hold the two actuator states, got {self.xi0!r}")


def default_sim_config(p: PlantParams, **overrides) -> SimConfig:
    """Defaults: ``dt = tau/200`` and ``t_end = max(2 s, 500 tau)``.

    200 steps per actuator time constant resolves every chattering period by
    well over 100 samples; the horizon covers the transient plus at least 50
    steady-state periods. Keyword overrides replace individual fields.
    """
    values = {"dt": p.tau / 200.0, "t_end": max(2.0, 500.0 * p.tau)}
    values.update(overrides)
    return SimConfig(**values)


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled trajectories; ``z`` is present only for the dynamic manifold."""

    t: np.ndarray
    x: np.ndarray
    sigma: np.ndarray
    u_a: np.ndarray
    xi1: np.ndarray
    z: np.ndarray | None = None

    def __post_init__(self):
        n = self.t.shape[0]
        arrays = [self.x, self.sigma, self.u_a, self.xi1] + ([self.z] if self.z is not None else [])
        if any(a.shape != (n,) for a in arrays):
            raise ValueError("all recorded arrays must have the same length as t")

    def signal(self, name: str) -> np.ndarray:
        if name == "z":
            if self.z is None:
                raise KeyError("this time series has no z state (static manifold)")
            return self.z
        if name not in ("t", "x", "sigma", "u_a", "xi1"):
            raise KeyError(f"unknown signal {name!r}")
        return getattr(self, name)


def initial_state(p: PlantParams, m: ManifoldSpec, x0: float) -> tuple[float, ...]:
    """Initial combined state with the actuator at rest.

    The dynamic manifold starts with ``z0 = -l x0 / h`` so that
    ``sigma(t0) = 0``: the trajectory begins on the manifold and there is no
    reaching phase.
    """
    if isinstance(m, StaticManifold):
        return (x0, 0.0, 0.0)
    if m.h == 0.0:
        raise DegenerateManifold("h = 0: no z0 can place the state on the manifold")
    return (-m.l * x0 / m.h, x0, 0.0, 0.0)


def _sgn(v: float) -> float:
    if v > 0.0:
        return 1.0
    if v < 0.0:
        return -1.0
    return 0.0


def simulate(p: PlantParams, m: ManifoldSpec, cfg: SimConfig) -> TimeSeries:
    """Integrate the closed loop and record every ``record_stride``-th step.

    The relay control acts as the actuator input and is recomputed from the
    stage state inside every RK4 stage. A dynamic manifold failing its design
    stability checks triggers a warning, not an error, so unstable parameter
    choices remain explorable.

    Raises
    ------
    NonFiniteState
        If the state leaves the finite range; the exception carries the index
        of the last finite recorded sample.
    """
    tau = p.tau
    if cfg.dt > tau * _MAX_DT_FACTOR * (1.0 + _REL_SLACK):
        raise ValueError(f"dt = {cfg.dt} too coarse: must satisfy dt <= tau/50 = {tau / 50.0}")
    if cfg.t_end < tau * _MIN_T_END_FACTOR * (1.0 - _REL_SLACK):
        raise ValueError(f"t_end = {cfg.t_end} too short: must satisfy t_end >= 100 tau = {100 * tau}")

    if isinstance(m, DynamicManifold):
        if not check_stability(p, m).overall:
            warnings.warn(
                "dynamic manifold fails its design stability constraints; simulating anyway",
                stacklevel=2,
            )
        return _simulate_dynamic(p, m, cfg)
    return _simulate_static(p, cfg)


def _abort_if_nonfinite(state: tuple[float, ...], n_recorded: int):
    if not all(math.isfinite(s) for s in state):
        raise NonFiniteState(
            f"state became non-finite at recorded sample {n_recorded}",
            last_finite_index=n_recorded - 1,
        )


def _simulate_static(p: PlantParams, cfg: SimConfig) -> TimeSeries:
    k, dt = p.k, cfg.dt
    c1 = 1.0 / (p.tau * p.tau)
    c2 = 2.0 / p.tau
    half = 0.5 * dt
    sixth = dt / 6.0
    stride = cfg.record_stride
    n_steps = int(round(cfg.t_end / dt))

    x = cfg.x0
    v, w = cfg.xi0

    ts, xs, ua, xi1 = [0.0], [x], [-k * _sgn(x)], [v]

    for step in range(1, n_steps + 1):
        u1 = -k * _sgn(x)
        a1x, a1v, a1w = v, w, c1 * (u1 - v) - c2 * w

        x2, v2, w2 = x + half * a1x, v + half * a1v, w + half * a1w
        u2 = -k * _sgn(x2)
        a2x, a2v, a2w = v2, w2, c1 * (u2 - v2) - c2 * w2

        x3, v3, w3 = x + half * a2x, v + half * a2v, w + half * a2w
        u3 = -k * _sgn(x3)
        a3x, a3v, a3w = v3, w3, c1 * (u3 - v3) - c2 * w3

        x4, v4, w4 = x + dt * a3x, v + dt * a3v, w + dt * a3w
        u4 = -k * _sgn(x4)
        a4x, a4v, a4w = v4, w4, c1 * (u4 - v4) - c2 * w4

        x += sixth * (a1x + 2.0 * (a2x + a3x) + a4x)
        v += sixth * (a1v + 2.0 * (a2v + a3v) + a4v)
        w += sixth * (a1w + 2.0 * (a2w + a3w) + a4w)

        if step % stride == 0:
            _abort_if_nonfinite((x, v, w), len(ts))
            ts.append(step * dt)
            xs.append(x)
            ua.append(-k * _sgn(x))
            xi1.append(v)

    xs = np.asarray(xs)
    return TimeSeries(
        t=np.asarray(ts),
        x=xs,
        sigma=xs.copy(),
        u_a=np.asarray(ua),
        xi1=np.asarray(xi1),
    )


def _simulate_dynamic(p: PlantParams, m: DynamicManifold, cfg: SimConfig) -> TimeSeries:
    k, dt = p.k, cfg.dt
    f, g, h, l = m.f, m.g, m.h, m.l
    c1 = 1.0 / (p.tau * p.tau)
    c2 = 2.0 / p.tau
    half = 0.5 * dt
    sixth = dt / 6.0
    stride = cfg.record_stride
    n_steps = int(round(cfg.t_end / dt))

    z, x, _, _ = initial_state(p, m, cfg.x0)
    v, w = cfg.xi0

    def control(z_s: float, x_s: float) -> float:
        return -(k * _sgn(h * z_s + l * x_s) + h * f * z_s + h * g * x_s) / l

    ts, zs, xs, sig, ua, xi1 = [0.0], [z], [x], [h * z + l * x], [control(z, x)], [v]

    for step in range(1, n_steps + 1):
        u1 = control(z, x)
        a1z, a1x, a1v, a1w = f * z + g * x, v, w, c1 * (u1 - v) - c2 * w

        z2, x2, v2, w2 = z + half * a1z, x + half * a1x, v + half * a1v, w + half * a1w
        u2 = control(z2, x2)
        a2z, a2x, a2v, a2w = f * z2 + g * x2, v2, w2, c1 * (u2 - v2) - c2 * w2

        z3, x3, v3, w3 = z + half * a2z, x + half * a2x, v + half * a2v, w + half * a2w
        u3 = control(z3, x3)
        a3z, a3x, a3v, a3w = f * z3 + g * x3, v3, w3, c1 * (u3 - v3) - c2 * w3

        z4, x4, v4, w4 = z + dt * a3z, x + dt * a3x, v + dt * a3v, w + dt * a3w
        u4 = control(z4, x4)
        a4z, a4x, a4v, a4w = f * z4 + g * x4, v4, w4, c1 * (u4 - v4) - c2 * w4

        z += sixth * (a1z + 2.0 * (a2z + a3z) + a4z)
        x += sixth * (a1x + 2.0 * (a2x + a3x) + a4x)
        v += sixth * (a1v + 2.0 * (a2v + a3v) + a4v)
        w += sixth * (a1w + 2.0 * (a2w + a3w) + a4w)

        if step % stride == 0:
            _abort_if_nonfinite((z, x, v, w), len(ts))
            ts.append(step * dt)
            zs.append(z)
            xs.append(x)
            sig.append(h * z + l * x)
            ua.append(control(z, x))
            xi1.append(v)

    return TimeSeries(
        t=np.asarray(ts),
        x=np.asarray(xs),
        sigma=np.asarray(sig),
        u_a=np.asarray(ua),
        xi1=np.asarray(xi1),
        z=np.asarray(zs),
    )
