"""Chattering analysis toolkit for relay feedback through a slow actuator.

Predicts limit-cycle amplitude and frequency with describing-function
harmonic balance, measures them in fixed-step simulation, and compares the
two for static and dynamic sliding-manifold designs. An HTTP service
(:mod:`chatterbench.service`) and a thin CLI (:mod:`chatterbench.cli`) wrap
the library for scenario runs, Nyquist exports and manifold tuning.
"""

from .errors import (
    ChatterbenchError,
    ConfigError,
    ConstantSignal,
    ConvergenceFailure,
    DegenerateInput,
    DegenerateManifold,
    Infeasible,
    InvalidManifold,
    NoCrossing,
    NonFiniteState,
    NonNegativeF,
    NonPositiveAmplitude,
    PoleOnAxis,
    TooFewPeriods,
)
from .harmonic_balance import (
    LimitCyclePrediction,
    NyquistCurve,
    NyquistPoint,
    PredictionMethod,
    closed_form_dsm_limit,
    closed_form_ssm,
    describing_function,
    nyquist_sample,
    solve_limit_cycle_numeric,
)
from .metrics import ComparisonRow, OscillationReport, compare, measure_oscillation
from .models import (
    DynamicManifold,
    ManifoldSpec,
    PlantParams,
    StabilityReport,
    StateSpace,
    StaticManifold,
    build_state_space,
    check_stability,
    sigma_transfer,
    state_space_to_tf,
    x_transfer,
)
from .ratfun import Polynomial, TransferFunction, hurwitz_stable, poly_eval, poly_roots, tf_eval
from .simulator import DEFAULT_X0, SimConfig, TimeSeries, default_sim_config, initial_state, simulate

__version__ = "0.1.0"
