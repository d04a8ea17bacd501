"""Exception hierarchy shared by all chatterbench modules.

Every domain error derives from :class:`ChatterbenchError` so callers (and the
HTTP service layer) can distinguish expected analysis outcomes from bugs.
"""


class ChatterbenchError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateInput(ChatterbenchError):
    """Operation requires a nontrivial polynomial (degree >= 1)."""


class PoleOnAxis(ChatterbenchError):
    """Transfer function evaluated at (or numerically on) an imaginary-axis pole."""


class ConvergenceFailure(ChatterbenchError):
    """Root finding did not reach the requested residual.

    The roots computed so far are attached as ``partial_roots``.
    """

    def __init__(self, message: str, partial_roots=()):
        super().__init__(message)
        self.partial_roots = tuple(partial_roots)


class InvalidManifold(ChatterbenchError):
    """Dynamic manifold parameters violate a structural constraint (l != 0)."""


class DegenerateManifold(ChatterbenchError):
    """Dynamic manifold with h = 0 cannot place the filter state on the manifold."""


class NonPositiveAmplitude(ChatterbenchError):
    """Describing function requested at amplitude <= 0."""


class NonNegativeF(ChatterbenchError):
    """Closed-form dynamic-manifold prediction requires f < 0."""


class NoCrossing(ChatterbenchError):
    """The loop frequency response never crosses the positive real axis.

    This is the no-sustained-oscillation outcome, not a numerical failure.
    """


class MultipleCrossings(ChatterbenchError):
    """Reserved: more than one real-axis crossing was found.

    The numeric solver does not raise this; it selects the lowest frequency
    and reports every crossing on the prediction. The class exists so callers
    that want strictness can re-check ``prediction.crossings`` themselves.
    """


class NonFiniteState(ChatterbenchError):
    """Simulation state left the finite range; ``last_finite_index`` is the
    index of the last recorded finite sample."""

    def __init__(self, message: str, last_finite_index: int):
        super().__init__(message)
        self.last_finite_index = last_finite_index


class TooFewPeriods(ChatterbenchError):
    """Fewer than the required number of oscillation periods in the window."""


class ConstantSignal(ChatterbenchError):
    """Signal is constant over the analysis window; no oscillation to measure."""


class ConfigError(ChatterbenchError):
    """Scenario configuration could not be parsed or validated."""


class Infeasible(ChatterbenchError):
    """Tuning request cannot be satisfied by any admissible parameter."""
