"""Real polynomials and rational transfer functions in the Laplace variable.

Coefficients are stored in ascending powers of ``s`` (index = power), which
keeps Horner evaluation and degree bookkeeping trivial. The module also
provides a Routh-array Hurwitz test and a companion-matrix root finder; the
two are kept independent on purpose so one can serve as the oracle for the
other in the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, DegenerateInput, PoleOnAxis

__all__ = [
    "Polynomial",
    "TransferFunction",
    "poly_eval",
    "tf_eval",
    "hurwitz_stable",
    "poly_roots",
]

# Routh pivots below this fraction of the row magnitude count as zero, i.e.
# the polynomial is treated as not strictly Hurwitz.
_ROUTH_PIVOT_REL = 1e-12

# |den(i*omega)| below this absolute threshold counts as a pole on the axis.
_POLE_ABS_THRESHOLD = 1e-300

_ROOT_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class Polynomial:
    """Real-coefficient polynomial, ascending powers of s.

    Trailing zero coefficients are trimmed on construction, so the leading
    (highest-power) stored coefficient of a nonzero polynomial is nonzero.
    The zero polynomial stores an empty coefficient tuple and has degree -1.
    """

    coeffs: tuple[float, ...]

    def __init__(self, coefficients):
        coeffs = [float(c) for c in coefficients]
        if not all(math.isfinite(c) for c in coeffs):
            raise ValueError(f"polynomial coefficients must be finite, got {coeffs}")
        while coeffs and coeffs[-1] == 0.0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> float:
        """Leading coefficient; 0.0 for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else 0.0

    def __call__(self, s: complex) -> complex:
        """Evaluate at ``s`` by Horner's rule."""
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * s + c
        return acc

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [0.0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        out = [0.0] * n
        for i, a in enumerate(self.coeffs):
            out[i] += a
        for j, b in enumerate(other.coeffs):
            out[j] += b
        return Polynomial(out)

    def scaled(self, factor: float) -> "Polynomial":
        return Polynomial(tuple(factor * c for c in self.coeffs))


@dataclass(frozen=True)
class TransferFunction:
    """Rational function ``numerator / denominator``.

    Stored unreduced: no pole-zero cancellation is attempted, so structural
    factors (such as a pure integrator pole) stay visible to callers.
    """

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        if self.denominator.is_zero:
            raise ValueError("transfer function denominator must not be the zero polynomial")

    @property
    def strictly_proper(self) -> bool:
        return self.numerator.degree < self.denominator.degree

    def __call__(self, s: complex) -> complex:
        den = self.denominator(s)
        if abs(den) < _POLE_ABS_THRESHOLD:
            raise PoleOnAxis(f"denominator vanishes at s = {s!r}")
        return self.numerator(s) / den

    def at_omega(self, omega: float) -> complex:
        """Frequency response value at ``s = i*omega`` (``omega`` in rad/s, > 0)."""
        if not omega > 0.0:
            raise ValueError(f"omega must be positive, got {omega}")
        return self(1j * omega)


def poly_eval(p: Polynomial, s: complex) -> complex:
    """Evaluate ``p`` at the complex point ``s``."""
    return p(s)


def tf_eval(g: TransferFunction, omega: float) -> complex:
    """Evaluate ``g`` on the imaginary axis at angular frequency ``omega`` > 0.

    Raises
    ------
    PoleOnAxis
        If ``|denominator(i*omega)|`` falls below 1e-300.
    """
    return g.at_omega(omega)


def hurwitz_stable(p: Polynomial) -> bool:
    """Routh-array test: True iff every root of ``p`` has Re < 0.

    Marginal cases (a Routh pivot within 1e-12 of the row magnitude, which
    covers imaginary-axis roots and row degeneracies) return False: only
    strict Hurwitz polynomials pass.

    Raises
    ------
    DegenerateInput
        For the zero polynomial or degree 0.
    """
    n = p.degree
    if n < 1:
        raise DegenerateInput(f"Hurwitz test needs degree >= 1, got degree {n}")

    desc = list(reversed(p.coeffs))  # descending powers
    if desc[0] < 0.0:
        desc = [-c for c in desc]  # roots unchanged; normalizes first column sign

    if n == 1:
        return desc[1] > 0.0

    width = (n + 2) // 2
    row0 = [desc[i] if i < len(desc) else 0.0 for i in range(0, n + 1, 2)]
    row1 = [desc[i] if i < len(desc) else 0.0 for i in range(1, n + 1, 2)]
    row0 += [0.0] * (width - len(row0))
    row1 += [0.0] * (width - len(row1))

    rows = [row0, row1]
    for _ in range(n - 1):
        prev2, prev1 = rows[-2], rows[-1]
        pivot = prev1[0]
        row_max = max(abs(v) for v in prev1)
        if row_max == 0.0 or abs(pivot) < _ROUTH_PIVOT_REL * row_max:
            return False
        new = [
            (pivot * prev2[j + 1] - prev2[0] * prev1[j + 1]) / pivot
            for j in range(width - 1)
        ] + [0.0]
        rows.append(new)

    first_column = [r[0] for r in rows]
    scale = max(abs(v) for v in first_column)
    return all(v > _ROUTH_PIVOT_REL * scale for v in first_column)


def poly_roots(p: Polynomial) -> list[complex]:
    """All complex roots of ``p`` (multiplicity by repetition).

    Uses companion-matrix eigenvalues and then checks the backward error of
    every root: ``|p(r)| / sum_k |c_k| |r|**k`` must not exceed 1e-8.

    Raises
    ------
    DegenerateInput
        If ``p`` has degree < 1.
    ConvergenceFailure
        If any root fails the residual check; the computed roots are attached
        to the exception as ``partial_roots``.
    """
    if p.degree < 1:
        raise DegenerateInput(f"root finding needs degree >= 1, got degree {p.degree}")

    roots = [complex(r) for r in np.roots(list(reversed(p.coeffs)))]
    bad = []
    for r in roots:
        mag = abs(r)
        denom = sum(abs(c) * mag**k for k, c in enumerate(p.coeffs))
        residual = abs(p(r)) / denom if denom > 0.0 else abs(p(r))
        if not residual <= _ROOT_RESIDUAL_TOL:
            bad.append((r, residual))
    if bad:
        raise ConvergenceFailure(
            f"{len(bad)} root(s) exceed residual tolerance {_ROOT_RESIDUAL_TOL}: {bad}",
            partial_roots=roots,
        )
    return roots
