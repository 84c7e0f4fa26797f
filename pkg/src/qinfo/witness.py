"""Linear entanglement witnesses and two-spin correlators."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DimensionError, DomainError, NotHermitianError
from .linalg import PAULI, as_square, is_hermitian
from .states import as_density_matrix

AXIS_TOL = 1e-6
VERDICT_TOL = 1e-9

Verdict = Literal["entangled", "inconclusive"]


def unit_axis(v) -> np.ndarray:
    """Validate a measurement direction.

    Vectors within 1e-6 of unit length are renormalized; others raise
    DomainError rather than being silently rescaled.
    """
    axis = np.asarray(v, dtype=float)
    if axis.shape != (3,) or not np.all(np.isfinite(axis)):
        raise DomainError(f"an axis is a finite 3-vector, got {v!r}")
    norm = float(np.linalg.norm(axis))
    if abs(norm - 1) > AXIS_TOL:
        raise DomainError(f"axis {axis.tolist()} has length {norm:.9g}, expected 1")
    return axis / norm


def spin_operator(axis) -> np.ndarray:
    """``n . sigma`` for a unit axis ``n``."""
    n = unit_axis(axis)
    return sum(c * s for c, s in zip(n, PAULI))


def spin_correlator(rho, alpha, beta) -> float:
    """``Tr(rho (alpha . sigma) (x) (beta . sigma))`` on a two-qubit state."""
    r = as_density_matrix(rho)
    if r.dim != 4:
        raise DimensionError(f"expected a two-qubit state, got dimension {r.dim}")
    op = np.kron(spin_operator(alpha), spin_operator(beta))
    return float(np.trace(r.matrix @ op).real)


@dataclass(frozen=True, eq=False)
class LinearWitness:
    operator: np.ndarray
    description: str = ""

    def __post_init__(self):
        w = as_square(self.operator)
        if not is_hermitian(w):
            raise NotHermitianError("a witness operator must be Hermitian")
        object.__setattr__(self, "operator", w)


# Axes for which the singlet violates the CHSH bound maximally.
GOOD_CHSH_AXES = (
    (0.0, 0.0, 1.0),
    (1.0, 0.0, 0.0),
    (-1 / math.sqrt(2), 0.0, -1 / math.sqrt(2)),
    (1 / math.sqrt(2), 0.0, -1 / math.sqrt(2)),
)


def chsh_witness(a1, a2, b1, b2) -> LinearWitness:
    """CHSH operator ``2I + A2 B2 - A1 B1 - A2 B1 - A1 B2``.

    Its expectation is nonnegative on every separable two-qubit state.
    """
    sa1, sa2, sb1, sb2 = (spin_operator(v) for v in (a1, a2, b1, b2))
    w = (
        2 * np.eye(4)
        + np.kron(sa2, sb2)
        - np.kron(sa1, sb1)
        - np.kron(sa2, sb1)
        - np.kron(sa1, sb2)
    )
    axes = ", ".join(
        f"{name}={np.round(unit_axis(v), 6).tolist()}"
        for name, v in zip(("a1", "a2", "b1", "b2"), (a1, a2, b1, b2))
    )
    return LinearWitness(w, f"CHSH witness ({axes})")


def evaluate_witness(w: LinearWitness, rho) -> tuple[float, Verdict]:
    """Expectation ``Tr(W rho)`` and what it certifies.

    A value below -1e-9 proves entanglement. Anything else is
    ``"inconclusive"``: a witness can never certify separability.
    """
    r = as_density_matrix(rho)
    if w.operator.shape[0] != r.dim:
        raise DimensionError(f"witness of size {w.operator.shape[0]} on state of size {r.dim}")
    value = float(np.trace(w.operator @ r.matrix).real)
    return value, ("entangled" if value < -VERDICT_TOL else "inconclusive")
