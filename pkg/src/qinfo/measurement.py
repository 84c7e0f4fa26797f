"""Projective, general (Kraus) and POVM measurements on density matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import (
    as_square,
    dagger,
    hermitian_eig,
    hermitian_matrix_function,
)
from .states import DensityMatrix, as_density_matrix, check_unitary

SET_TOL = 1e-8
DEGENERACY_TOL = 1e-8
ZERO_PROBABILITY = 1e-12


def _operators(ops: Sequence, what: str) -> list[np.ndarray]:
    mats = [as_square(op) for op in ops]
    if not mats:
        raise ValidationError(what, ["no operators given"])
    if len({m.shape for m in mats}) != 1:
        raise DimensionError(f"{what} operators have different shapes")
    return mats


def _labels(labels, n: int) -> tuple:
    if labels is None:
        return tuple(range(n))
    labels = tuple(labels)
    if len(labels) != n:
        raise DimensionError(f"{len(labels)} labels for {n} operators")
    return labels


def _deviation(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.max(np.abs(a - b)))


@dataclass(frozen=True, eq=False)
class PVMSet:
    projectors: tuple[np.ndarray, ...]
    labels: tuple[Hashable, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]


@dataclass(frozen=True, eq=False)
class KrausSet:
    operators: tuple[np.ndarray, ...]
    labels: tuple[Hashable, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]


@dataclass(frozen=True, eq=False)
class POVMSet:
    effects: tuple[np.ndarray, ...]
    labels: tuple[Hashable, ...] = field(default=())

    @property
    def dim(self) -> int:
        return self.effects[0].shape[0]


@dataclass(frozen=True, eq=False)
class MeasurementOutcome:
    """One outcome of a general measurement.

    ``post_state`` is None when the probability is below 1e-12.
    """

    label: Hashable
    probability: float
    post_state: DensityMatrix | None


def validate_pvm(projectors: Sequence, labels=None, tol: float = SET_TOL) -> PVMSet:
    """Check Hermiticity, orthogonality and completeness of a projector set.

    Raises:
        ValidationError: listing every violated condition.
    """
    if isinstance(projectors, PVMSet):
        return projectors
    mats = _operators(projectors, "PVM")
    n = mats[0].shape[0]
    problems = []
    for k, p in enumerate(mats):
        if _deviation(p, dagger(p)) > tol:
            problems.append(f"hermiticity: P[{k}] is not Hermitian")
    for k, p in enumerate(mats):
        for j, q in enumerate(mats):
            expected = p if j == k else np.zeros_like(p)
            if j >= k and _deviation(p @ q, expected) > tol:
                kind = "idempotent" if j == k else "orthogonal"
                problems.append(f"orthogonality: P[{k}] P[{j}] is not {kind}")
    if _deviation(sum(mats), np.eye(n)) > tol:
        problems.append("completeness: projectors do not sum to the identity")
    if problems:
        raise ValidationError("PVM", problems)
    return PVMSet(tuple(mats), _labels(labels, len(mats)))


def validate_kraus(operators: Sequence, labels=None, tol: float = SET_TOL) -> KrausSet:
    if isinstance(operators, KrausSet):
        return operators
    mats = _operators(operators, "Kraus set")
    n = mats[0].shape[0]
    total = sum(dagger(m) @ m for m in mats)
    if _deviation(total, np.eye(n)) > tol:
        raise ValidationError("Kraus set", ["completeness: sum of M^dagger M is not the identity"])
    return KrausSet(tuple(mats), _labels(labels, len(mats)))


def validate_povm(effects: Sequence, labels=None, tol: float = SET_TOL) -> POVMSet:
    if isinstance(effects, POVMSet):
        return effects
    mats = _operators(effects, "POVM")
    n = mats[0].shape[0]
    problems = []
    for k, f in enumerate(mats):
        if _deviation(f, dagger(f)) > tol:
            problems.append(f"positivity: F[{k}] is not Hermitian")
        elif np.linalg.eigvalsh(0.5 * (f + dagger(f)))[0] < -tol:
            problems.append(f"positivity: F[{k}] has a negative eigenvalue")
    if _deviation(sum(mats), np.eye(n)) > tol:
        problems.append("completeness: effects do not sum to the identity")
    if problems:
        raise ValidationError("POVM", problems)
    return POVMSet(tuple(mats), _labels(labels, len(mats)))


def basis_pvm(basis=None, dim: int | None = None) -> PVMSet:
    """Rank-one projectors onto the columns of a unitary (computational if omitted)."""
    if basis is None:
        if dim is None:
            raise ValueError("give a basis or a dimension")
        u = np.eye(dim, dtype=complex)
    else:
        u = check_unitary(basis)
    projectors = tuple(np.outer(u[:, k], np.conj(u[:, k])) for k in range(u.shape[1]))
    return PVMSet(projectors, tuple(range(len(projectors))))


def observable_to_pvm(m, tol: float = DEGENERACY_TOL) -> tuple[PVMSet, np.ndarray]:
    """Spectral decomposition of a Hermitian observable.

    Eigenvalues closer than ``tol`` share one eigenspace projector. Labels
    are the group indices; the returned array holds the matching eigenvalues
    in descending order.
    """
    vals, vecs = hermitian_eig(m)
    groups: list[list[int]] = []
    for k, v in enumerate(vals):
        if groups and vals[groups[-1][0]] - v <= tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    projectors = tuple(vecs[:, g] @ dagger(vecs[:, g]) for g in groups)
    eigenvalues = np.array([vals[g].mean() for g in groups])
    return PVMSet(projectors, tuple(range(len(groups)))), eigenvalues


def _match(rho: DensityMatrix, dim: int):
    if rho.dim != dim:
        raise DimensionError(f"operators of size {dim} on a state of size {rho.dim}")


def apply_pvm(rho, pvm) -> DensityMatrix:
    """Non-selective projective measurement ``sum_m P_m rho P_m``."""
    r = as_density_matrix(rho)
    pvm = validate_pvm(pvm)
    _match(r, pvm.dim)
    out = sum(p @ r.matrix @ p for p in pvm.projectors)
    return DensityMatrix(out, r.dims)


def measure_general(rho, kraus) -> tuple[list[MeasurementOutcome], DensityMatrix]:
    """Outcome statistics and post-measurement states of a Kraus measurement.

    Returns:
        The per-outcome list (probability ``Tr(M rho M^dagger)`` and the
        normalized conditional state) and the averaged state
        ``sum_m M_m rho M_m^dagger``.
    """
    r = as_density_matrix(rho)
    kraus = validate_kraus(kraus)
    _match(r, kraus.dim)
    outcomes = []
    average = np.zeros_like(r.matrix)
    for label, op in zip(kraus.labels, kraus.operators):
        branch = op @ r.matrix @ dagger(op)
        average = average + branch
        p = float(np.trace(branch).real)
        post = DensityMatrix(branch / p, r.dims) if p >= ZERO_PROBABILITY else None
        outcomes.append(MeasurementOutcome(label, p, post))
    return outcomes, DensityMatrix(average, r.dims)


def povm_from_kraus(kraus) -> POVMSet:
    """Effects ``F_m = M_m^dagger M_m``."""
    kraus = validate_kraus(kraus)
    effects = tuple(dagger(m) @ m for m in kraus.operators)
    return POVMSet(effects, kraus.labels)


def kraus_from_povm(povm) -> KrausSet:
    """Recover measurement operators as principal square roots ``sqrt(F_m)``.

    Any ``U_m sqrt(F_m)`` with unitary ``U_m`` gives the same statistics;
    this picks ``U_m = I``.
    """
    povm = validate_povm(povm)
    ops = tuple(hermitian_matrix_function(f, "sqrt") for f in povm.effects)
    return KrausSet(ops, povm.labels)


def povm_probabilities(rho, povm) -> np.ndarray:
    """Outcome probabilities ``Tr(rho F_m)``."""
    r = as_density_matrix(rho)
    povm = validate_povm(povm)
    _match(r, povm.dim)
    probs = np.array([np.trace(r.matrix @ f).real for f in povm.effects])
    return probs
