"""Density matrices: construction, validation and state-level scalars."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, ValidationError
from .linalg import (
    CLIP_TOL,
    HERMITIAN_TOL,
    HermitianSpectrum,
    as_square,
    dagger,
    hermitian_eig,
)

NORM_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9

Spectrum = HermitianSpectrum


def density_violations(m: np.ndarray, dims: tuple[int, int] | None = None) -> list[str]:
    """Every density-matrix condition that ``m`` fails, as readable strings."""
    problems = []
    herm_err = float(np.max(np.abs(m - dagger(m)), initial=0.0))
    if herm_err > HERMITIAN_TOL:
        problems.append(f"not Hermitian (max |rho - rho^dagger| = {herm_err:.3g})")
    else:
        lowest = float(np.linalg.eigvalsh(0.5 * (m + dagger(m)))[0])
        if lowest < -PSD_TOL:
            problems.append(f"not positive semi-definite (eigenvalue {lowest:.6g})")
    tr = np.trace(m)
    if abs(tr - 1) >= TRACE_TOL:
        problems.append(f"trace is {tr.real:.12g}{tr.imag:+.3g}j, expected 1")
    if dims is not None and dims[0] * dims[1] != m.shape[0]:
        problems.append(f"split {dims[0]}x{dims[1]} does not match dimension {m.shape[0]}")
    return problems


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated Hermitian, positive semi-definite, unit-trace operator.

    ``dims`` optionally records a bipartite split ``(dim_a, dim_b)``.
    Instances convert to arrays with ``np.asarray``.
    """

    matrix: np.ndarray
    dims: tuple[int, int] | None = None

    def __post_init__(self):
        m = as_square(self.matrix).copy()
        dims = None if self.dims is None else (int(self.dims[0]), int(self.dims[1]))
        problems = density_violations(m, dims)
        if problems:
            raise ValidationError("density matrix", problems)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", dims)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    def with_dims(self, dims: tuple[int, int] | None) -> "DensityMatrix":
        return DensityMatrix(self.matrix, dims)

    def __repr__(self):
        return f"DensityMatrix(dim={self.dim}, dims={self.dims})"


def as_density_matrix(rho, dims: tuple[int, int] | None = None) -> DensityMatrix:
    """Return ``rho`` as a DensityMatrix, validating raw arrays.

    An explicit ``dims`` overrides whatever split ``rho`` carries.
    """
    if isinstance(rho, DensityMatrix):
        if dims is None or tuple(dims) == rho.dims:
            return rho
        return rho.with_dims(dims)
    return DensityMatrix(np.asarray(rho, dtype=complex), dims)


def require_dims(rho: DensityMatrix, dims: tuple[int, int] | None) -> tuple[int, int]:
    """Resolve the bipartite split from the argument or the state's metadata."""
    if dims is None:
        dims = rho.dims
    if dims is None:
        raise DimensionError("a bipartite split (dim_a, dim_b) is required")
    dim_a, dim_b = int(dims[0]), int(dims[1])
    if dim_a * dim_b != rho.dim:
        raise DimensionError(f"split {dim_a}x{dim_b} does not match dimension {rho.dim}")
    return dim_a, dim_b


def as_pure_state(psi) -> np.ndarray:
    """Check that ``psi`` is a normalized 1-D amplitude vector."""
    vec = np.asarray(psi, dtype=complex)
    if vec.ndim != 1 or vec.size == 0:
        raise DimensionError(f"a pure state must be a non-empty 1-D vector, got shape {vec.shape}")
    if not np.all(np.isfinite(vec)):
        raise ValidationError("pure state", ["non-finite amplitude"])
    norm = float(np.vdot(vec, vec).real)
    if abs(norm - 1) > NORM_TOL:
        raise ValidationError("pure state", [f"squared norm is {norm:.12g}, expected 1"])
    return vec


def ket(bits: str, dim: int = 2) -> np.ndarray:
    """Computational basis vector from a digit string, e.g. ``ket("01")``."""
    index = 0
    for digit in bits:
        index = index * dim + int(digit, dim)
    vec = np.zeros(dim ** len(bits), dtype=complex)
    vec[index] = 1
    return vec


def maximally_mixed(n: int) -> DensityMatrix:
    return DensityMatrix(np.eye(n, dtype=complex) / n)


def from_pure(psi, dims: tuple[int, int] | None = None) -> DensityMatrix:
    """``|psi><psi|``; a global phase on ``psi`` drops out."""
    vec = as_pure_state(psi)
    return DensityMatrix(np.outer(vec, np.conj(vec)), dims)


def _check_weights(weights: Sequence[float]) -> np.ndarray:
    p = np.asarray(weights, dtype=float)
    problems = []
    if p.ndim != 1 or p.size == 0:
        raise DimensionError("weights must be a non-empty list")
    if np.any(p < 0):
        problems.append(f"negative weight {p.min():.3g}")
    if abs(p.sum() - 1) > NORM_TOL:
        problems.append(f"weights sum to {p.sum():.12g}, expected 1")
    if problems:
        raise ValidationError("probability weights", problems)
    return p


def from_ensemble(
    ensemble: Iterable[tuple[float, np.ndarray]], dims: tuple[int, int] | None = None
) -> DensityMatrix:
    """``sum_i p_i |psi_i><psi_i|`` for ``(p_i, psi_i)`` pairs.

    Member states need not be orthogonal.
    """
    entries = list(ensemble)
    if not entries:
        raise DimensionError("empty ensemble")
    p = _check_weights([w for w, _ in entries])
    vecs = [as_pure_state(v) for _, v in entries]
    if len({v.size for v in vecs}) != 1:
        raise DimensionError("ensemble members have different dimensions")
    m = sum(w * np.outer(v, np.conj(v)) for w, v in zip(p, vecs))
    return DensityMatrix(m, dims)


def convex_combine(weights: Sequence[float], states: Sequence) -> DensityMatrix:
    """Incoherent mixture ``sum_i p_i rho_i``."""
    p = _check_weights(weights)
    rhos = [as_density_matrix(s) for s in states]
    if len(rhos) != p.size:
        raise DimensionError(f"{p.size} weights for {len(rhos)} states")
    if len({r.dim for r in rhos}) != 1:
        raise DimensionError("states have different dimensions")
    m = sum(w * r.matrix for w, r in zip(p, rhos))
    return DensityMatrix(m, rhos[0].dims)


def expectation(rho, o) -> complex:
    """``Tr(O rho)``; real up to rounding when ``O`` is Hermitian."""
    r = as_density_matrix(rho)
    op = as_square(o)
    if op.shape[0] != r.dim:
        raise DimensionError(f"operator of size {op.shape[0]} on state of size {r.dim}")
    return complex(np.trace(op @ r.matrix))


def purity(rho) -> float:
    """``Tr(rho^2)``, between ``1/N`` and 1."""
    m = as_density_matrix(rho).matrix
    # Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
    return float(np.sum(np.abs(m) ** 2))


def spectrum(rho) -> Spectrum:
    """Eigen-decomposition with eigenvalues clipped into a probability vector."""
    vals, vecs = hermitian_eig(as_density_matrix(rho).matrix)
    vals = np.where((vals < 0) & (vals >= -CLIP_TOL), 0.0, vals)
    return Spectrum(vals, vecs)


def check_unitary(u, tol: float = HERMITIAN_TOL) -> np.ndarray:
    mat = as_square(u)
    err = float(np.max(np.abs(dagger(mat) @ mat - np.eye(mat.shape[0]))))
    if err > tol:
        raise ValidationError("basis", [f"not unitary (max |U^dagger U - I| = {err:.3g})"])
    return mat


def ipr(psi, basis=None) -> float:
    """Inverse participation ratio ``sum_x |<x|psi>|^4``.

    Args:
        psi: normalized amplitude vector.
        basis: unitary whose columns are the site states ``|x>``;
            the computational basis when omitted.
    """
    vec = as_pure_state(psi)
    if basis is not None:
        u = check_unitary(basis)
        if u.shape[0] != vec.size:
            raise DimensionError(f"basis of size {u.shape[0]} for state of size {vec.size}")
        vec = dagger(u) @ vec
    return float(np.sum(np.abs(vec) ** 4))
