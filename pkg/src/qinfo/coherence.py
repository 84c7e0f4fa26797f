"""Basis-dependent coherence and subsystem correlation diagnostics."""

from __future__ import annotations

import numpy as np

from .entropy import von_neumann_entropy
from .errors import DimensionError
from .linalg import as_square, dagger, partial_trace
from .states import DensityMatrix, as_density_matrix, check_unitary, require_dims

UNCORRELATED_TOL = 1e-8


def _basis(rho: DensityMatrix, basis) -> np.ndarray:
    if basis is None:
        return np.eye(rho.dim, dtype=complex)
    u = check_unitary(basis)
    if u.shape[0] != rho.dim:
        raise DimensionError(f"basis of size {u.shape[0]} for state of size {rho.dim}")
    return u


def in_basis(rho, basis=None) -> np.ndarray:
    """Matrix elements ``<m1|rho|m2>`` for the columns ``|m>`` of ``basis``."""
    r = as_density_matrix(rho)
    u = _basis(r, basis)
    return dagger(u) @ r.matrix @ u


def dephase(rho, basis=None) -> DensityMatrix:
    """Drop every off-diagonal element in ``basis`` (computational by default)."""
    r = as_density_matrix(rho)
    u = _basis(r, basis)
    diag = np.diag(np.diag(dagger(u) @ r.matrix @ u))
    return DensityMatrix(u @ diag @ dagger(u), r.dims)


def l1_coherence(rho, basis=None) -> float:
    """Sum of the magnitudes of the off-diagonal elements in ``basis``."""
    m = in_basis(rho, basis)
    off = ~np.eye(m.shape[0], dtype=bool)
    return float(np.sum(np.abs(m[off])))


def relative_entropy_coherence(rho, basis=None) -> float:
    """``S(dephase(rho)) - S(rho)``."""
    r = as_density_matrix(rho)
    value = von_neumann_entropy(dephase(r, basis)) - von_neumann_entropy(r)
    return 0.0 if -1e-12 < value < 0 else value


def two_point_correlator(rho, o_a, o_b, dims=None) -> tuple[complex, complex]:
    """Plain and connected correlators of local operators.

    Returns ``<O_A O_B>`` and ``<O_A O_B> - <O_A><O_B>``. The operators need
    not be Hermitian, so both values are complex.
    """
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    op_a, op_b = as_square(o_a), as_square(o_b)
    if op_a.shape[0] != dim_a or op_b.shape[0] != dim_b:
        raise DimensionError(
            f"operators of size {op_a.shape[0]} and {op_b.shape[0]} "
            f"for a {dim_a}x{dim_b} system"
        )
    m = r.matrix
    plain = complex(np.trace(m @ np.kron(op_a, op_b)))
    mean_a = complex(np.trace(m @ np.kron(op_a, np.eye(dim_b))))
    mean_b = complex(np.trace(m @ np.kron(np.eye(dim_a), op_b)))
    return plain, plain - mean_a * mean_b


def reduced_states(rho, dims=None) -> tuple[np.ndarray, np.ndarray]:
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    return (
        partial_trace(r.matrix, dim_a, dim_b, "A"),
        partial_trace(r.matrix, dim_a, dim_b, "B"),
    )


def is_uncorrelated(rho, dims=None, tol: float = UNCORRELATED_TOL) -> bool:
    """Whether ``rho`` equals the product of its marginals elementwise within ``tol``."""
    r = as_density_matrix(rho)
    rho_a, rho_b = reduced_states(r, dims)
    return bool(np.max(np.abs(r.matrix - np.kron(rho_a, rho_b))) < tol)
