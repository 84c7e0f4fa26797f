"""Dense complex linear algebra used by every other module.

Bipartite index convention: row index ``i_a * dim_b + i_b``, so subsystem A
is the slower-varying index and ``|0>_A |1>_B`` maps to basis index 1.
"""

from __future__ import annotations

from typing import Callable, Literal, NamedTuple

import numpy as np

from .errors import DimensionError, NegativeEigenvalueError, NotHermitianError

HERMITIAN_TOL = 1e-8
CLIP_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)

Subsystem = Literal["A", "B"]


class HermitianSpectrum(NamedTuple):
    """Eigenvalues in descending order and matching eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-D complex array."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise DimensionError(f"expected a 2-D matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DimensionError("matrix has non-finite entries")
    return arr


def as_square(m) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(m).T


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    arr = np.asarray(m)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and bool(
        np.max(np.abs(arr - dagger(arr)), initial=0.0) <= tol
    )


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def _check_bipartite(m, dim_a: int, dim_b: int) -> np.ndarray:
    arr = as_square(m)
    if dim_a < 1 or dim_b < 1 or arr.shape[0] != dim_a * dim_b:
        raise DimensionError(
            f"matrix of size {arr.shape[0]} does not split as {dim_a}x{dim_b}"
        )
    return arr


def partial_trace(m, dim_a: int, dim_b: int, keep: Subsystem = "A") -> np.ndarray:
    """Trace out one subsystem of a bipartite operator.

    Args:
        m: square matrix of size ``dim_a * dim_b``.
        dim_a: dimension of subsystem A.
        dim_b: dimension of subsystem B.
        keep: which subsystem survives, ``"A"`` or ``"B"``.

    Returns:
        The reduced matrix of the kept subsystem.
    """
    arr = _check_bipartite(m, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    if keep == "A":
        return np.einsum("ijkj->ik", arr)
    if keep == "B":
        return np.einsum("ijil->jl", arr)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(m, dim_a: int, dim_b: int, on: Subsystem = "B") -> np.ndarray:
    """Transpose the indices of one subsystem only."""
    arr = _check_bipartite(m, dim_a, dim_b).reshape(dim_a, dim_b, dim_a, dim_b)
    if on == "B":
        out = arr.transpose(0, 3, 2, 1)
    elif on == "A":
        out = arr.transpose(2, 1, 0, 3)
    else:
        raise ValueError(f"on must be 'A' or 'B', got {on!r}")
    return out.reshape(dim_a * dim_b, dim_a * dim_b)


def hermitian_eig(m, tol: float = HERMITIAN_TOL) -> HermitianSpectrum:
    """Diagonalize a Hermitian matrix.

    Eigenvalues come back in descending order; this is the convention used
    throughout the package.

    Raises:
        NotHermitianError: if ``max|m - m^dagger|`` exceeds ``tol``.
    """
    arr = as_square(m)
    if not is_hermitian(arr, tol):
        err = float(np.max(np.abs(arr - dagger(arr))))
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {err:.3g})")
    # symmetrize so eigh sees an exactly Hermitian input
    vals, vecs = np.linalg.eigh(0.5 * (arr + dagger(arr)))
    return HermitianSpectrum(vals[::-1].copy(), vecs[:, ::-1].copy())


def _sqrt(vals: np.ndarray) -> np.ndarray:
    if np.any(vals < -CLIP_TOL):
        raise NegativeEigenvalueError(
            f"sqrt of a matrix with eigenvalue {vals.min():.3g} < 0"
        )
    return np.sqrt(np.clip(vals, 0.0, None))


def _log(vals: np.ndarray) -> np.ndarray:
    # restricted to the support: eigenvalues at or below tolerance are dropped
    out = np.zeros_like(vals)
    support = vals > CLIP_TOL
    out[support] = np.log(vals[support])
    return out


_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {"sqrt": _sqrt, "log": _log}


def hermitian_matrix_function(m, f: str | Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its spectrum.

    ``f`` is ``"sqrt"``, ``"log"`` or any vectorized callable. ``"sqrt"``
    clips eigenvalues in ``[-1e-9, 0)`` to zero and rejects anything more
    negative; ``"log"`` acts on the support only, mapping the kernel to 0.
    """
    func = _FUNCTIONS[f] if isinstance(f, str) else f
    vals, vecs = hermitian_eig(m)
    return (vecs * func(vals)) @ dagger(vecs)


def trace_norm(m) -> float:
    """Sum of singular values, ``Tr sqrt(m^dagger m)``."""
    return float(np.sum(np.linalg.svd(as_square(m), compute_uv=False)))


def max_abs(m) -> float:
    return float(np.max(np.abs(np.asarray(m)), initial=0.0))
