"""Seeded random states, unitaries and Kraus channels."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .errors import DomainError
from .states import DensityMatrix


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pure(dim: int, seed=None) -> np.ndarray:
    """Normalized complex Gaussian vector (unitarily invariant)."""
    rng = _rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density(dim: int, rank: int | None = None, seed=None, dims=None) -> DensityMatrix:
    """``G G^dagger / Tr(G G^dagger)`` with ``G`` a ``dim x rank`` Ginibre matrix."""
    rank = dim if rank is None else rank
    if not 1 <= rank <= dim:
        raise DomainError(f"rank {rank} outside [1, {dim}]")
    rng = _rng(seed)
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ np.conj(g).T
    m = 0.5 * (m + np.conj(m).T)
    return DensityMatrix(m / np.trace(m).real, dims)


def random_unitary(dim: int, seed=None) -> np.ndarray:
    """Haar-distributed unitary."""
    rng = _rng(seed)
    if dim == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(dim, random_state=rng)


def random_product_pure(dims: tuple[int, int], seed=None) -> np.ndarray:
    rng = _rng(seed)
    return np.kron(random_pure(dims[0], rng), random_pure(dims[1], rng))


def random_separable(dims: tuple[int, int], terms: int, seed=None) -> DensityMatrix:
    """Random convex mixture of ``terms`` product pure states."""
    rng = _rng(seed)
    weights = rng.dirichlet(np.ones(terms))
    m = np.zeros((dims[0] * dims[1],) * 2, dtype=complex)
    for w in weights:
        v = random_product_pure(dims, rng)
        m += w * np.outer(v, np.conj(v))
    return DensityMatrix(m / np.trace(m).real, dims)


def random_kraus(dim: int, n_ops: int, seed=None) -> list[np.ndarray]:
    """Kraus operators cut from the first ``dim`` columns of a Haar unitary.

    The stacked operators form an isometry, so completeness holds exactly
    up to rounding.
    """
    u = random_unitary(dim * n_ops, seed)
    iso = u[:, :dim]
    return [iso[k * dim:(k + 1) * dim] for k in range(n_ops)]
