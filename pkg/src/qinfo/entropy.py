"""Shannon, von Neumann and relative entropies, all in nats."""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionError, DomainError, ValidationError
from .linalg import hermitian_eig
from .states import as_density_matrix, spectrum

ZERO_EIG = 1e-12
SUPPORT_TOL = 1e-10
DIST_TOL = 1e-10


def as_distribution(p) -> np.ndarray:
    probs = np.asarray(p, dtype=float)
    if probs.ndim != 1 or probs.size == 0:
        raise DimensionError("a distribution is a non-empty 1-D list")
    problems = []
    if not np.all(np.isfinite(probs)):
        problems.append("non-finite probability")
    elif np.any(probs < 0):
        problems.append(f"negative probability {probs.min():.3g}")
    if abs(probs.sum() - 1) > DIST_TOL:
        problems.append(f"probabilities sum to {probs.sum():.12g}, expected 1")
    if problems:
        raise ValidationError("probability distribution", problems)
    return probs


def _xlogx_sum(values: np.ndarray) -> float:
    v = values[values > ZERO_EIG]
    return float(-np.sum(v * np.log(v)))


def shannon_entropy(p) -> float:
    """``-sum p ln p`` with ``0 ln 0 = 0``."""
    probs = as_distribution(p)
    return _xlogx_sum(probs) + 0.0


def surprisal(p: float) -> float:
    """Information ``-ln p`` gained by observing an event of probability ``p``."""
    if not 0 < p <= 1:
        raise DomainError(f"probability {p} outside (0, 1]")
    return -math.log(p) + 0.0


def von_neumann_entropy(rho) -> float:
    """Shannon entropy of the eigenvalue distribution of ``rho``."""
    vals = spectrum(rho).eigenvalues
    return _xlogx_sum(vals) + 0.0


def relative_entropy(rho, sigma) -> float:
    """``Tr(rho ln rho) - Tr(rho ln sigma)``, or ``inf`` if supports mismatch.

    Logarithms act on supports only. The result is infinite when some
    direction with ``sigma``-eigenvalue below 1e-10 carries more than
    1e-10 weight under ``rho``.
    """
    r = as_density_matrix(rho)
    s = as_density_matrix(sigma)
    if r.dim != s.dim:
        raise DimensionError(f"states of dimension {r.dim} and {s.dim}")
    s_vals, s_vecs = hermitian_eig(s.matrix)
    # weight of rho along each eigenvector of sigma
    weights = np.real(np.einsum("ik,ij,jk->k", np.conj(s_vecs), r.matrix, s_vecs))
    kernel = s_vals < SUPPORT_TOL
    if np.any(weights[kernel] > SUPPORT_TOL):
        return math.inf
    cross = float(np.sum(weights[~kernel] * np.log(s_vals[~kernel])))
    value = -von_neumann_entropy(r) - cross
    # rounding can push an exact zero slightly negative
    return 0.0 if -1e-12 < value < 0 else value

