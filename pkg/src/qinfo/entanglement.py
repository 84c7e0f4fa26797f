"""Schmidt decomposition and bipartite entanglement measures.

Negativity is computed from the partial transpose, ``(||rho^T_B||_1 - 1)/2``.
Substituting the reduced matrix ``rho_B`` for the partial transpose would give
``||rho_B||_1 = 1`` for every state and hence a negativity of zero everywhere,
so that reading is not offered.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .entropy import shannon_entropy, von_neumann_entropy
from .errors import DimensionError, DomainError
from .linalg import (
    SIGMA_Y,
    dagger,
    hermitian_eig,
    hermitian_matrix_function,
    partial_trace,
    partial_transpose,
    trace_norm,
)
from .states import DensityMatrix, as_density_matrix, as_pure_state, require_dims

SCHMIDT_ZERO = 1e-12
PPT_TOL = 1e-9
YY = np.kron(SIGMA_Y, SIGMA_Y)


@dataclass(frozen=True, eq=False)
class SchmidtDecomposition:
    """``|psi> = sum_n c_n |alpha_n> (x) |beta_n>``.

    ``coefficients`` are descending and strictly positive; ``basis_a`` and
    ``basis_b`` hold the matching vectors as columns.
    """

    coefficients: np.ndarray
    basis_a: np.ndarray
    basis_b: np.ndarray

    @property
    def rank(self) -> int:
        return self.coefficients.size

    def reconstruct(self) -> np.ndarray:
        return sum(
            c * np.kron(self.basis_a[:, n], self.basis_b[:, n])
            for n, c in enumerate(self.coefficients)
        )


def _split_pure(psi, dims) -> tuple[np.ndarray, int, int]:
    vec = as_pure_state(psi)
    if dims is None:
        raise DimensionError("a bipartite split (dim_a, dim_b) is required")
    dim_a, dim_b = int(dims[0]), int(dims[1])
    if dim_a < 1 or dim_b < 1 or dim_a * dim_b != vec.size:
        raise DimensionError(f"state of size {vec.size} does not split as {dim_a}x{dim_b}")
    return vec, dim_a, dim_b


def _phase_fix(v: np.ndarray) -> complex:
    """Phase that makes the largest-magnitude component of ``v`` real positive."""
    k = int(np.argmax(np.abs(v).round(12)))
    return np.conj(v[k]) / abs(v[k])


def schmidt_decompose(psi, dims) -> SchmidtDecomposition:
    """Schmidt decomposition of a bipartite pure state.

    The coefficients are the singular values of the ``dim_a x dim_b``
    amplitude matrix, equivalently the square roots of the eigenvalues of
    either reduced density matrix. Each ``alpha_n`` is rephased so its
    largest component is real positive, ``beta_n`` absorbs the inverse phase,
    and equal coefficients are ordered by their ``alpha_n`` components.
    """
    vec, dim_a, dim_b = _split_pure(psi, dims)
    u, s, vh = np.linalg.svd(vec.reshape(dim_a, dim_b), full_matrices=False)
    keep = s > SCHMIDT_ZERO
    u, s, vh = u[:, keep], s[keep], vh[keep]
    alphas, betas = [], []
    for n in range(s.size):
        phase = _phase_fix(u[:, n])
        alphas.append(u[:, n] * phase)
        betas.append(vh[n] / phase)

    def sort_key(n):
        comps = np.round(alphas[n], 9)
        return (-round(s[n], 12), *(-x for c in comps for x in (c.real, c.imag)))

    order = sorted(range(s.size), key=sort_key)
    return SchmidtDecomposition(
        s[order],
        np.column_stack([alphas[n] for n in order]),
        np.column_stack([betas[n] for n in order]),
    )


def schmidt_number(psi, dims, tol: float = 1e-10) -> int:
    """Number of Schmidt coefficients above ``tol``; above 1 means entangled."""
    return int(np.sum(schmidt_decompose(psi, dims).coefficients > tol))


def entanglement_entropy(psi, dims) -> float:
    """Von Neumann entropy of either reduced state of a bipartite pure state."""
    coeffs = schmidt_decompose(psi, dims).coefficients
    lam = coeffs**2
    return shannon_entropy(lam / lam.sum())


def _two_qubit(rho) -> DensityMatrix:
    r = as_density_matrix(rho)
    if r.dim != 4 or r.dims not in (None, (2, 2)):
        raise DimensionError(f"expected a two-qubit state, got dimension {r.dim} split {r.dims}")
    return r


def spin_flip(rho) -> np.ndarray:
    """``(sigma_y (x) sigma_y) rho* (sigma_y (x) sigma_y)``, conjugating in the computational basis."""
    m = np.asarray(rho, dtype=complex)
    return YY @ np.conj(m) @ YY


def fidelity_operator(rho) -> np.ndarray:
    """The Hermitian operator ``R = sqrt(sqrt(rho) rho~ sqrt(rho))``."""
    r = _two_qubit(rho).matrix
    root = hermitian_matrix_function(r, "sqrt")
    inner = root @ spin_flip(r) @ root
    return hermitian_matrix_function(0.5 * (inner + dagger(inner)), "sqrt")


def concurrence_eigenvalues(rho) -> np.ndarray:
    """Eigenvalues of ``R`` in descending order.

    Computed as the singular values of ``sqrt(rho) sqrt(rho~)``: since
    ``R^2`` equals that product times its adjoint, the two agree exactly,
    but taking square roots of the near-zero eigenvalues of ``R^2`` would
    amplify rounding to ~1e-8.
    """
    r = _two_qubit(rho).matrix
    root = hermitian_matrix_function(r, "sqrt")
    return np.linalg.svd(root @ spin_flip(root), compute_uv=False)


def concurrence(rho) -> float:
    """``max(0, l1 - l2 - l3 - l4)`` over the descending eigenvalues of ``R``."""
    lam = concurrence_eigenvalues(rho)
    return max(0.0, float(lam[0] - lam[1:].sum()))


def entanglement_of_formation_2q(rho) -> float:
    """Two-qubit entanglement of formation in nats, from the concurrence."""
    c = min(concurrence(rho), 1.0)
    root = math.sqrt(1 - c * c)
    return shannon_entropy([(1 + root) / 2, (1 - root) / 2])


def negativity(rho, dims=None) -> float:
    """``(||rho^{T_B}||_1 - 1) / 2``, zero for every separable state.

    The partial transpose is essential here. The same expression with the
    reduced state ``Tr_A rho`` in its place is identically zero, because a
    density matrix always has unit trace norm.
    """
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    value = (trace_norm(partial_transpose(r.matrix, dim_a, dim_b, "B")) - 1) / 2
    return max(0.0, value)


def partial_transpose_spectrum(rho, dims=None) -> np.ndarray:
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    return hermitian_eig(partial_transpose(r.matrix, dim_a, dim_b, "B")).eigenvalues


def is_ppt(rho, dims=None, tol: float = PPT_TOL) -> bool:
    """True when the partial transpose has no eigenvalue below ``-tol``."""
    return bool(partial_transpose_spectrum(rho, dims)[-1] >= -tol)


def separability_verdict(rho, dims=None, tol: float = PPT_TOL) -> str:
    """``"separable"``/``"entangled"`` for 2x2 and 2x3 systems, else ``"ppt"``/``"npt-entangled"``.

    The PPT test is necessary and sufficient only when ``dim_a * dim_b <= 6``;
    for larger systems a PPT state may still be entangled.
    """
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    ppt = is_ppt(r, (dim_a, dim_b), tol)
    if dim_a * dim_b <= 6:
        return "separable" if ppt else "entangled"
    return "ppt" if ppt else "npt-entangled"


# --- relative entropy of entanglement -------------------------------------

ER_MAX_LOCAL_DIM = 4
ER_DEFAULT_BUDGET = 1000
ER_DEFAULT_RESTARTS = 4
# weight of I/d mixed into every candidate; keeps sigma full rank and costs
# at most about 1e-12 in the bound
_ER_FLOOR = 1e-12


class _ProductEnsemble:
    """Separable ``sigma`` parametrized by softmax weights and unnormalized local kets.

    The parameter vector is ``[logits, Re a, Im a, Re b, Im b]`` for ``k``
    terms ``|a_i> (x) |b_i>``.
    """

    def __init__(self, rho: np.ndarray, dim_a: int, dim_b: int):
        self.rho = rho
        self.dim_a, self.dim_b = dim_a, dim_b
        self.terms = 2 * dim_a * dim_b

    @property
    def size(self) -> int:
        return self.terms * (1 + 2 * (self.dim_a + self.dim_b))

    def _split(self, x: np.ndarray):
        k, da, db = self.terms, self.dim_a, self.dim_b
        logits, rest = x[:k], x[k:]
        a = rest[: k * da] + 1j * rest[k * da : 2 * k * da]
        rest = rest[2 * k * da :]
        b = rest[: k * db] + 1j * rest[k * db :]
        return logits, a.reshape(k, da), b.reshape(k, db)

    def value_and_grad(self, x: np.ndarray) -> tuple[float, np.ndarray]:
        """``-Tr(rho ln sigma)`` and its gradient in the real parameters."""
        logits, a, b = self._split(x)
        q = np.exp(logits - logits.max())
        q /= q.sum()
        norm_a = np.maximum(np.linalg.norm(a, axis=1), 1e-150)
        norm_b = np.maximum(np.linalg.norm(b, axis=1), 1e-150)
        a, b = a / norm_a[:, None], b / norm_b[:, None]
        kets = np.einsum("ki,kj->kij", a, b).reshape(self.terms, -1)
        d = kets.shape[1]
        qe = (1 - _ER_FLOOR) * q
        sigma = (kets.T * qe) @ np.conj(kets) + (_ER_FLOOR / d) * np.eye(d)
        lam, vecs = np.linalg.eigh(0.5 * (sigma + dagger(sigma)))
        lam = np.maximum(lam, 1e-300)
        log_lam = np.log(lam)
        rho_eig = dagger(vecs) @ self.rho @ vecs
        value = -float(rho_eig.diagonal().real @ log_lam)

        # Frechet derivative of ln at sigma, applied to rho: divided differences
        gap = lam[:, None] - lam[None, :]
        close = np.abs(gap) <= 1e-12 * np.maximum(lam[:, None], lam[None, :])
        div = np.where(
            close,
            1 / np.maximum(lam[:, None], lam[None, :]),
            (log_lam[:, None] - log_lam[None, :]) / np.where(close, 1.0, gap),
        )
        g = vecs @ (rho_eig * div) @ dagger(vecs)

        g_kets = kets @ g.T  # row i holds (G |psi_i>)^T
        h = np.einsum("kd,kd->k", np.conj(kets), g_kets).real
        grad_logits = -qe * (h - q @ h)
        g_kets = g_kets.reshape(self.terms, self.dim_a, self.dim_b)
        c_a = np.einsum("kij,kj->ki", g_kets, np.conj(b))
        c_b = np.einsum("kij,ki->kj", g_kets, np.conj(a))
        w_a = (c_a - h[:, None] * a) * (-2 * qe / norm_a)[:, None]
        w_b = (c_b - h[:, None] * b) * (-2 * qe / norm_b)[:, None]
        grad = np.concatenate(
            [grad_logits, w_a.real.ravel(), w_a.imag.ravel(), w_b.real.ravel(), w_b.imag.ravel()]
        )
        return value, grad


def _refine(ensemble: _ProductEnsemble, budget: int, rng: np.random.Generator) -> float:
    """Smallest ``-Tr(rho ln sigma)`` seen in the first ``budget`` evaluations.

    L-BFGS's evaluation sequence does not depend on its evaluation cap, so a
    larger budget sees a superset of the points a smaller one sees.
    """
    x0 = np.concatenate(
        [np.zeros(ensemble.terms), rng.normal(size=ensemble.size - ensemble.terms)]
    )
    best = math.inf
    calls = 0

    def fun(x):
        nonlocal best, calls
        value, grad = ensemble.value_and_grad(x)
        calls += 1
        if calls <= max(budget, 1):
            best = min(best, value)
        return value, grad

    if budget == 0:
        fun(x0)
    else:
        minimize(
            fun,
            x0,
            jac=True,
            method="L-BFGS-B",
            options={"maxfun": budget, "maxiter": 10 * budget, "ftol": 1e-13, "gtol": 1e-9},
        )
    return best


def relative_entropy_of_entanglement_ub(
    rho,
    dims=None,
    budget: int = ER_DEFAULT_BUDGET,
    seed: int = 0,
    restarts: int = ER_DEFAULT_RESTARTS,
) -> float:
    """Upper bound on the relative entropy of entanglement.

    Minimizes ``S(rho || sigma)`` over separable ``sigma = sum_i q_i
    |a_i><a_i| (x) |b_i><b_i|`` with ``2 * dim_a * dim_b`` terms, using
    L-BFGS with the analytic gradient. Each restart starts from a random
    product ensemble drawn from its own child seed and may evaluate the
    objective ``budget`` times; the smallest value over restarts is returned.

    The bound never increases with ``budget`` because a longer run only
    extends the shorter run's evaluation sequence. Any feasible ``sigma``
    gives an upper bound; the true minimum is not certified.
    """
    r = as_density_matrix(rho)
    dim_a, dim_b = require_dims(r, dims)
    if max(dim_a, dim_b) > ER_MAX_LOCAL_DIM:
        raise DimensionError(
            f"relative entropy of entanglement is limited to local dimension "
            f"{ER_MAX_LOCAL_DIM}, got {dim_a}x{dim_b}"
        )
    if budget < 0 or restarts < 1:
        raise DomainError("budget must be >= 0 and restarts >= 1")
    ensemble = _ProductEnsemble(r.matrix, dim_a, dim_b)
    children = np.random.SeedSequence(seed).spawn(restarts)
    cross = min(_refine(ensemble, budget, np.random.default_rng(child)) for child in children)
    return max(cross - von_neumann_entropy(r), 0.0)


def reduced_spectra(psi, dims) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of ``rho_A`` and ``rho_B`` for a bipartite pure state."""
    vec, dim_a, dim_b = _split_pure(psi, dims)
    rho = np.outer(vec, np.conj(vec))
    spec_a = hermitian_eig(partial_trace(rho, dim_a, dim_b, "A")).eigenvalues
    spec_b = hermitian_eig(partial_trace(rho, dim_a, dim_b, "B")).eigenvalues
    return np.clip(spec_a, 0, None), np.clip(spec_b, 0, None)
