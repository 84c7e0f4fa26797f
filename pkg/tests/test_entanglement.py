import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qinfo import (
    DensityMatrix,
    DimensionError,
    DomainError,
    concurrence,
    entanglement_entropy,
    entanglement_of_formation_2q,
    from_pure,
    is_ppt,
    negativity,
    relative_entropy_of_entanglement_ub,
    schmidt_decompose,
    schmidt_number,
    separability_verdict,
)
from qinfo.entanglement import concurrence_eigenvalues, fidelity_operator, reduced_spectra
from qinfo.linalg import partial_trace

from conftest import PHI_PLUS, RHO1, RHO2, SINGLET, werner
from oracles import (
    binary_entropy,
    concurrence_oracle,
    concurrence_wootters,
    haar_unitary,
    negativity_oracle,
    random_pure,
    random_rho,
    random_separable,
)

PSI1 = 0.5 * np.array([1, -1, 1, -1])
seeds = st.integers(0, 2**32 - 1)


def test_schmidt_examples():
    dec = schmidt_decompose(PSI1, (2, 2))
    np.testing.assert_allclose(dec.coefficients, [1])
    dec = schmidt_decompose(PHI_PLUS, (2, 2))
    np.testing.assert_allclose(dec.coefficients, [1 / math.sqrt(2)] * 2)
    x = 0.3
    dec = schmidt_decompose([x, 0, 0, math.sqrt(1 - x * x)], (2, 2))
    np.testing.assert_allclose(dec.coefficients, [math.sqrt(1 - x * x), x])


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), seeds)
def test_schmidt_invariants(da, db, seed):
    rng = np.random.default_rng(seed)
    psi = random_pure(rng, da * db)
    dec = schmidt_decompose(psi, (da, db))
    assert dec.rank <= min(da, db)
    assert np.all(np.diff(dec.coefficients) <= 0)
    assert abs(np.sum(dec.coefficients**2) - 1) < 1e-10
    np.testing.assert_allclose(dec.basis_a.conj().T @ dec.basis_a, np.eye(dec.rank), atol=1e-12)
    np.testing.assert_allclose(dec.basis_b.conj().T @ dec.basis_b, np.eye(dec.rank), atol=1e-12)
    assert np.max(np.abs(dec.reconstruct() - psi)) < 1e-9
    rho = np.outer(psi, psi.conj())
    lam = np.sort(np.linalg.eigvalsh(partial_trace(rho, da, db, "B")))[::-1][: dec.rank]
    np.testing.assert_allclose(dec.coefficients**2, lam, atol=1e-9)


def test_schmidt_phase_convention_is_deterministic():
    psi = np.exp(0.7j) * PHI_PLUS
    a = schmidt_decompose(psi, (2, 2))
    b = schmidt_decompose(PHI_PLUS, (2, 2))
    np.testing.assert_allclose(a.basis_a, b.basis_a)
    for n in range(a.rank):
        col = a.basis_a[:, n]
        top = col[np.argmax(np.abs(col))]
        assert abs(top.imag) < 1e-15 and top.real > 0
    np.testing.assert_allclose(a.reconstruct(), psi, atol=1e-15)


def test_schmidt_dimension_errors():
    with pytest.raises(DimensionError):
        schmidt_decompose(PHI_PLUS, (2, 3))
    with pytest.raises(DimensionError):
        schmidt_decompose(PHI_PLUS, None)


def test_schmidt_number_examples(rng):
    product = np.kron(random_pure(rng, 2), random_pure(rng, 3))
    assert schmidt_number(product, (2, 3)) == 1
    assert schmidt_number(PHI_PLUS, (2, 2)) == 2
    ghz3 = np.zeros(9)
    ghz3[[0, 4, 8]] = 1 / math.sqrt(3)
    assert schmidt_number(ghz3, (3, 3)) == 3


def test_entanglement_entropy_examples():
    assert entanglement_entropy([0.5, 0, 0, math.sqrt(0.75)], (2, 2)) == pytest.approx(0.562, abs=5e-4)
    assert entanglement_entropy(PHI_PLUS, (2, 2)) == pytest.approx(0.693, abs=5e-4)
    assert entanglement_entropy(PSI1, (2, 2)) == pytest.approx(0, abs=1e-10)


def test_entanglement_entropy_bounds_and_symmetry(rng):
    for da, db in [(2, 3), (3, 3), (4, 2)]:
        psi = random_pure(rng, da * db)
        s = entanglement_entropy(psi, (da, db))
        assert 0 <= s <= math.log(min(da, db)) + 1e-12
        swapped = psi.reshape(da, db).T.ravel()
        assert entanglement_entropy(swapped, (db, da)) == pytest.approx(s, abs=1e-12)
        spec_a, spec_b = reduced_spectra(psi, (da, db))
        k = min(da, db)
        np.testing.assert_allclose(spec_a[:k], spec_b[:k], atol=1e-9)


def test_concurrence_examples(rng):
    product = np.kron(random_pure(rng, 2), random_pure(rng, 2))
    assert concurrence(from_pure(product)) == pytest.approx(0, abs=1e-8)
    assert concurrence(RHO2) == pytest.approx(1, abs=1e-12)
    np.testing.assert_allclose(concurrence_eigenvalues(RHO2), [1, 0, 0, 0], atol=1e-12)
    for p in np.arange(0, 1.01, 0.2):
        assert concurrence(werner(p)) == pytest.approx(max(0, (3 * p - 1) / 2), abs=1e-8)


def test_concurrence_against_oracles(rng):
    for _ in range(200):
        rho = random_rho(rng, 4, int(rng.integers(2, 5)))
        c = concurrence(rho)
        assert 0 <= c <= 1
        assert c == pytest.approx(concurrence_oracle(rho), abs=1e-7)
        assert c == pytest.approx(concurrence_wootters(rho), abs=1e-7)


def test_fidelity_operator_eigenvalues_match(rng):
    rho = random_rho(rng, 4)
    lam = np.sort(np.linalg.eigvalsh(fidelity_operator(rho)))[::-1]
    np.testing.assert_allclose(lam, concurrence_eigenvalues(rho), atol=1e-10)


def test_concurrence_requires_two_qubits():
    with pytest.raises(DimensionError):
        concurrence(np.eye(3) / 3)
    with pytest.raises(DimensionError):
        concurrence(DensityMatrix(np.eye(4) / 4, (1, 4)))


def test_entanglement_of_formation(rng):
    assert entanglement_of_formation_2q(RHO1) == pytest.approx(0, abs=1e-12)
    assert entanglement_of_formation_2q(RHO2) == pytest.approx(math.log(2), abs=1e-12)
    for _ in range(100):
        psi = random_pure(rng, 4)
        assert entanglement_of_formation_2q(from_pure(psi)) == pytest.approx(
            entanglement_entropy(psi, (2, 2)), abs=1e-8
        )
    c = concurrence(werner(0.8))
    expected = binary_entropy((1 + math.sqrt(1 - c * c)) / 2)
    assert entanglement_of_formation_2q(werner(0.8)) == pytest.approx(expected, abs=1e-12)


def test_negativity_examples(rng):
    product = np.kron(random_rho(rng, 2), random_rho(rng, 3))
    assert negativity(product, (2, 3)) == pytest.approx(0, abs=1e-12)
    assert negativity(RHO2, (2, 2)) == pytest.approx(0.5, abs=1e-12)
    for p in (0.4, 0.7, 1.0):
        assert negativity(werner(p), (2, 2)) == pytest.approx((3 * p - 1) / 4, abs=1e-12)
    with pytest.raises(DimensionError):
        negativity(RHO2)


@pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 3)])
def test_negativity_against_oracle(rng, da, db):
    for _ in range(50):
        rho = random_rho(rng, da * db, int(rng.integers(1, da * db + 1)))
        assert negativity(rho, (da, db)) == pytest.approx(negativity_oracle(rho, da, db), abs=1e-10)
        sep = random_separable(rng, dims=(da, db))
        assert negativity(sep, (da, db)) < 1e-10


def test_is_ppt_examples():
    assert is_ppt(RHO1, (2, 2))
    assert not is_ppt(RHO2, (2, 2))
    assert is_ppt(werner(1 / 3), (2, 2))
    assert not is_ppt(werner(0.4), (2, 2))
    assert separability_verdict(RHO1, (2, 2)) == "separable"
    assert separability_verdict(RHO2, (2, 2)) == "entangled"
    assert separability_verdict(np.eye(9) / 9, (3, 3)) == "ppt"
    ghz3 = np.zeros(9)
    ghz3[[0, 4, 8]] = 1 / math.sqrt(3)
    assert separability_verdict(from_pure(ghz3), (3, 3)) == "npt-entangled"


def test_negativity_and_ppt_agree(rng):
    for _ in range(200):
        rho = random_rho(rng, 4, int(rng.integers(1, 5)))
        assert (negativity(rho, (2, 2)) > 1e-9) == (not is_ppt(rho, (2, 2)))


def test_relative_entropy_of_entanglement_examples():
    assert relative_entropy_of_entanglement_ub(DensityMatrix(RHO1, (2, 2))) <= 1e-3
    bell = from_pure(SINGLET, (2, 2))
    assert relative_entropy_of_entanglement_ub(bell) == pytest.approx(math.log(2), abs=1e-2)


def test_relative_entropy_of_entanglement_properties(rng):
    rho = DensityMatrix(random_rho(rng, 4, 2), (2, 2))
    values = [relative_entropy_of_entanglement_ub(rho, budget=b, seed=5) for b in (0, 10, 100, 400)]
    assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))
    assert all(v >= 0 for v in values)
    again = relative_entropy_of_entanglement_ub(rho, budget=100, seed=5)
    assert again == values[2]
    # for pure states the exact value is the entanglement entropy
    psi = random_pure(rng, 4)
    bound = relative_entropy_of_entanglement_ub(from_pure(psi, (2, 2)), budget=500)
    assert bound >= entanglement_entropy(psi, (2, 2)) - 1e-9


def test_relative_entropy_of_entanglement_qubit_qutrit(rng):
    sep = DensityMatrix(random_separable(rng, terms=2, dims=(2, 3)), (2, 3))
    assert relative_entropy_of_entanglement_ub(sep, budget=1000) <= 1e-3


def test_relative_entropy_of_entanglement_errors():
    with pytest.raises(DimensionError):
        relative_entropy_of_entanglement_ub(np.eye(10) / 10, (5, 2))
    with pytest.raises(DomainError):
        relative_entropy_of_entanglement_ub(DensityMatrix(RHO1, (2, 2)), budget=-1)


def test_local_unitary_invariance(rng):
    for _ in range(50):
        rho = random_rho(rng, 4)
        u = np.kron(haar_unitary(rng, 2), haar_unitary(rng, 2))
        out = u @ rho @ u.conj().T
        assert concurrence(out) == pytest.approx(concurrence(rho), abs=1e-8)
        assert negativity(out, (2, 2)) == pytest.approx(negativity(rho, (2, 2)), abs=1e-8)
        assert entanglement_of_formation_2q(out) == pytest.approx(
            entanglement_of_formation_2q(rho), abs=1e-7
        )
