import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qinfo import (
    BlochVector,
    DimensionError,
    DomainError,
    bloch_spectrum,
    from_angles,
    from_bloch,
    from_pure,
    purity,
    spectrum,
    to_bloch,
    von_neumann_entropy,
)

from conftest import PLUS
from oracles import random_rho

angles = st.tuples(st.floats(0, math.pi), st.floats(0, 2 * math.pi, exclude_max=True))
ball = st.tuples(
    st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)
).filter(lambda v: sum(c * c for c in v) <= 1)


def test_from_angles_examples():
    np.testing.assert_allclose(from_angles(0, 0), [1, 0])
    np.testing.assert_allclose(from_angles(math.pi, 0), [0, 1], atol=1e-16)
    psi = from_angles(math.pi / 2, 0)
    np.testing.assert_allclose(psi, PLUS)
    np.testing.assert_allclose(to_bloch(from_pure(psi)).as_array(), [1, 0, 0], atol=1e-15)


@pytest.mark.parametrize("theta,phi", [(-0.1, 0), (math.pi + 0.1, 0), (0, 2 * math.pi), (0, -1)])
def test_from_angles_range(theta, phi):
    with pytest.raises(DomainError):
        from_angles(theta, phi)


def test_to_bloch_examples():
    assert to_bloch(np.eye(2) / 2).as_array().tolist() == [0, 0, 0]
    assert to_bloch(np.diag([1, 0])).as_array().tolist() == [0, 0, 1]
    np.testing.assert_allclose(to_bloch(from_pure(PLUS)).as_array(), [1, 0, 0], atol=1e-15)
    with pytest.raises(DimensionError):
        to_bloch(np.eye(4) / 4)


def test_from_bloch_examples():
    np.testing.assert_allclose(from_bloch((0, 0, 0)).matrix, np.eye(2) / 2)
    np.testing.assert_allclose(from_bloch((0, 0, 1)).matrix, np.diag([1, 0]))
    with pytest.raises(DomainError):
        from_bloch((0.8, 0.8, 0))


def test_length_renormalization():
    v = BlochVector(0, 0, 1 + 5e-10)
    assert v.rz == 1
    with pytest.raises(DomainError):
        BlochVector(0, 0, 1 + 1e-6)
    with pytest.raises(DomainError):
        BlochVector(float("nan"), 0, 0)


@settings(max_examples=200, deadline=None)
@given(ball)
def test_round_trip_and_purity(r):
    rho = from_bloch(r)
    np.testing.assert_allclose(to_bloch(rho).as_array(), r, atol=1e-10)
    length2 = sum(c * c for c in r)
    assert purity(rho) == pytest.approx((1 + length2) / 2, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(angles)
def test_angles_match_unit_vector(tp):
    theta, phi = tp
    unit = (math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta))
    np.testing.assert_allclose(from_pure(from_angles(theta, phi)).matrix, from_bloch(unit).matrix, atol=1e-10)


def test_bloch_spectrum_examples():
    vals, vecs = bloch_spectrum((0, 0, 1))
    np.testing.assert_allclose(vals, [1, 0])
    np.testing.assert_allclose(vecs[:, 0], [1, 0], atol=1e-15)
    vals, _ = bloch_spectrum((0.6, 0, 0.8))
    np.testing.assert_allclose(vals, [1, 0], atol=1e-15)
    vals, vecs = bloch_spectrum((0, 0, 0.5))
    np.testing.assert_allclose(vals, [0.75, 0.25])
    assert abs(abs(vecs[0, 0]) - 1) < 1e-15
    assert abs(abs(vecs[1, 1]) - 1) < 1e-15
    with pytest.raises(DomainError):
        bloch_spectrum((0, 0, 0))


def test_bloch_spectrum_near_pole():
    r = (0.0, 2.0**-24, 0.375)
    vals, vecs = bloch_spectrum(r)
    rho = from_bloch(r).matrix
    for k in range(2):
        np.testing.assert_allclose(rho @ vecs[:, k], vals[k] * vecs[:, k], rtol=0, atol=1e-15)


@settings(max_examples=200, deadline=None)
@given(ball.filter(lambda v: sum(c * c for c in v) > 1e-6))
def test_bloch_spectrum_is_eigensystem(r):
    vals, vecs = bloch_spectrum(r)
    rho = from_bloch(r).matrix
    np.testing.assert_allclose(vals, spectrum(rho).eigenvalues, atol=1e-9)
    assert abs(np.vdot(vecs[:, 0], vecs[:, 1])) < 1e-12
    for k in range(2):
        np.testing.assert_allclose(rho @ vecs[:, k], vals[k] * vecs[:, k], atol=1e-12)


def test_entropy_decreases_with_length(rng):
    direction = rng.normal(size=3)
    direction /= np.linalg.norm(direction)
    lengths = np.linspace(0, 1, 21)
    entropies = [von_neumann_entropy(from_bloch(t * direction)) for t in lengths]
    assert entropies[0] == pytest.approx(math.log(2))
    assert entropies[-1] == pytest.approx(0, abs=1e-12)
    assert np.all(np.diff(entropies) < 0)


def test_random_states_have_short_vectors(rng):
    for _ in range(100):
        assert to_bloch(random_rho(rng, 2)).length <= 1 + 1e-12
