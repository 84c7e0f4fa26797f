"""Single-qubit Bloch-sphere geometry."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError
from .linalg import I2, PAULI
from .states import DensityMatrix, Spectrum, as_density_matrix

LENGTH_TOL = 1e-9
ZERO_TOL = 1e-12


@dataclass(frozen=True)
class BlochVector:
    """Real 3-vector with length at most 1.

    Lengths in ``(1, 1 + 1e-9]`` are pulled back onto the unit sphere;
    anything longer would not be positive semi-definite and is rejected.
    """

    rx: float
    ry: float
    rz: float

    def __post_init__(self):
        comps = np.array([self.rx, self.ry, self.rz], dtype=float)
        if not np.all(np.isfinite(comps)):
            raise DomainError("Bloch vector has non-finite components")
        r = float(np.linalg.norm(comps))
        if r > 1 + LENGTH_TOL:
            raise DomainError(f"Bloch vector length {r:.12g} exceeds 1")
        if r > 1:
            comps = comps / r
        for name, value in zip(("rx", "ry", "rz"), comps):
            object.__setattr__(self, name, float(value))

    @classmethod
    def of(cls, r) -> "BlochVector":
        if isinstance(r, BlochVector):
            return r
        rx, ry, rz = (float(c) for c in r)
        return cls(rx, ry, rz)

    @property
    def length(self) -> float:
        return math.sqrt(self.rx**2 + self.ry**2 + self.rz**2)

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])

    def angles(self) -> tuple[float, float]:
        """Polar angle in ``[0, pi]`` and azimuth in ``[0, 2 pi)`` of the direction."""
        r = self.length
        if r < ZERO_TOL:
            raise DomainError("the zero Bloch vector has no direction")
        # atan2 keeps full precision near the poles, where acos does not
        theta = math.atan2(math.hypot(self.rx, self.ry), self.rz)
        phi = math.atan2(self.ry, self.rx) % (2 * math.pi)
        if phi >= 2 * math.pi:
            phi = 0.0
        return theta, phi


def from_angles(theta: float, phi: float) -> np.ndarray:
    """``cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>``."""
    if not 0 <= theta <= math.pi:
        raise DomainError(f"theta={theta} outside [0, pi]")
    if not 0 <= phi < 2 * math.pi:
        raise DomainError(f"phi={phi} outside [0, 2 pi)")
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def to_bloch(rho) -> BlochVector:
    """Components ``Tr(sigma_a rho)`` for a = x, y, z."""
    r = as_density_matrix(rho)
    if r.dim != 2:
        raise DimensionError(f"Bloch vectors need a qubit, got dimension {r.dim}")
    comps = [float(np.trace(s @ r.matrix).real) for s in PAULI]
    return BlochVector(*comps)


def from_bloch(r) -> DensityMatrix:
    """``(I + r . sigma) / 2``."""
    vec = BlochVector.of(r)
    m = 0.5 * (I2 + sum(c * s for c, s in zip(vec.as_array(), PAULI)))
    return DensityMatrix(m)


def bloch_spectrum(r) -> Spectrum:
    """Eigenvalues ``(1 +- r)/2`` with eigenvectors ``|n>`` and ``|-n>``.

    ``|n>`` comes from :func:`from_angles` on the direction of ``r``;
    ``|-n>`` uses ``(pi - theta, phi + pi)``. The zero vector is rejected
    because it has no direction.
    """
    vec = BlochVector.of(r)
    theta, phi = vec.angles()
    length = vec.length
    up = from_angles(theta, phi)
    down = from_angles(math.pi - theta, (phi + math.pi) % (2 * math.pi))
    vals = np.array([(1 + length) / 2, (1 - length) / 2])
    return Spectrum(vals, np.column_stack([up, down]))
