"""Quantum-information numerics: density matrices, measurement, entropy,
entanglement, witnesses, coherence and correlation."""

from .bloch import BlochVector, bloch_spectrum, from_angles, from_bloch, to_bloch
from .coherence import (
    dephase,
    is_uncorrelated,
    l1_coherence,
    reduced_states,
    relative_entropy_coherence,
    two_point_correlator,
)
from .entanglement import (
    SchmidtDecomposition,
    concurrence,
    entanglement_entropy,
    entanglement_of_formation_2q,
    is_ppt,
    negativity,
    relative_entropy_of_entanglement_ub,
    schmidt_decompose,
    schmidt_number,
    separability_verdict,
)
from .entropy import relative_entropy, shannon_entropy, surprisal, von_neumann_entropy
from .errors import (
    DimensionError,
    DomainError,
    NegativeEigenvalueError,
    NotHermitianError,
    QInfoError,
    ValidationError,
)
from .linalg import (
    I2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    hermitian_eig,
    hermitian_matrix_function,
    partial_trace,
    partial_transpose,
    tensor_product,
    trace_norm,
)
from .measurement import (
    KrausSet,
    MeasurementOutcome,
    POVMSet,
    PVMSet,
    apply_pvm,
    measure_general,
    observable_to_pvm,
    povm_from_kraus,
    povm_probabilities,
    validate_kraus,
    validate_povm,
    validate_pvm,
)
from .states import (
    DensityMatrix,
    convex_combine,
    expectation,
    from_ensemble,
    from_pure,
    ipr,
    ket,
    maximally_mixed,
    purity,
    spectrum,
)
from .witness import LinearWitness, chsh_witness, evaluate_witness, spin_correlator

__version__ = "0.1.0"
