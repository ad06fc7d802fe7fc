"""Commuting elliptic difference operators on bounded partitions.

A numerical toolkit for the finite family of commuting difference operators
acting on functions of partitions inside an n x m box: coefficient data,
dense operator matrices and their algebra, the joint spectrum with labels
carried analytically in the nome, monic polynomials on the spectrum, and an
independent Macdonald-polynomial oracle for the zero-nome degeneration.
"""

__version__ = "0.1.0"

from .coeffs import (
    ModelParams,
    hop_coefficient,
    lattice_weight,
    norm_constant,
    norm_vector,
    pieri_coefficient,
    weight_vector,
)
from .eigenpoly import (
    SpectralPolynomial,
    build_polynomials,
    dual_orthogonality_residual,
    evaluate_polynomial,
    pieri_residual,
    reconstruct_and_compare,
)
from .elliptic import ThetaEvaluator, bracket_trig
from .errors import (
    ComparisonError,
    ConsistencyError,
    ContinuationError,
    DegenerateSpecializationError,
    DegenerateSpectrumError,
    GenericityViolationError,
    LabelingError,
    NormalizationError,
    RlattError,
    TruncationViolationError,
)
from .macdonald import (
    SymmetricPoly,
    TrigComparison,
    compare_trig,
    macdonald_coeffs,
    principal_eigenfunction_value,
    trig_joint_eigenvalue,
)
from .operators import (
    LatticeOperator,
    adjoint_residual,
    build_antisymmetric_operator,
    build_hop_operator,
    build_symmetric_operator,
    commutator_residual,
    symmetrize,
    transpose_residual,
)
from .partitions import (
    LatticeBasis,
    add_strip,
    dominance_leq,
    enumerate_lattice,
    min_column,
    partition_to_weight,
    reduce_partition,
    vertical_strips,
    weight_to_partition,
)
from .spectral import (
    SpectralDatum,
    Spectrum,
    conjugate_pairing_residual,
    continue_labels,
    eigenvalue_curves,
    joint_diagonalize,
    label_spectrum,
    min_eigenvalue_gap,
    orthogonality_residual,
    second_difference_residual,
    sweep_spectra,
    unitarity_residual,
)
from .weightlattice import (
    crosscheck_hop_coefficients,
    rho_shift,
    strip_from_subset,
    translation_coefficient,
)
