"""Lower-triangular Toeplitz-like matrices with periodic subdiagonals and a
linearly increasing main diagonal: structured O(n*i) linear algebra, a
closed-form lower bound on the smallest singular value, and numerical
verification of the full derivation chain behind that bound.
"""

from .bounds import (
    BoundSequence,
    HypothesisVerdict,
    InverseColumn,
    TheoremBound,
    check_hypotheses,
    exponent_rational,
    inverse_first_column,
    omega,
    psi_phi,
    theorem_bound,
    theta,
)
from .errors import (
    ConfigError,
    DimensionMismatch,
    DimensionTooLarge,
    DomainError,
    HypothesisViolated,
    SingularDiagonal,
    ToeptriError,
)
from .matrix_core import (
    DENSE_CAP,
    MatrixSpec,
    Rational,
    forward_solve,
    materialize_dense,
    matvec,
    operation_counts,
    parse_rational,
    reset_operation_counts,
    transpose_solve,
)
from .proof_verifier import (
    CHECK_NAMES,
    CheckRecord,
    ProofTrace,
    build_proof_trace,
    check_gautschi,
    check_zeta_tail,
    log_gamma,
    zeta_tail_sum,
)
from .spectral import (
    SpectralReport,
    dense_gram_eigen_oracle,
    frobenius_inverse_norm,
    smallest_singular_value,
    spectral_report,
)

__version__ = "1.0.0"

__all__ = [
    "BoundSequence",
    "CHECK_NAMES",
    "CheckRecord",
    "ConfigError",
    "DENSE_CAP",
    "DimensionMismatch",
    "DimensionTooLarge",
    "DomainError",
    "HypothesisVerdict",
    "HypothesisViolated",
    "InverseColumn",
    "MatrixSpec",
    "ProofTrace",
    "Rational",
    "SingularDiagonal",
    "SpectralReport",
    "TheoremBound",
    "ToeptriError",
    "build_proof_trace",
    "check_gautschi",
    "check_hypotheses",
    "check_zeta_tail",
    "dense_gram_eigen_oracle",
    "exponent_rational",
    "forward_solve",
    "frobenius_inverse_norm",
    "inverse_first_column",
    "log_gamma",
    "materialize_dense",
    "matvec",
    "omega",
    "operation_counts",
    "parse_rational",
    "psi_phi",
    "reset_operation_counts",
    "smallest_singular_value",
    "spectral_report",
    "theorem_bound",
    "theta",
    "transpose_solve",
    "zeta_tail_sum",
    "__version__",
]
