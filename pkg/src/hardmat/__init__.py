"""hardmat: explicit hard matrices for bounded-depth linear circuits.

Exact constructions of matrices that no shallow product of sparse matrices
can compute, the Shoup-Smolensky dimension machinery that certifies them,
hitting-set probes with a hard PSD instance, and a brute-force factorization
oracle for desk-scale ground truth.  Everything is exact arithmetic and
deterministic.
"""

__version__ = "0.1.0"

from .budgets import BudgetExceeded
from .circuits import (
    CircuitFactorization,
    SearchResult,
    SlcParseError,
    emit_slc,
    min_depth2_sparsity,
    parse_slc,
    verify_factorization,
)
from .constructions import (
    ExponentMatrix,
    HardMatrixBundle,
    amplify_direct_sum,
    hard_over_finite,
    hard_over_integers,
    quasipoly_hard,
    trivial_hard,
    univariate_hard,
)
from .fields import (
    INTEGER_RING,
    RATIONAL_FIELD,
    FieldDescriptor,
    extension_field,
    field_arith,
    find_irreducible,
    is_prime,
    prime_field,
)
from .hitting import (
    HittingVectors,
    PsdPair,
    RefutationVerdict,
    RSParams,
    build_hard_psd,
    hit_inner,
    min_kernel_weight,
    refute_invertible,
    refute_symmetric,
    rs_generator,
    sparse_row_hit,
    vandermonde_vectors,
)
from .matrices import (
    ExactMatrix,
    SparsityReport,
    kronecker,
    matmul,
    rank,
    solve,
    sparsity,
    vandermonde,
)
from .sidon import SidonSet, construct_sidon, verify_tsum_distinct
from .ssdim import (
    BoundEvaluation,
    ProductFamily,
    bound_eval,
    certify_depth_d,
    gamma_t,
    pi_t,
    sigma_t,
)

__all__ = [
    "__version__",
    "BudgetExceeded",
    "CircuitFactorization",
    "SearchResult",
    "SlcParseError",
    "emit_slc",
    "min_depth2_sparsity",
    "parse_slc",
    "verify_factorization",
    "ExponentMatrix",
    "HardMatrixBundle",
    "amplify_direct_sum",
    "hard_over_finite",
    "hard_over_integers",
    "quasipoly_hard",
    "trivial_hard",
    "univariate_hard",
    "INTEGER_RING",
    "RATIONAL_FIELD",
    "FieldDescriptor",
    "extension_field",
    "field_arith",
    "find_irreducible",
    "is_prime",
    "prime_field",
    "HittingVectors",
    "PsdPair",
    "RefutationVerdict",
    "RSParams",
    "build_hard_psd",
    "hit_inner",
    "min_kernel_weight",
    "refute_invertible",
    "refute_symmetric",
    "rs_generator",
    "sparse_row_hit",
    "vandermonde_vectors",
    "ExactMatrix",
    "SparsityReport",
    "kronecker",
    "matmul",
    "rank",
    "solve",
    "sparsity",
    "vandermonde",
    "SidonSet",
    "construct_sidon",
    "verify_tsum_distinct",
    "BoundEvaluation",
    "ProductFamily",
    "bound_eval",
    "certify_depth_d",
    "gamma_t",
    "pi_t",
    "sigma_t",
]
