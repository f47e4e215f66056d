"""Qutrit entanglement witnesses from a three-parameter map family,
with numeric span certificates of optimality over the one-parameter slice."""

from .errors import (
    BoundaryCaseError,
    ChoiwitError,
    InvalidStateError,
    NonpositiveTError,
    NotHermitianError,
    OffFamilyError,
    OutOfRangeError,
)
from .linalg import (
    conj_vec,
    expectation,
    herm_eig_min,
    kron_vec,
    lu_det,
    partial_transpose_second,
    rank_with_tol,
)
from .maps import (
    FamilyPoint,
    MapParams,
    PositivitySearchResult,
    family_from_alpha,
    identity_residuals,
    is_positive_predicate,
    on_family_check,
    phi_apply,
    positivity_search,
    t_param,
)
from .optimality import (
    Certificate,
    CertificateDiagnostics,
    ProductVectorPair,
    SpanMatrix,
    Verdict,
    ZeroExpectations,
    certify,
    det_closed_form,
    product_vectors,
    span_matrix,
    zero_expectation_check,
)
from .witness import (
    DensityMatrix,
    WitnessMatrix,
    detect,
    max_ent_projector,
    parse_state_file,
    parse_state_text,
    separable_sample_check,
    state_file_text,
    witness_from_map,
    witness_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "BoundaryCaseError",
    "Certificate",
    "CertificateDiagnostics",
    "ChoiwitError",
    "DensityMatrix",
    "FamilyPoint",
    "InvalidStateError",
    "MapParams",
    "NonpositiveTError",
    "NotHermitianError",
    "OffFamilyError",
    "OutOfRangeError",
    "PositivitySearchResult",
    "ProductVectorPair",
    "SpanMatrix",
    "Verdict",
    "WitnessMatrix",
    "ZeroExpectations",
    "certify",
    "conj_vec",
    "det_closed_form",
    "detect",
    "expectation",
    "family_from_alpha",
    "herm_eig_min",
    "identity_residuals",
    "is_positive_predicate",
    "kron_vec",
    "lu_det",
    "max_ent_projector",
    "on_family_check",
    "parse_state_file",
    "parse_state_text",
    "partial_transpose_second",
    "phi_apply",
    "positivity_search",
    "product_vectors",
    "rank_with_tol",
    "separable_sample_check",
    "span_matrix",
    "state_file_text",
    "t_param",
    "witness_from_map",
    "witness_matrix",
    "zero_expectation_check",
]
