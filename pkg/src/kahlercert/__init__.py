"""Decide and certify invariant Kähler structures of finite integer matrix groups."""

from .cm_cyclic import CyclotomicAction, cm_complex_structure, cross_check_with_decider
from .documents import TOOL_VERSION as __version__
from .errors import (
    DegenerateOnSegment,
    Degenerate,
    DimensionMismatch,
    DocumentError,
    KahlerCertError,
    NoConvergence,
    NonIntegral,
    NonSquare,
    NonUnimodular,
    NotCompatible,
    NotPositive,
    NotSymmetric,
    NotSymplectic,
    OddPhi,
    OrderExceeded,
    RadiusTooSmall,
    Singular,
    StepTooLarge,
)
from .exactlin import RationalMatrix, det, inverse, kernel_basis, ldlt_signature, rank, rref, standard_symplectic
from .kahler import (
    ComplexStructure,
    KahlerCertificate,
    NotFound,
    Polarisation,
    VerificationReport,
    certify,
    compatible_complex_structure,
    decide_kahler,
    find_invariant_complex_structure,
    find_invariant_symplectic,
    symplectic_basis,
    verify_certificate,
)
from .matgroup import (
    BilinearForm,
    FiniteMatrixGroup,
    close_group,
    invariant_form_space,
    invariant_positive_form,
    reynolds_average,
)
from .siegel import (
    DeformationPath,
    SiegelPoint,
    deform_to_polarisable,
    karcher_barycenter,
    orbit_barycenter,
    perturbed_start,
    sample_polarisable_near,
    siegel_distance,
)

__all__ = [
    "__version__",
    "DegenerateOnSegment",
    "Degenerate",
    "DimensionMismatch",
    "DocumentError",
    "KahlerCertError",
    "NoConvergence",
    "NonIntegral",
    "NonSquare",
    "NonUnimodular",
    "NotCompatible",
    "NotPositive",
    "NotSymmetric",
    "NotSymplectic",
    "OddPhi",
    "OrderExceeded",
    "RadiusTooSmall",
    "Singular",
    "StepTooLarge",
    "CyclotomicAction",
    "cm_complex_structure",
    "cross_check_with_decider",
    "F403",
    "RationalMatrix",
    "det",
    "inverse",
    "kernel_basis",
    "ldlt_signature",
    "rank",
    "rref",
    "standard_symplectic",
    "ComplexStructure",
    "KahlerCertificate",
    "NotFound",
    "Polarisation",
    "VerificationReport",
    "certify",
    "compatible_complex_structure",
    "decide_kahler",
    "find_invariant_complex_structure",
    "find_invariant_symplectic",
    "symplectic_basis",
    "verify_certificate",
    "BilinearForm",
    "FiniteMatrixGroup",
    "close_group",
    "invariant_form_space",
    "invariant_positive_form",
    "reynolds_average",
    "DeformationPath",
    "SiegelPoint",
    "deform_to_polarisable",
    "karcher_barycenter",
    "orbit_barycenter",
    "perturbed_start",
    "sample_polarisable_near",
    "siegel_distance",
]
