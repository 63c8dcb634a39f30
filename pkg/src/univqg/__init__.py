"""Classification and free product decomposition of the universal quantum groups A_u(Q), B_u(Q)."""

from .au import AuInvariant, FClassPair, au_invariant, au_isomorphic, class_f_matrices
from .bu import BuDescriptor, BuIsomorphism, bu_descriptor, bu_isomorphic
from .decompose import (
    AuAtom,
    BuAtom,
    CircleAtom,
    GroupExpression,
    Z2Atom,
    decompose_au,
    decompose_bu,
    expression_equal,
)
from .fusion import DimensionTable, FreeWord, dim_word, fuse, involute, min_dim_sequence, verify_fusion_dims
from .linalg import Tolerance, eigvals_hermitian, polar_decompose, predicates
from .normal_forms import mu_signature, normalize_au, normalize_bu
from .phase import PhaseProfile, phase_profile_solve

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "au_invariant",
    "au_isomorphic",
    "AuAtom",
    "AuInvariant",
    "bu_descriptor",
    "bu_isomorphic",
    "BuAtom",
    "BuDescriptor",
    "BuIsomorphism",
    "CircleAtom",
    "class_f_matrices",
    "decompose_au",
    "decompose_bu",
    "dim_word",
    "DimensionTable",
    "eigvals_hermitian",
    "expression_equal",
    "FClassPair",
    "FreeWord",
    "fuse",
    "GroupExpression",
    "involute",
    "min_dim_sequence",
    "mu_signature",
    "normalize_au",
    "normalize_bu",
    "phase_profile_solve",
    "PhaseProfile",
    "polar_decompose",
    "predicates",
    "Tolerance",
    "verify_fusion_dims",
    "Z2Atom",
]
