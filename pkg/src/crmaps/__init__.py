"""Completely reducible positive maps attached to bipartite operators."""

from .classify import ClassReport, classify, is_invariant_realign, is_ppt, is_spc, membership
from .config import DEFAULT, Tolerances
from .generators import (
    counterexample,
    direct_sum_separable,
    random_invariant,
    random_separable,
    random_spc,
)
from .linalg import HermitianEigenSystem, hermitian_eig, is_psd, range_projector, svd
from .mub import (
    MubSet,
    a_alpha,
    complete,
    generate_prime,
    is_unbiased_pair,
    match_up_to_phase,
    verify_set,
)
from .reducibility import (
    Block,
    ReducibilityReport,
    decompose,
    is_weakly_irreducible,
    positive_schmidt_unique,
    split_check,
)
from .schmidt import (
    SchmidtDecomposition,
    hermitian_schmidt_decompose,
    reconstruct,
    schmidt_decompose,
)
from .superop import SuperOperator, f_of, fg_of, g_of, top_fixed_psd
from .symmetry import Perm4, l_sigma, sigma_dictionary
from .tensor import (
    flip,
    kron,
    max_entangled_u,
    partial_transpose,
    realign,
    unrealign,
    unvec_f,
    vec_f,
)

__version__ = "0.1.0"

__all__ = [
    "Block", "ClassReport", "DEFAULT", "HermitianEigenSystem", "MubSet", "Perm4",
    "ReducibilityReport", "SchmidtDecomposition", "SuperOperator", "Tolerances",
    "a_alpha", "classify", "complete", "counterexample", "decompose",
    "direct_sum_separable", "f_of", "fg_of", "flip", "g_of", "generate_prime",
    "hermitian_eig", "hermitian_schmidt_decompose", "is_invariant_realign", "is_ppt",
    "is_psd", "is_spc", "is_unbiased_pair", "is_weakly_irreducible", "kron",
    "l_sigma", "match_up_to_phase", "max_entangled_u", "membership",
    "partial_transpose", "positive_schmidt_unique", "random_invariant",
    "random_separable", "random_spc", "range_projector", "realign", "reconstruct",
    "schmidt_decompose", "sigma_dictionary", "split_check", "svd", "top_fixed_psd",
    "unrealign", "unvec_f", "vec_f", "verify_set",
]
