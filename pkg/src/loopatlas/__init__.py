"""Exact combinatorics of untwisted affine root systems.

Cartan matrices and their affinizations, root inventories, reflection
groups, parabolic subset classification with self-associate certificates,
convergence-region bookkeeping for spectral parameters, and the
closed-form truncated inner-product kernel, all in exact integer and
rational arithmetic wherever the mathematics is exact.
"""

from . import cartan, criterion, errors, maass_selberg, parabolic, roots, serialize, weyl
from .cartan import CartanMatrix, affinize, classify, finite_cartan, from_matrix, parse_type
from .criterion import (
    LinearFunctional,
    central_value,
    dominant_integral,
    extend_from_central,
    functional,
    godement_cuspidal,
    godement_minimal,
    implication_check,
    shift_by_weyl_vector,
    weyl_vector,
)
from .errors import LoopAtlasError
from .maass_selberg import TruncatedPairing, inner_product, pairing_kernel, region_scan
from .parabolic import (
    AssociateCertificate,
    ParabolicSubset,
    associate_necessary,
    constant_term_is_trivial,
    finite_self_associate,
    is_self_associate,
    levi_type,
    maximal_certificates,
    maximal_parabolics,
    parabolic_subset,
)
from .roots import (
    affine_roots,
    central_coroot,
    comarks,
    delta,
    dual_coxeter,
    highest_root,
    marks,
    positive_roots,
    root_system,
    roots_in_span,
)
from .weyl import WeylElement, enumerate_elements, from_word, longest_element, removed_node_image

__version__ = "0.1.0"

__all__ = [
    "CartanMatrix",
    "LinearFunctional",
    "LoopAtlasError",
    "ParabolicSubset",
    "AssociateCertificate",
    "TruncatedPairing",
    "WeylElement",
    "affine_roots",
    "affinize",
    "associate_necessary",
    "central_coroot",
    "central_value",
    "classify",
    "comarks",
    "constant_term_is_trivial",
    "delta",
    "dominant_integral",
    "dual_coxeter",
    "enumerate_elements",
    "extend_from_central",
    "finite_cartan",
    "finite_self_associate",
    "from_matrix",
    "from_word",
    "functional",
    "godement_cuspidal",
    "godement_minimal",
    "highest_root",
    "implication_check",
    "inner_product",
    "is_self_associate",
    "levi_type",
    "longest_element",
    "marks",
    "maximal_certificates",
    "maximal_parabolics",
    "pairing_kernel",
    "parabolic_subset",
    "parse_type",
    "positive_roots",
    "region_scan",
    "removed_node_image",
    "root_system",
    "roots_in_span",
    "shift_by_weyl_vector",
    "weyl_vector",
]
