"""Exact matroid invariants, volume polynomials and Lorentzian certificates."""

from .charpoly import (
    characteristic_polynomial,
    finite_field_count,
    mobius_invariants,
    reduced_characteristic_polynomial,
    sequence_checks,
)
from .cone import (
    approach_alpha,
    approach_beta,
    canonical_ample,
    effective_representative,
    is_strictly_submodular,
    is_submodular,
    project_ample,
    sample_ample,
)
from .graphs import Graph, chromatic_polynomial, coloring_count, graphic_matroid, join
from .linalg import LinearMap, SymMatrix
from .lorentz import bootstrap_check, certify_chain, certify_lorentzian, hodge_2x2, verify_rhw
from .matroid import (
    Matroid,
    direct_sum,
    flat_graph,
    independent_set_counts,
    interval_minor,
    truncation,
    uniform,
    validate_flats,
)
from .polyalg import MultiPoly
from .spectral import Signature, perron, signature
from .volume import ClassVector, chain_product, mixed_degree, volume_polynomial

__all__ = [name for name in dir() if not name.startswith("_")]
