"""Exact cospan and span calculus over finite-dimensional vector spaces,
with simplicial homology functors and their cospanical and spanical
extensions.

The layers, bottom up: ``exactlin`` (exact matrices over GF(p) and the
rationals), ``abcat`` (linear maps as an abelian category, exact squares),
``cospan`` (the cospan and span preorders, canonical classes, transposition),
``cw`` (pointed simplicial complexes, augmented chains, cones, homology,
Mayer-Vietoris), ``brown`` (homology functors extended to space cospans),
and ``cli`` (the JSON document front end).
"""

from .exactlin import (
    GF2,
    GF3,
    QQ,
    Field,
    Matrix,
    ShapeError,
    direct_sum,
    hstack,
    image_basis,
    kernel_basis,
    matrix_to_rows,
    rank,
    rref,
    scalar_to_token,
    subspace_equal,
    subspace_contains,
    vstack,
)
from .abcat import (
    LinMap,
    SquareDiagram,
    ThreeTermComplex,
    VecObj,
    biproduct,
    cokernel,
    compose,
    identity,
    is_exact_at_middle,
    is_exact_square,
    kernel,
    square_complex,
)
from .cospan import (
    BoundWitness,
    CanonicalClass,
    Cospan,
    FootMismatch,
    Span,
    canonical_cosp,
    canonical_span,
    compose_cosp,
    compose_span,
    dagger_cosp,
    dagger_span,
    equiv_cosp,
    equiv_span,
    iota_cosp,
    iota_span,
    leq_cosp,
    leq_span,
    lower_bound,
    minimal_rep,
    tensor_cosp,
    tensor_span,
    transpose_cosp,
    transpose_span,
    upper_bound,
)
from .cw import (
    BadVertexIndex,
    ChainComplex,
    ChainMap,
    InvalidMap,
    NotATriad,
    SimplicialComplex,
    SimplicialMap,
    SpaceCospan,
    augmented_chain,
    chain_map_of,
    closure_and_validate,
    dagger_space,
    dimension_filter,
    homology,
    homology_dims,
    induced_on_homology,
    iota_space,
    make_simplicial_map,
    mapping_cone,
    mv_exactness_check,
    point_complex,
    simplicial_cone,
    space_compose_chain_model,
    subdivide_edge,
    suspension_shift,
    t_sigma_chain,
    wedge,
)
from .brown import (
    BrownFunctor,
    DegreeTooLow,
    ExtendedMorphism,
    brown_morphism,
    brown_object,
    cospanical_extend,
    spanical_extend,
    verify_extension_dagger,
    verify_extension_functoriality,
    verify_extension_monoidal,
    verify_transposition_compatibility,
)

__version__ = "0.1.0"

__all__ = [
    "GF2",
    "GF3",
    "QQ",
    "Field",
    "Matrix",
    "ShapeError",
    "direct_sum",
    "hstack",
    "image_basis",
    "kernel_basis",
    "matrix_to_rows",
    "rank",
    "rref",
    "scalar_to_token",
    "subspace_equal",
    "subspace_contains",
    "vstack",
    "LinMap",
    "SquareDiagram",
    "ThreeTermComplex",
    "VecObj",
    "biproduct",
    "cokernel",
    "compose",
    "identity",
    "is_exact_at_middle",
    "is_exact_square",
    "kernel",
    "square_complex",
    "BoundWitness",
    "CanonicalClass",
    "Cospan",
    "FootMismatch",
    "Span",
    "canonical_cosp",
    "canonical_span",
    "compose_cosp",
    "compose_span",
    "dagger_cosp",
    "dagger_span",
    "equiv_cosp",
    "equiv_span",
    "iota_cosp",
    "iota_span",
    "leq_cosp",
    "leq_span",
    "lower_bound",
    "minimal_rep",
    "tensor_cosp",
    "tensor_span",
    "transpose_cosp",
    "transpose_span",
    "upper_bound",
    "BadVertexIndex",
    "ChainComplex",
    "ChainMap",
    "InvalidMap",
    "NotATriad",
    "SimplicialComplex",
    "SimplicialMap",
    "SpaceCospan",
    "augmented_chain",
    "chain_map_of",
    "closure_and_validate",
    "dagger_space",
    "dimension_filter",
    "homology",
    "homology_dims",
    "induced_on_homology",
    "iota_space",
    "make_simplicial_map",
    "mapping_cone",
    "mv_exactness_check",
    "point_complex",
    "simplicial_cone",
    "space_compose_chain_model",
    "subdivide_edge",
    "suspension_shift",
    "t_sigma_chain",
    "wedge",
    "BrownFunctor",
    "DegreeTooLow",
    "ExtendedMorphism",
    "brown_morphism",
    "brown_object",
    "cospanical_extend",
    "spanical_extend",
    "verify_extension_dagger",
    "verify_extension_functoriality",
    "verify_extension_monoidal",
    "verify_transposition_compatibility",
    "__version__",
]
