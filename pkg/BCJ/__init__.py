"""
BCJ Package for Abelian Cycles in the Torelli Group

This package provides the mod 2 calculus of the Birman-Craggs-Johnson
homomorphism on abelian cycles of separating twists: GF(2) symplectic
algebra, the Boolean polynomial algebra, sigma values, integral lattice
constructions, equality certificates, curve-system trees and homology bounds.
"""

from .config import (
    configure_logging,
    validate_options,
    SelftestLevel,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    MAX_GENUS,
    MIN_GENUS,
)
from .errors import (
    TorelliError,
    DimensionMismatch,
    ContextMismatch,
    NotSymplectic,
    MixedShapes,
    NotGenus1Sigma,
    NotUnimodular,
    BadParityPattern,
    NotCoprime,
    FrameInvalid,
    NotInSpan,
    HypothesisViolation,
    ParseError,
)
from .gf2_linear import (
    GenusContext,
    GF2Vector,
    GF2Subspace,
    GF2SymplecticSubspace,
    WedgeElement,
    WedgeEchelon,
    genus_context,
    gf2_form,
    span,
    is_symplectic,
    symplectic_basis_of,
    orthogonal_complement,
    enumerate_symplectic_2subspaces,
    count_symplectic_2subspaces,
    wedge,
    rank_of_span,
    parse_vector,
    parse_subspace,
)
from .boolean_algebra import (
    BoolPoly,
    bar,
    arf,
    build_arf_ideal,
    normal_form,
    quotient_dimension,
    b2_prime_basis,
    sp_action,
    parse_poly,
    format_poly,
)
from .bcj_sigma import (
    Mode,
    SigmaValue,
    sigma_of_subspace,
    sigma_of_int_subgroup,
    sigma_sum,
    recover_genus1_subspace,
    pants_relation_holds,
)
from .int_symplectic import (
    IntVector,
    IntSymplecticPair,
    IntSymplecticSubgroup,
    xgcd,
    solve_parity_bezout,
    primitive_odd_rep,
    extend_to_symplectic_basis,
    build_adapted_U2prime,
    build_V1prime,
    adapt_basis_mod2,
    parse_int_vector,
    parse_int_subgroup,
    format_int_vector,
)
from .abelian_cycles import (
    CycleSystem,
    SigmaWedge,
    Certificate,
    Verdict,
    VerdictKind,
    cycle_system,
    sigma_k,
    relation_holds,
    decide_equal_genus1,
    check_certificate,
    verify_certificate,
    dump_certificate,
    load_certificate,
)
from .curve_systems import (
    PartitionTree,
    validate_tree,
    classify,
    realize_splitting,
    tree_sigma_k,
    vanishes_main3,
    reduce_to_genus1,
    enumerate_admissible_trees,
    parse_tree,
    format_tree,
)
from .homology_bounds import (
    DimReport,
    count_genus1_sigmas,
    upper_bound_h2,
    lower_bound_h2,
    dim_report,
    census_frame,
)
from .selftest import run_selftest

__all__ = [
    'configure_logging',
    'validate_options',
    'SelftestLevel',
    'DEFAULT_SEED',
    'DEFAULT_THREADS',
    'MAX_GENUS',
    'MIN_GENUS',
    'TorelliError',
    'DimensionMismatch',
    'ContextMismatch',
    'NotSymplectic',
    'MixedShapes',
    'NotGenus1Sigma',
    'NotUnimodular',
    'BadParityPattern',
    'NotCoprime',
    'FrameInvalid',
    'NotInSpan',
    'HypothesisViolation',
    'ParseError',
    'GenusContext',
    'GF2Vector',
    'GF2Subspace',
    'GF2SymplecticSubspace',
    'WedgeElement',
    'WedgeEchelon',
    'genus_context',
    'gf2_form',
    'span',
    'is_symplectic',
    'symplectic_basis_of',
    'orthogonal_complement',
    'enumerate_symplectic_2subspaces',
    'count_symplectic_2subspaces',
    'wedge',
    'rank_of_span',
    'parse_vector',
    'parse_subspace',
    'BoolPoly',
    'bar',
    'arf',
    'build_arf_ideal',
    'normal_form',
    'quotient_dimension',
    'b2_prime_basis',
    'sp_action',
    'parse_poly',
    'format_poly',
    'Mode',
    'SigmaValue',
    'sigma_of_subspace',
    'sigma_of_int_subgroup',
    'sigma_sum',
    'recover_genus1_subspace',
    'pants_relation_holds',
    'IntVector',
    'IntSymplecticPair',
    'IntSymplecticSubgroup',
    'xgcd',
    'solve_parity_bezout',
    'primitive_odd_rep',
    'extend_to_symplectic_basis',
    'build_adapted_U2prime',
    'build_V1prime',
    'adapt_basis_mod2',
    'parse_int_vector',
    'parse_int_subgroup',
    'format_int_vector',
    'CycleSystem',
    'SigmaWedge',
    'Certificate',
    'Verdict',
    'VerdictKind',
    'cycle_system',
    'sigma_k',
    'relation_holds',
    'decide_equal_genus1',
    'check_certificate',
    'verify_certificate',
    'dump_certificate',
    'load_certificate',
    'PartitionTree',
    'validate_tree',
    'classify',
    'realize_splitting',
    'tree_sigma_k',
    'vanishes_main3',
    'reduce_to_genus1',
    'enumerate_admissible_trees',
    'parse_tree',
    'format_tree',
    'DimReport',
    'count_genus1_sigmas',
    'upper_bound_h2',
    'lower_bound_h2',
    'dim_report',
    'census_frame',
    'run_selftest',
]
