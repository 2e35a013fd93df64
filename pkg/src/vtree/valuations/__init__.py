"""
Valuações em K[x]: nós, famílias contínuas, operações de árvore, cadeias MLV,
polígonos de Newton e exemplos embutidos.
"""

# ========== NÓS ==========
from .nodes import (
    DepthZero,
    MinimalityVerdict,
    Node,
    Ordinary,
    Root,
    divides_probe,
    infinitesimal_for,
    is_minimal_oracle,
)
from .verdicts import Verdict

# ========== FAMÍLIAS ==========
from .families import (
    AugmentationRuleFamily,
    ExplicitFamily,
    ExplicitSchedule,
    Family,
    GeometricSchedule,
    Limit,
    LinearSchedule,
    NoneUpTo,
    PseudoConvergentFamily,
    StableValue,
    SubFamily,
    UnstableSearch,
    UnstableUpTo,
    family_equiv,
    find_unstable,
    gamma_A,
    limit_augment,
    minimal_limit_node,
    stable_value,
)

# ========== ÁRVORE ==========
from .tree import (
    EquivalenceReport,
    PathInterval,
    augmentations_equal,
    equiv_nodes,
    gcln,
    leq,
    limit_path_intersection,
    lt,
    path_intersection,
    same_node,
    tangent_direction,
    tree_distance,
)

# ========== CADEIAS ==========
from .chains import (
    Chain,
    ChainStep,
    MLVReport,
    PartitionReport,
    PrimitiveKind,
    StepKind,
    classify_primitive,
    depth,
    in_path_bundle,
    lim_depth,
    node_lim_depth,
    partition_check,
    primitive_owner,
    validate_mlv,
)

# ========== NEWTON ==========
from .newton import NewtonPolygon, newton_polygon, ramification_product, value_from_polygon

# ========== CATÁLOGO ==========
from .catalog import (
    VaquieExample,
    dyadic_family,
    sqrt_chain,
    sqrt_family,
    vaquie_chain,
    vaquie_example,
    vaquie_polynomials,
)

# ========== EXPORTS ==========

__all__ = [
    "DepthZero",
    "MinimalityVerdict",
    "Node",
    "Ordinary",
    "Root",
    "divides_probe",
    "infinitesimal_for",
    "is_minimal_oracle",
    "Verdict",
    "AugmentationRuleFamily",
    "ExplicitFamily",
    "ExplicitSchedule",
    "Family",
    "GeometricSchedule",
    "Limit",
    "LinearSchedule",
    "NoneUpTo",
    "PseudoConvergentFamily",
    "StableValue",
    "SubFamily",
    "UnstableSearch",
    "UnstableUpTo",
    "family_equiv",
    "find_unstable",
    "gamma_A",
    "limit_augment",
    "minimal_limit_node",
    "stable_value",
    "EquivalenceReport",
    "PathInterval",
    "augmentations_equal",
    "equiv_nodes",
    "gcln",
    "leq",
    "lt",
    "limit_path_intersection",
    "path_intersection",
    "same_node",
    "tangent_direction",
    "tree_distance",
    "Chain",
    "ChainStep",
    "MLVReport",
    "PartitionReport",
    "PrimitiveKind",
    "StepKind",
    "classify_primitive",
    "depth",
    "in_path_bundle",
    "lim_depth",
    "node_lim_depth",
    "partition_check",
    "primitive_owner",
    "validate_mlv",
    "NewtonPolygon",
    "newton_polygon",
    "ramification_product",
    "value_from_polygon",
    "VaquieExample",
    "dyadic_family",
    "sqrt_chain",
    "sqrt_family",
    "vaquie_chain",
    "vaquie_example",
    "vaquie_polynomials",
]
