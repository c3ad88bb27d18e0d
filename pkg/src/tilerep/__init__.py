"""Representation-variety invariants of one-dimensional substitution tilings.

The core objects: finite permutation groups with index tables (perms),
freely reduced words and free-group homomorphisms (words), the variety
Hom(F_k, G) with its conjugation quotient and direct limits (variety), and
substitution rules with their approximant graphs (substitution).  The
pipeline module assembles them into the count / limit / based-limit /
approximant / factors runs that the HTTP service and CLI expose.
"""

__version__ = "0.1.0"

from .errors import BudgetError, ConstructionError, InputError, ParseError, TilerepError
from .perms import (
    FiniteGroup,
    Perm,
    cyclic_group,
    dihedral_group,
    group_from_generators,
    parse_group_spec,
    symmetric_group,
)
from .substitution import (
    ApGraph,
    Approximant,
    Pi1Presentation,
    SubstitutionRule,
    allowed_factors,
    build_ap_graph,
    build_approximant,
    collar_substitution,
    fundamental_group,
    induced_pi1_endomorphism,
    is_primitive,
    load_rule,
    parse_endomorphism_text,
    parse_rule_text,
    substitution_matrix,
)
from .variety import (
    ClassSet,
    ConjClass,
    EventualImage,
    SelfMap,
    based_limit,
    class_limit,
    conjugacy_classes,
    enumerate_homs,
    eventual_image,
    induced_class_map,
    induced_point_map,
    point_at,
    point_index,
)
from .words import FreeHom, Letter, Word, compose, concat, evaluate, identity_hom, reduce

__all__ = [
    "__version__",
    "TilerepError", "InputError", "ParseError", "ConstructionError", "BudgetError",
    "Perm", "FiniteGroup", "symmetric_group", "cyclic_group", "dihedral_group",
    "group_from_generators", "parse_group_spec",
    "Letter", "Word", "FreeHom", "reduce", "concat", "compose", "evaluate", "identity_hom",
    "ConjClass", "ClassSet", "SelfMap", "EventualImage",
    "enumerate_homs", "conjugacy_classes", "induced_point_map", "induced_class_map",
    "eventual_image", "based_limit", "class_limit", "point_at", "point_index",
    "SubstitutionRule", "ApGraph", "Pi1Presentation", "Approximant",
    "parse_rule_text", "parse_endomorphism_text", "load_rule",
    "substitution_matrix", "is_primitive", "allowed_factors", "collar_substitution",
    "build_ap_graph", "fundamental_group", "induced_pi1_endomorphism", "build_approximant",
]
