"""Determining numbers, generating numbers and automorphism groups of finite groups."""

from .autos import (AutGroup, Automorphism, are_isomorphic, aut_order, automorphism_group,
                    enumerate_automorphisms, find_automorphism, hom_set, is_automorphism,
                    isomorphism)
from .catalog import CatalogSpec, catalog_exprs, default_catalog
from .config import CapExceeded, Caps, default_caps, use_caps
from .expr import ExprError, build, parse_group_expr, print_expr
from .groups import (FiniteGroup, GroupError, GroupHom, abelian, alternating, center, chi, closure,
                     cyclic, dicyclic, dihedral, direct_product, elementary_abelian, symmetric)
from .search import (DeterminingReport, GeneratingReport, determining_number, generating_number,
                     is_deg, is_determining_set, is_generating_set, minimum_determining_sets)
from .suite import SuiteReport, theorem_suite

__version__ = "0.1.0"

__all__ = [
    "AutGroup", "Automorphism", "CapExceeded", "Caps", "CatalogSpec", "DeterminingReport",
    "ExprError", "FiniteGroup", "GeneratingReport", "GroupError", "GroupHom", "SuiteReport",
    "abelian", "alternating", "are_isomorphic", "aut_order", "automorphism_group", "build",
    "catalog_exprs", "center", "chi", "closure", "cyclic", "default_caps", "default_catalog",
    "determining_number", "dicyclic", "dihedral", "direct_product", "elementary_abelian",
    "enumerate_automorphisms", "find_automorphism", "generating_number", "hom_set",
    "is_automorphism", "is_deg", "is_determining_set", "is_generating_set", "isomorphism",
    "minimum_determining_sets", "parse_group_expr", "print_expr", "symmetric", "theorem_suite",
    "use_caps",
]
