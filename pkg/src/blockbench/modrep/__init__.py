"""kG-modules given by matrices: composition factors, homomorphisms,
direct sum decompositions, Loewy series, lattices, Brauer characters and
relative projectivity."""
from .brauer import brauer_char, label_simples
from .homs import decompose, endomorphism_ring, hom_dim, hom_space, is_indecomposable, is_isomorphic
from .loewy import LoewyData, loewy_data, radical, radical_series, socle, socle_series, submodule_lattice
from .meataxe import chop, composition_factors, is_irreducible
from .module import (
    GModule,
    ModuleError,
    coset_module,
    direct_sum,
    perm_module,
    regular_module,
    restrict,
    sign_module,
    trivial_module,
)
from .projectivity import is_projective, is_rel_projective, stable_hom_dim, vertex

__all__ = [
    "GModule", "ModuleError", "brauer_char", "chop", "composition_factors", "coset_module",
    "decompose", "direct_sum", "endomorphism_ring", "hom_dim", "hom_space", "is_indecomposable",
    "is_irreducible", "is_isomorphic", "is_projective", "is_rel_projective", "label_simples",
    "LoewyData", "loewy_data", "perm_module", "radical", "radical_series", "regular_module",
    "restrict", "sign_module", "socle", "socle_series", "stable_hom_dim", "submodule_lattice",
    "trivial_module", "vertex",
]
