"""Weight modules over the Weyl algebra in countably many variables.

Exact computations with simple, projective and injective weight modules,
their localizations, and the quiver with relations describing each block.
"""

from __future__ import annotations

from .blocks import block_generator_map, verify_block, vertex_of_weight, weight_pU
from .classify import bar_contains, canonical_form, equivalent, simple_reachability
from .localization import localize, verify_localization_realizations
from .modules import InducedModule, ModHom, MonomialModule, dual, realize, theta_twist
from .quiver import PathNF, algebra_dim, hom_basis, path_compose, quiver_export
from .resolution import BettiTable, koszul_check, minimal_resolution, projective_cover
from .scalars import Scalar
from .weyl import A0Poly, IndexSet, Int, NonInt, Shift, Weight, WeylElement

__version__ = "0.1.0"

__all__ = [
    "A0Poly", "BettiTable", "IndexSet", "InducedModule", "Int", "ModHom", "MonomialModule",
    "NonInt", "PathNF", "Scalar", "Shift", "Weight", "WeylElement", "algebra_dim", "bar_contains",
    "block_generator_map", "canonical_form", "dual", "equivalent", "hom_basis", "koszul_check",
    "localize", "minimal_resolution", "path_compose", "projective_cover", "quiver_export",
    "realize", "simple_reachability", "theta_twist", "verify_block",
    "verify_localization_realizations", "vertex_of_weight", "weight_pU",
]
