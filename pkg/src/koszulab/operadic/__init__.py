"""Strict Lie/Com models and the Koszul duality functors between them."""

from .chevalley import chevalley, cochev_stage, cochevalley, stage_projection
from .cobar import (CobarStage, CobarTower, certified_floor, cobar_stage, cobar_tower, fiber_degree_bound,
                    stabilization_bound, tower_map)
from .cutoff import CutoffInfeasible, CutoffPolicy
from .freelie import free_lie, lie_basis, witt_dimensions
from .prim import bracket_rank_on_cohomology, prim_lie, unit_map
from .structures import (AxiomViolation, HypothesisViolation, StrictCoLie, StrictComAlgebra, StrictComCoalgebra,
                         StrictLieAlgebra, dual_colie, dual_comcoalg, dual_lie, structure_from_json, trivial_colie,
                         trivial_comalg, trivial_comcoalg, trivial_lie)
from .sym import sym_power

__all__ = [
    "AxiomViolation", "CobarStage", "CobarTower", "CutoffInfeasible", "CutoffPolicy", "HypothesisViolation",
    "StrictCoLie", "StrictComAlgebra", "StrictComCoalgebra", "StrictLieAlgebra", "bracket_rank_on_cohomology",
    "certified_floor", "chevalley", "cobar_stage", "cobar_tower", "cochev_stage", "cochevalley", "dual_colie",
    "dual_comcoalg", "dual_lie", "fiber_degree_bound", "free_lie", "lie_basis", "prim_lie", "stabilization_bound",
    "stage_projection", "structure_from_json", "sym_power", "tower_map", "trivial_colie", "trivial_comalg",
    "trivial_comcoalg", "trivial_lie", "unit_map", "witt_dimensions",
]
