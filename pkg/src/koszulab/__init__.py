"""Exact-arithmetic lab for chiral Koszul duality on finite models."""

from .basecat import BaseObject, compactly_supported_cohomology, finran, verdier_dual
from .complexes import Complex, ComplexMap, KoszulabError, Window, WindowNotCertified, cohomology_dims, is_quasi_iso
from .operadic import (CutoffPolicy, chevalley, cobar_stage, cochevalley, prim_lie, stabilization_bound,
                       unit_map)
from .verifysuite import atiyah_bott_series, bound_audit, run_suite

__version__ = "0.1.0"

__all__ = [
    "BaseObject", "Complex", "ComplexMap", "CutoffPolicy", "KoszulabError", "Window", "WindowNotCertified",
    "atiyah_bott_series", "bound_audit", "chevalley", "cobar_stage", "cochevalley", "cohomology_dims",
    "compactly_supported_cohomology", "finran", "is_quasi_iso", "prim_lie", "run_suite", "stabilization_bound",
    "unit_map", "verdier_dual",
]
