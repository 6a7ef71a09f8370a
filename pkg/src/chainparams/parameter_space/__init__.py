"""Hyperplanes, halfspaces and numerical bounds on the stability-parameter space."""

from .boundary import (
    BoundaryHyperplane,
    birationality_boundary,
    boundary_component,
    iter_degree_splits,
    on_boundary,
    triple_bounds,
    v_set_rank_splits,
)
from .numerics import (
    ExtremalSummary,
    FlipFiltration,
    VanishingReport,
    extremal_summary,
    flip_codim_bound,
    flip_codim_lower_bound,
    flip_codim_minimizer,
    flip_codim_terms,
    flip_dim_bound,
    standard_bounds_hold,
    vanishing_flags,
)
from .regions import (
    PARALLELOGRAM_LABELS,
    MapFlags,
    RegionFamily,
    RegionReport,
    alpha2_lower_bound,
    cokernel_phi1_bound,
    composite_surjective_region,
    kernel_phi2_bound,
    r2g2_region,
    rank_maximal_region,
    region_1m1,
    region_m1n,
    standard_region,
    unbounded_region_families,
)
from .walls import (
    EMPTY,
    IMPROPER,
    PROPER,
    SubchainSignature,
    Wall,
    enumerate_walls,
    has_improper_walls,
    improper_gcd,
    proportional_gcd,
    improper_walls,
    rank_signatures,
    standard_halfspace,
    standard_hyperplane,
    wall_for_signature,
)

__all__ = [name for name in dir() if not name.startswith("_")]
