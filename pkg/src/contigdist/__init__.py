"""Exact contiguity distance, simplicial LS category and discrete TC for finite complexes."""

from .complex import (
    Complex,
    FacetSet,
    Subcomplex,
    boundary_of_simplex,
    build_complex,
    enumerate_subcomplexes,
    full_simplex,
    is_edge_path_connected,
    point,
    restrict_complex,
)
from .collapse import CollapseTrace, core, dominated_vertices, is_strongly_collapsible
from .contiguity import (
    EQUIVALENT,
    NOT_EQUIVALENT,
    UNKNOWN,
    Budget,
    ClassDecision,
    ContiguityCertificate,
    Decider,
    contiguous_neighbors,
    is_contiguous,
    same_contiguity_class,
)
from .distance import (
    EXACT,
    INFINITE,
    UNKNOWN_VALUE,
    CoverSolution,
    DistanceReport,
    SearchBudget,
    contiguity_distance,
    discrete_tc,
    farber_clauses,
    is_good_piece,
    scat,
)
from .errors import ContigError
from .maps import (
    SimplicialMap,
    build_map,
    compose,
    constant_map,
    identity,
    inclusion,
    iter_simplicial_maps,
    preimage_subcomplex,
    random_simplicial_map,
    restrict_map,
)
from .product import (
    ProductComplex,
    axis_inclusion,
    categorical_power,
    categorical_product,
    diagonal,
    factor_map,
    projection,
    slab_inclusion,
)
from .subdivision import SubdividedComplex, barycentric_subdivision, subdivide_map, subdivide_subcomplex, subdivision_staircase

__version__ = "0.1.0"
