"""Model surfaces, boundary graphs and isotopy signatures for surfaces in the unit ball."""

from fractions import Fraction

from ._core import (
    ISOTOPY_HYPOTHESIS_NOTE,
    SHRINKER_MIN_RADIUS,
    GeometryError,
    InvalidInput,
    ParseError,
    TopologyError,
    TriMesh,
    UnknotError,
    ahu_code,
    boundary_graph_of_surface,
    builtin_shrinker,
    enumerate_free_trees,
    generate_model_surface,
    genus_and_boundary,
    graph_at_infinity,
    isotopy_equivalent,
    isotopy_signature,
    model_sidecar,
    multigraphs_isomorphic,
    read_obj,
    self_intersects,
    sphere_boundary_graph,
    tree_edges,
    trees_isomorphic,
    validate_properly_embedded,
    write_obj,
)
from ._core import cayley_lower_bound_parts as _cayley_parts

__all__ = [
    "ISOTOPY_HYPOTHESIS_NOTE",
    "SHRINKER_MIN_RADIUS",
    "GeometryError",
    "InvalidInput",
    "ParseError",
    "TopologyError",
    "TriMesh",
    "UnknotError",
    "ahu_code",
    "boundary_graph_of_surface",
    "builtin_shrinker",
    "cayley_lower_bound",
    "enumerate_free_trees",
    "generate_model_surface",
    "genus_and_boundary",
    "graph_at_infinity",
    "isotopy_equivalent",
    "isotopy_signature",
    "model_sidecar",
    "multigraphs_isomorphic",
    "read_obj",
    "self_intersects",
    "sphere_boundary_graph",
    "tree_edges",
    "trees_isomorphic",
    "validate_properly_embedded",
    "write_obj",
]


def cayley_lower_bound(n: int) -> Fraction:
    """n^(n-2) / n! as an exact fraction."""
    num, den = _cayley_parts(n)
    return Fraction(int(num), int(den))
