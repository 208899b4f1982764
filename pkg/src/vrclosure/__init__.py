"""Reflexive graphs as closure spaces, their clique complexes, and the
transformation pipeline that certifies both carry the same desk-scale
homotopy invariants."""

from .closure import ClosureSpace, PointMap, compose, is_continuous
from .complex import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    check_simplicial,
    check_star_condition,
    closed_star,
    compose_simplicial,
    vietoris_rips,
)
from .graph import Graph, complete_graph, cycle_graph, octahedron_graph
from .homology import (
    GroupPresentation,
    InducedH1,
    betti_numbers,
    edge_path_presentation,
    euler_characteristic,
    induced_h1,
)
from .realization import (
    BaryPoint,
    bary_cover_membership,
    pl_evaluate,
    simplex_grid,
    subdivided_point,
    subdivision_depth_for_mesh,
    theta_point,
)
from .transform import (
    CertificateFailure,
    CliqueCertificate,
    DiscreteMap,
    SampledDomain,
    carriers_compatible,
    clique_certificate,
    convex_transform,
    discrete_modify,
    flood,
    flood_sequence,
    flood_stage_radii,
    subdivide_domain,
)

__all__ = [
    "BaryPoint",
    "CertificateFailure",
    "CliqueCertificate",
    "ClosureSpace",
    "DiscreteMap",
    "Graph",
    "GroupPresentation",
    "InducedH1",
    "PointMap",
    "SampledDomain",
    "SimplicialComplex",
    "SimplicialMap",
    "barycentric_subdivision",
    "bary_cover_membership",
    "betti_numbers",
    "carriers_compatible",
    "check_simplicial",
    "check_star_condition",
    "clique_certificate",
    "closed_star",
    "complete_graph",
    "compose",
    "compose_simplicial",
    "convex_transform",
    "cycle_graph",
    "discrete_modify",
    "edge_path_presentation",
    "euler_characteristic",
    "flood",
    "flood_sequence",
    "flood_stage_radii",
    "induced_h1",
    "is_continuous",
    "octahedron_graph",
    "pl_evaluate",
    "simplex_grid",
    "subdivide_domain",
    "subdivided_point",
    "subdivision_depth_for_mesh",
    "theta_point",
    "vietoris_rips",
]

__version__ = "0.1.0"
