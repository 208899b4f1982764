"""End-to-end pipeline: discretize, flood, certify, subdivide, convexify,
and measure the induced map on H1.

``build_pipeline`` returns the intermediate artifacts for inspection;
``run_pipeline`` wraps it into a plain report dict whose canonical
serialization is byte-identical for fixed inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Hashable, Mapping

from .complex import SimplicialComplex, SimplicialMap, check_simplicial, vietoris_rips
from .graph import Graph
from .homology import induced_h1
from .realization import BaryPoint, simplex_grid, subdivision_depth_for_mesh
from .transform import (
    CliqueCertificate,
    DiscreteMap,
    SampledDomain,
    carriers_compatible,
    clique_certificate,
    convex_transform,
    discrete_modify,
    flood,
    flood_stage_radii,
    subdivide_domain,
)

Vertex = Hashable

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def canonical_json(obj) -> str:
    """Sorted-key, compact JSON; the single canonical serialization."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def fnv1a64(text: str) -> str:
    """64-bit FNV-1a digest of a string, as fixed-width hex."""
    h = FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return f"{h:016x}"


def digest_map(f: DiscreteMap) -> str:
    return fnv1a64(canonical_json(f.to_json_dict()))


@dataclass
class PipelineArtifacts:
    """Everything the pipeline produced, stage by stage."""

    discrete: DiscreteMap
    flooded: DiscreteMap
    stage_log: list
    certificate: CliqueCertificate
    required_depth: int
    depth: int
    final_domain: SampledDomain
    final_map: DiscreteMap
    simplicial_map: SimplicialMap
    target: SimplicialComplex


def build_pipeline(
    graph: Graph,
    domain: SampledDomain,
    sample_points: Mapping[int, BaryPoint],
    extra_subdivisions: int = 0,
) -> PipelineArtifacts:
    """Run every stage and keep the intermediate objects.

    Raises ``CertificateFailure`` when a finite continuity certificate fails;
    the exception names the stage and the offending sample pair.
    """
    f0 = discrete_modify(sample_points, domain, graph)
    stage_log = [{"stage": "discrete_modify", "digest": digest_map(f0), "changed": 0}]
    current = f0
    for v in f0.image_vertices():
        radii = flood_stage_radii(current, v)
        entry = {"stage": f"flood:{v}", "preimage": len(radii)}
        if radii:
            flooded = flood(current, v, radii)
            entry["changed"] = sum(
                1
                for i in range(domain.n_samples)
                if flooded.values[i] != current.values[i]
            )
            entry["min_radius"] = min(radii.values())
            current = flooded
        else:
            entry["changed"] = 0
        entry["digest"] = digest_map(current)
        stage_log.append(entry)

    cert = clique_certificate(current)

    tri = domain.triangulation
    mesh = domain.max_simplex_diameter()
    required = (
        subdivision_depth_for_mesh(tri.dimension(), mesh, cert.delta) if mesh > 0 else 0
    )
    depth = max(required, extra_subdivisions)

    cur_domain, cur_values = domain, dict(current.values)
    for _ in range(depth):
        cur_domain, cur_values, _fv = subdivide_domain(cur_domain, cur_values)
    f_final = DiscreteMap(cur_domain, graph, cur_values, current.base_value)

    # headroom for carrier unions in the subdivision-compatibility check
    cap = max(2, 2 * cur_domain.triangulation.dimension() + 1)
    target = vietoris_rips(graph, cap)
    m = convex_transform(f_final, cur_domain.triangulation, cert, target)

    return PipelineArtifacts(
        discrete=f0,
        flooded=current,
        stage_log=stage_log,
        certificate=cert,
        required_depth=required,
        depth=depth,
        final_domain=cur_domain,
        final_map=f_final,
        simplicial_map=m,
        target=target,
    )


def sd_compatibility(m1, m2, face_vertex: Mapping, grid_steps: int) -> bool:
    """Common-carrier check between a map and its subdivision refinement.

    Grids every top-dimensional simplex of ``m1``'s source; simplices whose
    image pattern (vertex images plus subdivision-vertex images) was already
    checked are skipped, since the verdict only depends on that pattern.
    """
    tri = m1.source
    top = tri.dimension()
    if top < 1:
        return True
    seen: set = set()
    for s in tri.simplices(top):
        faces = [
            face
            for size in range(1, len(s) + 1)
            for face in combinations(s, size)
        ]
        signature = (
            tuple(m1.vertex_images[v] for v in s),
            tuple(m2.vertex_images[face_vertex[f]] for f in faces),
        )
        if signature in seen:
            continue
        seen.add(signature)
        points = [BaryPoint(s, c) for c in simplex_grid(top, grid_steps)]
        if not carriers_compatible(m1, m2, points, face_vertex):
            return False
    return True


def refine_once(art: PipelineArtifacts) -> tuple:
    """Subdivide the final triangulation once more and rebuild the convex map.

    Returns ``(m2, face_vertex)`` for compatibility checks against
    ``art.simplicial_map``.
    """
    dom2, vals2, face_vertex = subdivide_domain(art.final_domain, art.final_map.values)
    f2 = DiscreteMap(dom2, art.final_map.target, vals2, art.final_map.base_value)
    m2 = convex_transform(f2, dom2.triangulation, art.certificate, art.target)
    return m2, face_vertex


def run_pipeline(
    graph: Graph,
    domain: SampledDomain,
    sample_points: Mapping[int, BaryPoint],
    extra_subdivisions: int = 0,
    check_sd: bool = False,
    grid_steps: int = 50,
) -> dict:
    """Run the full pipeline and return the per-stage report dict."""
    art = build_pipeline(graph, domain, sample_points, extra_subdivisions)
    ih1 = induced_h1(art.simplicial_map)
    report = {
        "graph": {"vertices": len(graph.vertices), "edges": len(graph.edges)},
        "domain": {
            "samples": domain.n_samples,
            "triangulation": domain.triangulation.counts(),
            "basepoints": list(domain.basepoints),
            "eps_net": domain.eps_net,
        },
        "stages": art.stage_log,
        "certificate": {
            "delta": art.certificate.delta,
            "radii_digest": fnv1a64(canonical_json(art.certificate.to_json_dict())),
        },
        "depth": {"required": art.required_depth, "chosen": art.depth},
        "simplicial": check_simplicial(art.simplicial_map),
        "h1": {
            "rank": ih1.rank,
            "source_betti1": ih1.source_betti1,
            "target_betti1": ih1.target_betti1,
        },
        "final_digest": digest_map(art.final_map),
    }
    if check_sd:
        m2, face_vertex = refine_once(art)
        report["sd_compatible"] = sd_compatibility(
            art.simplicial_map, m2, face_vertex, grid_steps
        )
    return report
