"""Built-in sampled domains (circles and icospheres) and sample maps.

These are the only domain sources: everything downstream runs on sampled
spheres, and a regular n-gon or a subdivided icosahedron is an honest
epsilon-net of one.
"""

from __future__ import annotations

import math
from typing import Hashable

import numpy as np

from .complex import SimplicialComplex
from .graph import Graph
from .realization import BaryPoint
from .transform import SampledDomain

Vertex = Hashable

#: pole order matching ``octahedron_graph``: vertices 2i and 2i+1 are antipodal
OCTAHEDRON_POLES = np.array(
    [
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ]
)


def circle_domain(n: int, basepoint: int = 0) -> SampledDomain:
    """Regular n-gon sample of the unit circle, triangulated by its edges."""
    if n < 3:
        raise ValueError("need at least 3 samples on the circle")
    angles = 2.0 * math.pi * np.arange(n) / n
    coords = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    edges = [(i, (i + 1) % n) for i in range(n)]
    tri = SimplicialComplex.from_simplices(edges, dim_cap=2, vertices=range(n))
    return SampledDomain(coords, tri, basepoints=(basepoint,))


_ICOSA_FACES = [
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
]


def _icosahedron() -> tuple:
    t = (1.0 + math.sqrt(5.0)) / 2.0
    raw = np.array(
        [
            [-1, t, 0], [1, t, 0], [-1, -t, 0], [1, -t, 0],
            [0, -1, t], [0, 1, t], [0, -1, -t], [0, 1, -t],
            [t, 0, -1], [t, 0, 1], [-t, 0, -1], [-t, 0, 1],
        ],
        dtype=float,
    )
    raw /= np.linalg.norm(raw, axis=1, keepdims=True)
    return raw, list(_ICOSA_FACES)


def icosphere(subdivisions: int) -> tuple:
    """Icosahedron-based triangulation of the unit sphere.

    Each round splits every triangle four ways at edge midpoints and projects
    the new vertices back onto the sphere; midpoints are shared between the
    two triangles of an edge.
    """
    if subdivisions < 0:
        raise ValueError("subdivision count must be nonnegative")
    vertices, faces = _icosahedron()
    verts = [row for row in vertices]
    for _ in range(subdivisions):
        midpoint: dict = {}

        def split(i: int, j: int) -> int:
            key = (i, j) if i < j else (j, i)
            if key not in midpoint:
                m = (verts[i] + verts[j]) / 2.0
                m = m / np.linalg.norm(m)
                midpoint[key] = len(verts)
                verts.append(m)
            return midpoint[key]

        new_faces = []
        for a, b, c in faces:
            ab, bc, ca = split(a, b), split(b, c), split(c, a)
            new_faces.extend([(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)])
        faces = new_faces
    return np.array(verts), faces


def icosphere_domain(subdivisions: int, basepoint: int = 0) -> SampledDomain:
    """Sampled 2-sphere: a subdivided icosahedron with its face triangulation."""
    coords, faces = icosphere(subdivisions)
    tri = SimplicialComplex.from_simplices(faces, dim_cap=3, vertices=range(len(coords)))
    return SampledDomain(coords, tri, basepoints=(basepoint,))


# -- built-in sample maps ------------------------------------------------


def constant_map(domain: SampledDomain, graph: Graph, vertex: Vertex | None = None) -> dict:
    """Every sample to one vertex (the first in vertex order by default)."""
    v = graph.vertices[0] if vertex is None else vertex
    graph.index(v)
    return {i: BaryPoint.of_vertex(v) for i in range(domain.n_samples)}


def _sector_map(domain: SampledDomain, graph: Graph, offset: float) -> dict:
    if domain.coords.shape[1] != 2:
        raise ValueError("arc maps need a planar (circle) domain")
    if len(graph.vertices) < 4:
        raise ValueError("arc maps need at least 4 target vertices")
    out = {}
    for i in range(domain.n_samples):
        x, y = domain.coords[i]
        angle = (math.atan2(y, x) + offset) % (2.0 * math.pi)
        # keep samples that sit on a sector boundary in the upper (half-open)
        # arc despite rounding; the nudge is far below any sample spacing
        angle = (angle + 1e-9) % (2.0 * math.pi)
        sector = min(3, int(angle / (math.pi / 2.0)))
        out[i] = BaryPoint.of_vertex(graph.vertices[sector])
    return out


def quarter_arc_map(domain: SampledDomain, graph: Graph) -> dict:
    """Quarter-arc wrap of the circle onto the first four vertices.

    Samples in the k-th quarter turn go to vertex k, reproducing the
    classical continuous surjection onto the 4-cycle.
    """
    return _sector_map(domain, graph, 0.0)


def antipodal_quarter_arc_map(domain: SampledDomain, graph: Graph) -> dict:
    """Quarter-arc wrap precomposed with the antipodal rotation."""
    return _sector_map(domain, graph, math.pi)


def nearest_pole_map(
    domain: SampledDomain,
    graph: Graph,
    poles: np.ndarray | None = None,
    rotation: np.ndarray | None = None,
) -> dict:
    """Each sample to the graph vertex of its nearest pole.

    Pole k corresponds to ``graph.vertices[k]``; an optional rotation is
    applied to the samples first.  Ties resolve to the first pole.
    """
    poles = OCTAHEDRON_POLES if poles is None else np.asarray(poles, dtype=float)
    if len(graph.vertices) != len(poles):
        raise ValueError(f"graph has {len(graph.vertices)} vertices but {len(poles)} poles given")
    pts = domain.coords
    if rotation is not None:
        pts = pts @ np.asarray(rotation, dtype=float).T
    if pts.shape[1] != poles.shape[1]:
        raise ValueError("domain and poles have different embedding dimensions")
    out = {}
    for i in range(len(pts)):
        gaps = np.linalg.norm(poles - pts[i], axis=1)
        out[i] = BaryPoint.of_vertex(graph.vertices[int(np.argmin(gaps))])
    return out


def random_rotation(seed: int) -> np.ndarray:
    """Seeded uniform-ish 3x3 rotation via QR of a Gaussian matrix."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.normal(size=(3, 3)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, -1] = -q[:, -1]
    return q
