"""Map transformations on sampled domains: discrete modification, floods,
and the convex transformation, tied together by clique certificates.

Continuity of a sampled map cannot be decided, only certified: every
continuity hypothesis becomes a finite adjacency check on the sample net,
and failures surface the offending sample pair instead of a verdict.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Mapping, Sequence

import numpy as np

from .complex import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    check_simplicial,
    vietoris_rips,
)
from .graph import Graph
from .realization import BaryPoint, aligned, dominant_vertex, pl_evaluate, subdivided_point

Vertex = Hashable


class CertificateFailure(ValueError):
    """A finite continuity certificate failed; names the violating samples."""

    def __init__(self, stage: str, pair: tuple, values: tuple, detail: str = ""):
        self.stage = stage
        self.pair = pair
        self.values = values
        self.detail = detail
        message = (
            f"{stage}: samples {pair[0]} and {pair[1]} carry values "
            f"{values[0]!r} and {values[1]!r}"
        )
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class SampledDomain:
    """Finite net of a triangulated compact metric space.

    Samples are indexed 0..n-1 with embedding coordinates; the metric is the
    Euclidean (chordal) distance on the embedding.  The triangulation's
    vertices are sample indices, and ``basepoints`` is the marked subset that
    floods must preserve.
    """

    def __init__(
        self,
        coords: Sequence,
        triangulation: SimplicialComplex,
        basepoints: Sequence[int] = (),
        eps_net: float | None = None,
    ):
        self.coords = np.asarray(coords, dtype=float)
        if self.coords.ndim != 2 or len(self.coords) == 0:
            raise ValueError("coords must be a nonempty (n, d) array")
        n = len(self.coords)
        for v in triangulation.vertices:
            if not isinstance(v, int) or not 0 <= v < n:
                raise ValueError(f"triangulation vertex {v!r} is not a sample index")
        self.triangulation = triangulation
        self.basepoints = tuple(sorted(set(int(b) for b in basepoints)))
        for b in self.basepoints:
            if not 0 <= b < n:
                raise ValueError(f"basepoint {b} is not a sample index")
        self._distances: np.ndarray | None = None
        if eps_net is None:
            mesh = self.max_simplex_diameter()
            eps_net = mesh if mesh > 0 else 1.0
        if eps_net <= 0:
            raise ValueError("eps_net must be positive")
        self.eps_net = float(eps_net)

    @property
    def n_samples(self) -> int:
        return len(self.coords)

    def distances(self) -> np.ndarray:
        """Full pairwise distance matrix, computed once and cached."""
        if self._distances is None:
            diff = self.coords[:, None, :] - self.coords[None, :, :]
            self._distances = np.sqrt((diff * diff).sum(axis=2))
        return self._distances

    def distance(self, i: int, j: int) -> float:
        return float(np.linalg.norm(self.coords[i] - self.coords[j]))

    @property
    def diameter(self) -> float:
        return float(self.distances().max())

    def simplex_diameter(self, simplex: Sequence[int]) -> float:
        d = self.distances()
        verts = list(simplex)
        return max(
            (float(d[u, v]) for i, u in enumerate(verts) for v in verts[i + 1 :]),
            default=0.0,
        )

    def max_simplex_diameter(self) -> float:
        top = self.triangulation.dimension()
        if top < 1:
            return 0.0
        return max(self.simplex_diameter(s) for s in self.triangulation.simplices(top))

    def nearest_sample(self, point) -> int:
        gaps = np.linalg.norm(self.coords - np.asarray(point, dtype=float), axis=1)
        return int(np.argmin(gaps))

    def spot_check_metric(self, rng: np.random.Generator, trials: int = 200) -> None:
        """Assert symmetry, zero diagonal, and the triangle inequality on
        random sample triples; raises AssertionError on violation."""
        d = self.distances()
        n = self.n_samples
        assert np.allclose(d, d.T), "metric is not symmetric"
        assert np.allclose(np.diag(d), 0.0), "metric has a nonzero diagonal"
        for _ in range(trials):
            i, j, k = rng.integers(0, n, size=3)
            assert d[i, k] <= d[i, j] + d[j, k] + 1e-9, "triangle inequality failed"


@dataclass(frozen=True)
class DiscreteMap:
    """Vertex-valued map on the samples of a domain, with a marked base value."""

    domain: SampledDomain
    target: Graph
    values: Mapping[int, Vertex] = field(hash=False)
    base_value: Vertex = None

    def __post_init__(self):
        for i in range(self.domain.n_samples):
            if i not in self.values:
                raise ValueError(f"no value for sample {i}")
            if self.values[i] not in self.target:
                raise ValueError(f"value {self.values[i]!r} is not a vertex of the target")
        if self.base_value not in self.target:
            raise ValueError(f"base value {self.base_value!r} is not a vertex of the target")
        for b in self.domain.basepoints:
            if self.values[b] != self.base_value:
                raise ValueError(
                    f"basepoint {b} has value {self.values[b]!r}, expected {self.base_value!r}"
                )

    def __call__(self, sample: int) -> Vertex:
        return self.values[sample]

    def image_vertices(self) -> tuple:
        """Distinct values in the target graph's vertex order."""
        image = set(self.values.values())
        return tuple(v for v in self.target.vertices if v in image)

    def preimage(self, v: Vertex) -> tuple:
        return tuple(i for i in range(self.domain.n_samples) if self.values[i] == v)

    def with_values(self, new_values: Mapping[int, Vertex]) -> "DiscreteMap":
        return DiscreteMap(self.domain, self.target, dict(new_values), self.base_value)

    def to_json_dict(self) -> dict:
        return {
            "base": str(self.base_value),
            "values": {str(i): str(self.values[i]) for i in range(self.domain.n_samples)},
        }


@dataclass(frozen=True)
class CliqueCertificate:
    """Per-sample radii within which all map values are pairwise adjacent,
    plus their minimum, a Lebesgue-style number for the induced cover."""

    radii: Mapping[int, float] = field(hash=False)
    delta: float = 0.0

    def to_json_dict(self) -> dict:
        return {
            "delta": self.delta,
            "radii": {str(i): self.radii[i] for i in sorted(self.radii)},
        }


def _graph_aligned(point: BaryPoint, graph: Graph) -> BaryPoint:
    pairs = sorted(zip(point.carrier, point.coords), key=lambda pv: graph.index(pv[0]))
    return BaryPoint(tuple(v for v, _ in pairs), tuple(t for _, t in pairs))


def discrete_modify(
    sample_points: Mapping[int, BaryPoint],
    domain: SampledDomain,
    graph: Graph,
) -> DiscreteMap:
    """Compose a sampled realization-valued map with the vertex retraction.

    Every sample's image point must be carried by a clique of the graph; the
    resulting value is the least-index vertex with maximal coordinate, so
    samples already sitting on vertices keep their value.
    """
    values = {}
    for i in range(domain.n_samples):
        if i not in sample_points:
            raise ValueError(f"no image point for sample {i}")
        point = sample_points[i].canonical()
        carrier = sorted(point.carrier, key=graph.index)
        for j, a in enumerate(carrier):
            for b in carrier[j + 1 :]:
                if not graph.are_adjacent(a, b):
                    raise ValueError(
                        f"carrier {tuple(carrier)} of sample {i} is not a clique: "
                        f"{a!r} and {b!r} are not adjacent"
                    )
        values[i] = dominant_vertex(_graph_aligned(point, graph))

    if domain.basepoints:
        base = values[domain.basepoints[0]]
        for b in domain.basepoints:
            if values[b] != base:
                raise ValueError(
                    f"basepoints map to different vertices: {values[b]!r} vs {base!r}"
                )
    else:
        base = values[0]
    return DiscreteMap(domain, graph, values, base)


def flood(f: DiscreteMap, v: Vertex, radii: Mapping[int, float]) -> DiscreteMap:
    """Overwrite with ``v`` on the half-radius balls around its preimage.

    Each preimage sample's full-radius ball must only contain values adjacent
    to ``v``, and (when ``v`` is not the base value) must avoid every
    basepoint; violations raise ``CertificateFailure`` with the offending
    pair.  Values change only inside the union of the half-radius balls.
    """
    if v not in f.target:
        raise ValueError(f"{v!r} is not a vertex of the target")
    preimage = f.preimage(v)
    dist = f.domain.distances()
    closed = f.target.closed_neighborhood(v)
    adjacent_value = np.fromiter(
        (f.values[i] in closed for i in range(f.domain.n_samples)),
        dtype=bool,
        count=f.domain.n_samples,
    )
    basepoints = np.array(f.domain.basepoints, dtype=int)

    for y in preimage:
        if y not in radii:
            raise ValueError(f"no radius for preimage sample {y}")
        r = float(radii[y])
        if r <= 0:
            raise ValueError(f"radius for sample {y} must be positive")
        bad = (dist[y] < r) & ~adjacent_value
        if bad.any():
            z = int(np.flatnonzero(bad)[0])
            raise CertificateFailure(
                f"flood stage {v!r}",
                (y, z),
                (v, f.values[z]),
                f"value within radius {r:g} of a preimage sample is not adjacent",
            )
        if v != f.base_value and basepoints.size and bool((dist[y][basepoints] < r).any()):
            a = int(basepoints[np.flatnonzero(dist[y][basepoints] < r)[0]])
            raise CertificateFailure(
                f"flood stage {v!r}",
                (y, a),
                (v, f.base_value),
                "flooding ball touches a basepoint",
            )

    new_values = dict(f.values)
    for y in preimage:
        half = float(radii[y]) / 2.0
        for z in np.flatnonzero(dist[y] < half):
            new_values[int(z)] = v
    return f.with_values(new_values)


def flood_stage_radii(f: DiscreteMap, v: Vertex) -> dict:
    """Maximal admissible flood radii for the stage at vertex ``v``.

    For each preimage sample: the distance to the nearest sample whose value
    is not adjacent to ``v``, capped at the distance to the nearest basepoint
    (when ``v`` differs from the base value) and at half the domain diameter.
    Raises ``CertificateFailure`` when no positive radius exists.
    """
    preimage = f.preimage(v)
    if not preimage:
        return {}
    dist = f.domain.distances()
    closed = f.target.closed_neighborhood(v)
    bad = np.fromiter(
        (f.values[i] not in closed for i in range(f.domain.n_samples)),
        dtype=bool,
        count=f.domain.n_samples,
    )
    basepoints = np.array(f.domain.basepoints, dtype=int)
    diameter = f.domain.diameter
    cap = diameter / 2.0 if diameter > 0 else 1.0
    radii = {}
    for y in preimage:
        r = cap
        if bad.any():
            nearest_bad = float(dist[y][bad].min())
            if nearest_bad <= 0.0:
                z = int(np.flatnonzero(bad & (dist[y] <= 0.0))[0])
                raise CertificateFailure(
                    f"flood stage {v!r}",
                    (y, z),
                    (v, f.values[z]),
                    "coincident sample with non-adjacent value",
                )
            r = min(r, nearest_bad)
        if v != f.base_value and basepoints.size:
            nearest_base = float(dist[y][basepoints].min())
            if nearest_base <= 0.0:
                a = int(basepoints[np.argmin(dist[y][basepoints])])
                raise CertificateFailure(
                    f"flood stage {v!r}",
                    (y, a),
                    (v, f.base_value),
                    "preimage sample coincides with a basepoint",
                )
            r = min(r, nearest_base)
        radii[y] = r
    return radii


def flood_sequence(f: DiscreteMap) -> DiscreteMap:
    """Flood once per image vertex, in vertex order, with maximal radii.

    Stage order is ascending vertex order over the image of the input map;
    stages whose preimage was overwritten by earlier floods degenerate to the
    identity.  Errors from a stage propagate with the stage named.
    """
    current = f
    for v in f.image_vertices():
        radii = flood_stage_radii(current, v)
        if radii:
            current = flood(current, v, radii)
    return current


def clique_certificate(f: DiscreteMap) -> CliqueCertificate:
    """Largest per-sample radii whose closed balls carry pairwise-adjacent values.

    Radii are drawn from the finite set of pairwise distances.  When even the
    nearest neighbors violate adjacency there is no positive radius and the
    certificate fails, naming the violating pair; when nothing violates, the
    radius is the domain diameter.
    """
    dist = f.domain.distances()
    n = f.domain.n_samples
    diameter = f.domain.diameter if n > 1 else 0.0
    fallback = diameter if diameter > 0 else 1.0
    radii = {}
    for y in range(n):
        row = dist[y]
        order = np.argsort(row, kind="stable")
        present: dict = {}  # value -> first sample seen carrying it
        r = None
        prev_level = None
        i = 0
        while i < n and r is None:
            d_here = float(row[order[i]])
            j = i
            while j < n and float(row[order[j]]) == d_here:
                z = int(order[j])
                vz = f.values[z]
                if vz not in present:
                    conflict = next(
                        (
                            (holder, u)
                            for u, holder in present.items()
                            if not f.target.are_adjacent(vz, u)
                        ),
                        None,
                    )
                    if conflict is not None:
                        holder, u = conflict
                        if prev_level is None or prev_level <= 0.0:
                            raise CertificateFailure(
                                "clique certificate",
                                (holder, z),
                                (u, vz),
                                f"nearest neighbors of sample {y} are not adjacent",
                            )
                        r = prev_level
                        break
                    present[vz] = z
                j += 1
            if r is None:
                prev_level = d_here
                i = j
        radii[y] = fallback if r is None else r
    return CliqueCertificate(radii, min(radii.values()))


def convex_transform(
    f: DiscreteMap,
    triangulation: SimplicialComplex,
    cert: CliqueCertificate,
    target_complex: SimplicialComplex | None = None,
) -> SimplicialMap:
    """The simplicial map induced by a vertex-valued map on a fine triangulation.

    Every simplex must be smaller than the certificate's Lebesgue number and
    its values must form a clique; restricting ``f`` to the vertices is then
    simplicial into the clique complex, and shared faces agree exactly by
    construction.  Downward closure makes the edge-level checks cover every
    simplex.
    """
    dist = f.domain.distances()
    for u, w in triangulation.simplices(1):
        if float(dist[u, w]) >= cert.delta:
            raise CertificateFailure(
                "convex transform",
                (u, w),
                (f.values[u], f.values[w]),
                f"edge length {float(dist[u, w]):g} is not below delta {cert.delta:g}",
            )
        if not f.target.are_adjacent(f.values[u], f.values[w]):
            raise CertificateFailure(
                "convex transform",
                (u, w),
                (f.values[u], f.values[w]),
                "triangulation edge does not map to a clique",
            )
    if target_complex is None:
        cap = max(2, triangulation.dimension())
        target_complex = vietoris_rips(f.target, cap)
    m = SimplicialMap(
        triangulation,
        target_complex,
        {v: f.values[v] for v in triangulation.vertices},
    )
    if not check_simplicial(m):  # pragma: no cover - guaranteed by the checks above
        raise AssertionError("convex transform produced a non-simplicial map")
    return m


def carriers_compatible(
    m1: SimplicialMap,
    m2: SimplicialMap,
    points: Sequence[BaryPoint],
    face_vertex: Mapping | None = None,
) -> bool:
    """Do both maps send each sampled point into a common target simplex?

    ``m2`` must be defined on the barycentric subdivision of ``m1``'s source;
    ``face_vertex`` renames each face tuple of the source to the subdivision
    vertex at its barycenter (identity when the subdivision kept face tuples
    as vertices).  A common carrier certifies that the straight-line homotopy
    between the two evaluations stays inside the realization.
    """
    if m1.target != m2.target:
        raise ValueError("maps have different target complexes")
    for x in points:
        p1 = pl_evaluate(m1, aligned(x, m1.source))
        x2 = subdivided_point(aligned(x, m1.source), face_vertex)
        p2 = pl_evaluate(m2, aligned(x2, m2.source))
        union = set(p1.carrier) | set(p2.carrier)
        if not m1.target.has_simplex(m1.target.sort_simplex(union)):
            return False
    return True


def subdivide_domain(domain: SampledDomain, values: Mapping[int, Vertex]) -> tuple:
    """One barycentric subdivision of a sampled domain, with extended values.

    New samples sit at the Euclidean barycenters of the faces; each inherits
    the value of the nearest pre-existing sample, the finite stand-in for
    evaluating the map at the new point.  Returns ``(new_domain, new_values,
    face_vertex)`` where ``face_vertex`` maps face tuples of the old
    triangulation to new sample indices.
    """
    tri = domain.triangulation
    sd, _carriers = barycentric_subdivision(tri)
    n = domain.n_samples
    face_vertex: dict = {}
    new_rows = []
    for face in sd.vertices:
        if len(face) == 1:
            face_vertex[face] = face[0]
        else:
            face_vertex[face] = n + len(new_rows)
            new_rows.append(domain.coords[list(face)].mean(axis=0))
    coords = np.vstack([domain.coords, np.array(new_rows)]) if new_rows else domain.coords

    top = [
        tuple(sorted(face_vertex[f] for f in chain))
        for d in range(1, sd.dim_cap + 1)
        for chain in sd.simplices(d)
    ]
    renamed = SimplicialComplex.from_simplices(
        top if top else [(face_vertex[f],) for f in sd.vertices],
        sd.dim_cap,
        vertices=sorted(face_vertex.values()),
    )

    new_values = dict(values)
    for face, idx in face_vertex.items():
        if len(face) > 1:
            gaps = np.linalg.norm(domain.coords - coords[idx], axis=1)
            new_values[idx] = values[int(np.argmin(gaps))]

    new_domain = SampledDomain(coords, renamed, domain.basepoints)
    return new_domain, new_values, face_vertex
