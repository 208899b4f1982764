"""Simplicial complexes: clique (Vietoris-Rips) construction, barycentric
subdivision, stars, and simplicial maps.

Simplices are tuples of vertex identifiers, strictly increasing in the
complex's vertex order, grouped by dimension up to a mandatory cap.  The cap
is required because clique complexes blow up; everything downstream needs
dimensions <= 3 only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Hashable, Iterable, Mapping, Sequence

from .graph import Graph, sort_vertices

Vertex = Hashable
Simplex = tuple


class SimplicialComplex:
    """A finite, downward-closed family of simplices capped at ``dim_cap``.

    ``by_dim[k]`` holds the k-simplices as sorted tuples, in lexicographic
    order of vertex indices; this ordering is the deterministic simplex order
    used by boundary matrices and serialization.
    """

    def __init__(self, vertices: Sequence[Vertex], by_dim: Sequence[Sequence[Simplex]], dim_cap: int):
        if dim_cap < 0:
            raise ValueError("dim_cap must be nonnegative")
        self.vertices = tuple(vertices)
        self.vertex_index = {v: i for i, v in enumerate(self.vertices)}
        if len(self.vertex_index) != len(self.vertices):
            raise ValueError("duplicate vertices")
        self.dim_cap = dim_cap
        filled = [tuple(by_dim[d]) if d < len(by_dim) else () for d in range(dim_cap + 1)]
        self._by_dim: tuple = tuple(filled)
        self._sets = tuple(frozenset(level) for level in self._by_dim)
        self._check_well_formed()

    def _check_well_formed(self) -> None:
        for d, level in enumerate(self._by_dim):
            for s in level:
                if len(s) != d + 1:
                    raise ValueError(f"simplex {s} stored at dimension {d}")
                idx = [self.vertex_index.get(v) for v in s]
                if None in idx:
                    raise ValueError(f"simplex {s} uses unknown vertices")
                if any(a >= b for a, b in zip(idx, idx[1:])):
                    raise ValueError(f"simplex {s} is not strictly sorted")
                if d > 0:
                    for face in combinations(s, d):
                        if face not in self._sets[d - 1]:
                            raise ValueError(f"missing face {face} of {s}")

    # -- queries ---------------------------------------------------

    def simplices(self, dim: int) -> tuple:
        """All simplices of the given dimension, in deterministic order."""
        if dim < 0 or dim > self.dim_cap:
            return ()
        return self._by_dim[dim]

    def all_simplices(self):
        for level in self._by_dim:
            yield from level

    def has_simplex(self, simplex: Sequence[Vertex]) -> bool:
        s = tuple(simplex)
        d = len(s) - 1
        return 0 <= d <= self.dim_cap and s in self._sets[d]

    def sort_simplex(self, vertices: Iterable[Vertex]) -> Simplex:
        """Sort distinct vertices into this complex's simplex order."""
        return tuple(sorted(vertices, key=lambda v: self.vertex_index[v]))

    def counts(self) -> list:
        return [len(level) for level in self._by_dim]

    def dimension(self) -> int:
        """Largest dimension with at least one simplex (-1 if empty)."""
        for d in range(self.dim_cap, -1, -1):
            if self._by_dim[d]:
                return d
        return -1

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.vertices == other.vertices
            and self.dim_cap == other.dim_cap
            and self._by_dim == other._by_dim
        )

    def __repr__(self) -> str:
        return f"SimplicialComplex(counts={self.counts()})"

    @classmethod
    def from_simplices(
        cls,
        simplices: Iterable[Sequence[Vertex]],
        dim_cap: int,
        vertices: Iterable[Vertex] | None = None,
    ) -> "SimplicialComplex":
        """Build the downward closure of the given simplices, capped at ``dim_cap``."""
        given = [tuple(s) for s in simplices]
        if vertices is None:
            seen: set = set()
            for s in given:
                seen.update(s)
            verts = sort_vertices(seen)
        else:
            verts = sort_vertices(vertices)
        index = {v: i for i, v in enumerate(verts)}
        levels: list = [set() for _ in range(dim_cap + 1)]
        for v in verts:
            levels[0].add((v,))
        for s in given:
            if len(set(s)) != len(s):
                raise ValueError(f"simplex {s} has repeated vertices")
            canon = tuple(sorted(s, key=index.__getitem__))
            for k in range(1, min(len(canon), dim_cap + 1)):
                for face in combinations(canon, k + 1):
                    levels[k].add(face)
        by_dim = [sorted(level, key=lambda s: tuple(index[v] for v in s)) for level in levels]
        return cls(verts, by_dim, dim_cap)


def vietoris_rips(graph: Graph, dim_cap: int) -> SimplicialComplex:
    """Clique complex of a reflexive graph, capped at ``dim_cap``.

    k-simplices are exactly the (k+1)-cliques.  Enumeration is by incremental
    expansion: each simplex is extended only by common neighbors that come
    later in the vertex order, so every clique is produced exactly once and
    the output order is deterministic.
    """
    if dim_cap < 0:
        raise ValueError("dim_cap must be nonnegative")
    verts = graph.vertices
    n = len(verts)
    nbr_after = [
        frozenset(graph.index(w) for w in graph.neighbors(verts[i]) if graph.index(w) > i)
        for i in range(n)
    ]
    by_dim: list = [[(i,) for i in range(n)]]
    for _ in range(dim_cap):
        prev = by_dim[-1]
        nxt = []
        for s in prev:
            common = nbr_after[s[0]]
            for i in s[1:]:
                common = common & nbr_after[i]
                if not common:
                    break
            for j in sorted(common):
                nxt.append(s + (j,))
        if not nxt:
            by_dim.append([])
            continue
        by_dim.append(nxt)
    levels = [[tuple(verts[i] for i in s) for s in level] for level in by_dim]
    return SimplicialComplex(verts, levels, dim_cap)


def barycentric_subdivision(k: SimplicialComplex) -> tuple:
    """Barycentric subdivision together with the carrier of each new vertex.

    Vertices of sd(K) are the simplices of K themselves (their barycenters);
    d-simplices of sd(K) are chains of d+1 faces under strict inclusion.
    Returns ``(sd_complex, carriers)`` where ``carriers`` maps each new vertex
    to the original simplex it subdivides; since new vertices are identified
    with their face tuples, the carrier lookup is the identity.
    """
    faces = [s for s in k.all_simplices()]
    order_key = {s: (len(s), tuple(k.vertex_index[v] for v in s)) for s in faces}
    new_vertices = tuple(sorted(faces, key=order_key.__getitem__))

    # strict-coface lists, used to extend chains one step at a time
    cofaces: dict = {s: [] for s in faces}
    for s in faces:
        for d in range(len(s) - 1):
            for face in combinations(s, d + 1):
                cofaces[face].append(s)
    for s in faces:
        cofaces[s].sort(key=order_key.__getitem__)

    by_dim: list = [[(s,) for s in new_vertices]]
    for _ in range(k.dim_cap):
        prev = by_dim[-1]
        nxt = [chain + (big,) for chain in prev for big in cofaces[chain[-1]]]
        by_dim.append(nxt)

    sd = SimplicialComplex(new_vertices, by_dim, k.dim_cap)
    carriers = {s: s for s in new_vertices}
    return sd, carriers


def closed_star(k: SimplicialComplex, v: Vertex) -> frozenset:
    """All simplices containing ``v`` plus their faces.

    This is the combinatorial support of the minimal neighborhood of a vertex
    in the coarsened realization of a clique complex.
    """
    if v not in k.vertex_index:
        raise KeyError(f"unknown vertex {v!r}")
    out: set = set()
    for s in k.all_simplices():
        if v in s:
            for size in range(1, len(s) + 1):
                out.update(combinations(s, size))
    return frozenset(out)


@dataclass(frozen=True)
class SimplicialMap:
    """Vertex map between complexes, intended to send simplices to simplices."""

    source: SimplicialComplex
    target: SimplicialComplex
    vertex_images: Mapping[Vertex, Vertex] = field(hash=False)

    def __post_init__(self):
        for v in self.source.vertices:
            if v not in self.vertex_images:
                raise ValueError(f"no image for source vertex {v!r}")
            if self.vertex_images[v] not in self.target.vertex_index:
                raise ValueError(f"image {self.vertex_images[v]!r} is not a target vertex")

    def __call__(self, v: Vertex) -> Vertex:
        return self.vertex_images[v]

    def image_simplex(self, simplex: Sequence[Vertex]) -> Simplex:
        """Deduplicated image of a simplex, sorted in the target's order."""
        return self.target.sort_simplex({self.vertex_images[v] for v in simplex})


def check_simplicial(m: SimplicialMap) -> bool:
    """True iff every source simplex lands on a target simplex."""
    for s in m.source.all_simplices():
        if not m.target.has_simplex(m.image_simplex(s)):
            return False
    return True


def compose_simplicial(outer: SimplicialMap, inner: SimplicialMap) -> SimplicialMap:
    if inner.target != outer.source:
        raise ValueError("target of inner map does not match source of outer map")
    return SimplicialMap(
        inner.source,
        outer.target,
        {v: outer(inner(v)) for v in inner.source.vertices},
    )


def check_star_condition(f_sample: Mapping, phi: SimplicialMap) -> bool:
    """Star condition for a sampled map against a candidate simplicial map.

    ``f_sample`` assigns each source vertex a point of the target realization.
    The condition holds iff every vertex's image under ``phi`` is a vertex of
    the carrier of the sampled point: being a vertex of the minimal simplex
    containing the point is equivalent to lying in every simplex whose
    realization contains it.
    """
    from .realization import aligned  # local import to avoid a cycle

    for x in phi.source.vertices:
        point = aligned(f_sample[x].canonical(), phi.target)
        if not phi.target.has_simplex(point.carrier):
            raise ValueError(
                f"malformed barycentric point for {x!r}: carrier {point.carrier} "
                "is not a simplex of the target"
            )
        if phi(x) not in point.carrier:
            return False
    return True
