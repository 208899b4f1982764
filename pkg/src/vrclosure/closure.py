"""Finite Cech closure spaces and exact continuity checking.

A space is stored through the closures of its singletons only; the closure
of an arbitrary subset is the union of the singleton closures.  Additivity
and ``c(empty) = empty`` then hold by construction, so the only axiom
enforced at build time is ``x in c({x})``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping

Point = Hashable


class ClosureSpace:
    """Finite point set with an additive closure operator.

    Parameters
    ----------
    points:
        Ordered iterable of distinct point identifiers.  The order is kept
        and reused downstream for deterministic tie-breaking.
    singleton_closures:
        Mapping from each point to the closure of its singleton.  Every
        closure must contain the point itself and stay inside the space.
    """

    def __init__(
        self,
        points: Iterable[Point],
        singleton_closures: Mapping[Point, Iterable[Point]],
    ):
        self.points = tuple(points)
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate point identifiers")
        self._point_set = frozenset(self.points)
        cl1 = {}
        for x in self.points:
            try:
                raw = singleton_closures[x]
            except KeyError:
                raise ValueError(f"no singleton closure given for {x!r}") from None
            cx = frozenset(raw)
            if x not in cx:
                raise ValueError(f"closure axiom violated: {x!r} not in cl({x!r})")
            if not cx <= self._point_set:
                raise ValueError(f"cl({x!r}) contains points outside the space")
            cl1[x] = cx
        self.cl1 = cl1

    def __contains__(self, x: Point) -> bool:
        return x in self._point_set

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"ClosureSpace({len(self.points)} points)"

    def _require(self, x: Point) -> None:
        if x not in self._point_set:
            raise KeyError(f"unknown point {x!r}")

    def closure(self, subset: Iterable[Point]) -> frozenset:
        """Closure of ``subset``: the union of its singleton closures."""
        out: set = set()
        for x in subset:
            self._require(x)
            out |= self.cl1[x]
        return frozenset(out)

    def is_neighborhood(self, candidate: Iterable[Point], x: Point) -> bool:
        """True iff ``x`` lies outside the closure of the complement of ``candidate``."""
        self._require(x)
        cand = frozenset(candidate)
        for y in cand:
            self._require(y)
        return x not in self.closure(self._point_set - cand)

    def minimal_neighborhood(self, x: Point) -> frozenset:
        """Smallest neighborhood of ``x``; exists because the space is finite.

        A set is a neighborhood of ``x`` exactly when it contains every point
        whose singleton closure captures ``x``, so the minimal one is that set
        of points itself.
        """
        self._require(x)
        return frozenset(y for y in self.points if x in self.cl1[y])


@dataclass(frozen=True)
class PointMap:
    """A total map between two finite closure spaces."""

    domain: ClosureSpace
    codomain: ClosureSpace
    values: Mapping[Point, Point] = field(hash=False)

    def __post_init__(self):
        for x in self.domain.points:
            if x not in self.values:
                raise ValueError(f"map not total: no value for {x!r}")
            if self.values[x] not in self.codomain:
                raise ValueError(f"value {self.values[x]!r} outside the codomain")

    def __call__(self, x: Point) -> Point:
        return self.values[x]


def is_continuous(f: PointMap) -> bool:
    """Exact continuity check for a map between finite closure spaces.

    By additivity it is enough to test singletons: ``f`` is continuous iff
    ``f(cl({x}))`` is contained in ``cl({f(x)})`` for every point ``x``.
    """
    dom, cod = f.domain, f.codomain
    for x in dom.points:
        target = cod.cl1[f(x)]
        if any(f(y) not in target for y in dom.cl1[x]):
            return False
    return True


def compose(g: PointMap, f: PointMap) -> PointMap:
    """The composite ``g after f``; domains must line up."""
    if f.codomain is not g.domain and f.codomain.points != g.domain.points:
        raise ValueError("codomain of f does not match domain of g")
    return PointMap(f.domain, g.codomain, {x: g(f(x)) for x in f.domain.points})
