"""Shelling orders: validation and the constructive sphere/ball shellings."""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .complex_core import Complex, Graph, InvalidInput, Simplex, maximal_cliques

ShellingOrder = list[Simplex]


def _intersection_facets(new: Simplex, previous: Iterable[Simplex]) -> frozenset[Simplex]:
    s = set(new)
    pieces = {tuple(sorted(s.intersection(p))) for p in previous}
    pieces.discard(())
    sets = [frozenset(p) for p in pieces]
    return frozenset(tuple(sorted(a)) for a in sets if not any(a < b for b in sets))


@lru_cache(maxsize=65536)
def is_shellable_small(facets: frozenset[Simplex]) -> bool:
    """Exhaustive shellability test for small complexes (e.g. links inside a simplex).

    A 0-dimensional complex is always shellable and so is the empty
    complex; in positive dimension each new facet must meet its
    predecessors in a non-empty pure shellable complex one dimension lower.
    """
    if not facets:
        return True
    dims = {len(f) - 1 for f in facets}
    if len(dims) != 1:
        return False
    d = dims.pop()
    if d == 0:
        return True
    fs = sorted(facets)

    @lru_cache(maxsize=None)
    def grow(placed: frozenset[int]) -> bool:
        if len(placed) == len(fs):
            return True
        for i in range(len(fs)):
            if i in placed:
                continue
            if placed:
                h = _intersection_facets(fs[i], [fs[j] for j in placed])
                if not _valid_step(h, d):
                    continue
            if grow(placed | {i}):
                return True
        return False

    return grow(frozenset())


def _valid_step(h: frozenset[Simplex], d: int) -> bool:
    if d == 0:
        return True
    if not h or any(len(f) != d for f in h):
        return False
    return is_shellable_small(h)


def valid_intersection(h: frozenset[Simplex], d: int) -> bool:
    """Whether a new d-facet meeting the previous ones in the maximal faces ``h`` is a shelling step."""
    return _valid_step(h, d)


def step_is_valid(new: Simplex, previous: Sequence[Simplex], d: int) -> bool:
    if not previous:
        return True
    return _valid_step(_intersection_facets(new, previous), d)


def verify_shelling(c: Complex, order: Sequence[Sequence[int]]) -> bool:
    """True iff ``order`` is a shelling of the pure complex ``c``."""
    canon = [tuple(sorted(f)) for f in order]
    if len(canon) != len(c.facets) or set(canon) != set(c.facets):
        raise InvalidInput("order is not a permutation of the facets")
    if not c.is_pure():
        return False
    d = c.dim
    for k in range(1, len(canon)):
        if not step_is_valid(canon[k], canon[:k], d):
            return False
    return True


# -- construction ------------------------------------------------------------


def _cone(x: int, order: Iterable[Simplex]) -> list[Simplex]:
    return [tuple(sorted(y + (x,))) for y in order]


def _pure_dim(g: Graph) -> int | None:
    dims = {len(f) - 1 for f in maximal_cliques(g)}
    return dims.pop() if len(dims) == 1 else None


def peel_shelling(g: Graph) -> ShellingOrder | None:
    """Shelling of a contractible pure graph by removing vertices one at a time.

    If ``S(x)`` and ``G - x`` are contractible and pure, a shelling of
    ``G - x`` followed by the cones over a shelling of ``S(x)`` shells ``G``.
    """
    from .recognition import _contractible

    failed: set[frozenset[int]] = set()

    def peel(h: Graph) -> ShellingOrder | None:
        facets = maximal_cliques(h)
        if len(facets) == 1:
            return facets
        key = frozenset(h.vertices)
        if key in failed:
            return None
        d = _pure_dim(h)
        if d is None:
            failed.add(key)
            return None
        for x in sorted(h.vertices, key=lambda u: (h.degree(u), u)):
            link = h.induced(h.neighbors(x))
            rest = h.remove_vertex(x)
            if _pure_dim(link) != d - 1 or _pure_dim(rest) != d:
                continue
            if not (_contractible(link) and _contractible(rest)):
                continue
            inner = peel(link)
            if inner is None:
                continue
            outer = peel(rest)
            if outer is None:
                continue
            return outer + _cone(x, inner)
        failed.add(key)
        return None

    return peel(g)


def sphere_shelling(g: Graph, d: int) -> ShellingOrder | None:
    from .recognition import _contractible

    if d == 0:
        return [(v,) for v in g.vertices]
    for v in sorted(g.vertices, key=lambda u: (g.degree(u), u)):
        rest = g.remove_vertex(v)
        if _pure_dim(rest) != d or not _contractible(rest):
            continue
        outer = peel_shelling(rest)
        if outer is None:
            continue
        inner = sphere_shelling(g.induced(g.neighbors(v)), d - 1)
        if inner is None:
            continue
        return outer + _cone(v, inner)
    return None


def shelling_for_sphere_or_ball(g: Graph) -> ShellingOrder:
    from .recognition import classify_dgraph

    c = classify_dgraph(g)
    if c.tag == "Sphere":
        order = sphere_shelling(g, c.dim)
    elif c.tag == "Ball":
        order = peel_shelling(g)
    else:
        raise InvalidInput(f"expected a sphere or ball, got {c.label}")
    if order is None:
        raise RuntimeError(f"no shelling found for {c.label}")
    return order
