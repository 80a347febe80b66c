"""Graph operations: joins, cones, suspensions, refinements, stellations, gluing."""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

from .complex_core import Graph, InvalidInput, Simplex, cliques, edge, maximal_cliques


def _shift(g: Graph, offset: int) -> Graph:
    return g.relabel({v: v + offset for v in g.vertices})


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    if set(g1.vertices) & set(g2.vertices):
        raise InvalidInput("vertex sets overlap")
    adj = dict(g1.adjacency)
    adj.update(g2.adjacency)
    return Graph._trusted(adj)


def join(g1: Graph, g2: Graph) -> Graph:
    """Union of both graphs plus every edge between them.

    ``g2`` is shifted above the largest id of ``g1`` when the vertex sets
    overlap.
    """
    if set(g1.vertices) & set(g2.vertices):
        g2 = _shift(g2, max(g1.vertices) + 1 - min(g2.vertices))
    a, b = frozenset(g1.vertices), frozenset(g2.vertices)
    adj = {v: nb | b for v, nb in g1.adjacency.items()}
    adj.update({v: nb | a for v, nb in g2.adjacency.items()})
    return Graph._trusted(adj)


def cone(g: Graph) -> Graph:
    apex = max(g.vertices, default=-1) + 1
    return join(g, Graph([apex]))


def suspension(g: Graph) -> Graph:
    top = max(g.vertices, default=-1) + 1
    return join(g, Graph([top, top + 1]))


def barycentric_carrier(g: Graph) -> list[Simplex]:
    """Simplices of the Whitney complex in the order used as refinement ids."""
    return sorted(cliques(g), key=lambda s: (len(s), s))


def barycentric_refinement(g: Graph) -> Graph:
    """Graph on all simplices of ``g``; two are joined when one contains the other.

    Vertex ``i`` of the result is ``barycentric_carrier(g)[i]``: simplices
    sorted by dimension, then lexicographically.
    """
    simplices = barycentric_carrier(g)
    index = {s: i for i, s in enumerate(simplices)}
    edges = []
    for s in simplices:
        i = index[s]
        for k in range(1, len(s)):
            for face in combinations(s, k):
                edges.append((index[face], i))
    return Graph(range(len(simplices)), edges)


def edge_refinement(g: Graph, e: Sequence[int]) -> Graph:
    """Split edge (a, b) by a new vertex joined to a, b and S(a) ∩ S(b)."""
    a, b = int(e[0]), int(e[1])
    if not g.has_edge(a, b):
        raise InvalidInput(f"({a}, {b}) is not an edge")
    c = max(g.vertices) + 1
    common = g.neighbors(a) & g.neighbors(b)
    new_edges = [(a, c), (b, c)] + [(w, c) for w in common]
    return g.with_edges(add=new_edges, remove=[edge(a, b)], new_vertices=[c])


def _stellatable(g: Graph) -> set[Simplex]:
    """Facets plus boundary faces (codimension one, in exactly one facet)."""
    facets = maximal_cliques(g)
    owners: dict[Simplex, int] = {}
    for f in facets:
        for face in combinations(f, len(f) - 1):
            owners[face] = owners.get(face, 0) + 1
    dims = {len(f) for f in facets}
    out = set(facets)
    if len(dims) == 1:
        out.update(face for face, k in owners.items() if k == 1 and face)
    return out


def stellate_facet(g: Graph, f: Sequence[int]) -> Graph:
    """Add a vertex adjacent to exactly the vertices of ``f``.

    ``f`` is a facet or, in a pure complex, a boundary face; stellating a
    boundary face attaches a new simplex on the outside.
    """
    return stellate_facets(g, [f])


def stellate_facets(g: Graph, facets: Sequence[Sequence[int]]) -> Graph:
    """Stellate several faces of the original graph at once."""
    allowed = _stellatable(g)
    top = max(g.vertices)
    adds, new = [], []
    for i, f in enumerate(facets):
        face = tuple(sorted(f))
        if face not in allowed:
            raise InvalidInput(f"{face} is neither a facet nor a boundary face")
        x = top + 1 + i
        new.append(x)
        adds.extend((v, x) for v in face)
    return g.with_edges(add=adds, new_vertices=new)


def glue_along(g1: Graph, g2: Graph, face_map: Mapping[int, int]) -> Graph:
    """Identify the simplex ``face_map.keys()`` of ``g2`` with ``face_map.values()`` of ``g1``.

    The remaining vertices of ``g2`` are renumbered, in increasing order,
    above the largest id of ``g1``.
    """
    src = sorted(face_map)
    dst = [face_map[v] for v in src]
    if len(set(dst)) != len(dst):
        raise InvalidInput("face map is not injective")
    for u, v in combinations(src, 2):
        if not g2.has_edge(u, v):
            raise InvalidInput("glued vertices of g2 do not span a simplex")
    for u, v in combinations(dst, 2):
        if not g1.has_edge(u, v):
            raise InvalidInput("glued vertices of g1 do not span a simplex")
    top = max(g1.vertices) + 1
    mapping = dict(face_map)
    for v in g2.vertices:
        if v not in mapping:
            mapping[v] = top
            top += 1
    adj = {v: set(nb) for v, nb in g1.adjacency.items()}
    for v in g2.vertices:
        adj.setdefault(mapping[v], set())
    for u, v in g2.edges():
        a, b = mapping[u], mapping[v]
        adj[a].add(b)
        adj[b].add(a)
    return Graph._trusted({v: frozenset(nb) for v, nb in adj.items()})
