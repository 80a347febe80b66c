"""Membership tests for contractible graphs, spheres, balls and d-graphs.

All predicates follow the inductive definitions directly: a graph is
contractible if it is ``K_1`` or some vertex has contractible unit sphere
and contractible complement; a d-sphere is a d-graph that becomes
contractible after removing one vertex; a d-ball is a d-sphere minus a
vertex.  Results for unit spheres recur constantly, so every predicate is
memoised per isomorphism class.
"""

from __future__ import annotations

import heapq
import threading
from contextlib import contextmanager
from dataclasses import dataclass, field
from itertools import combinations

from .complex_core import (
    Graph,
    IsoCache,
    InvalidInput,
    NotPureError,
    boundary,
    edge,
    euler_characteristic,
    maximal_cliques,
)

_local = threading.local()


def _caches() -> dict[str, IsoCache]:
    caches = getattr(_local, "caches", None)
    if caches is None:
        caches = _local.caches = {}
    return caches


def _cache(name: str) -> IsoCache | None:
    if getattr(_local, "disabled", False):
        return None
    caches = _caches()
    if name not in caches:
        caches[name] = IsoCache()
    return caches[name]


def clear_caches() -> None:
    for c in _caches().values():
        c.clear()


@contextmanager
def cache_disabled():
    """Run recognition without reading or writing the memo tables."""
    prev = getattr(_local, "disabled", False)
    _local.disabled = True
    try:
        yield
    finally:
        _local.disabled = prev


_MISSING = object()


def _memo(name: str, g: Graph, compute):
    cache = _cache(name)
    if cache is None:
        return compute()
    value = cache.get(g, _MISSING)
    if value is _MISSING:
        value = compute()
        cache.put(g, value)
    return value


def _is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and all(len(nb) == 2 for nb in g.adjacency.values()) and g.is_connected()


def _is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


# -- contractibility --------------------------------------------------------


def _contractible(g: Graph) -> bool:
    if g.n == 0:
        return False
    if g.n == 1 or g.is_complete() or _is_tree(g):
        return True
    if not g.is_connected():
        return False
    if _is_cycle_graph(g):
        return False
    return _memo("contractible", g, lambda: _greedy_collapse(g) is not None)


def _greedy_collapse(g: Graph) -> list[int] | None:
    """Collapse sequence found without backtracking, or None if stuck.

    Candidates are tried by ascending current degree; a vertex whose unit
    sphere was found non-contractible is re-examined only after one of its
    neighbours is removed.
    """
    if euler_characteristic(g) != 1:
        return None
    adj = {v: set(nb) for v, nb in g.adjacency.items()}
    heap = [(len(nb), v) for v, nb in adj.items()]
    heapq.heapify(heap)
    dirty = set(adj)
    order: list[int] = []
    while len(adj) > 1:
        progressed = False
        while heap:
            deg, v = heapq.heappop(heap)
            if v not in adj or v not in dirty or deg != len(adj[v]):
                continue
            dirty.discard(v)
            link = Graph._trusted({w: frozenset(adj[w] & adj[v]) for w in adj[v]})
            if _contractible(link):
                for w in adj[v]:
                    adj[w].discard(v)
                    dirty.add(w)
                    heapq.heappush(heap, (len(adj[w]), w))
                del adj[v]
                order.append(v)
                progressed = True
                break
        if not progressed:
            return None
    return order


def _exact_collapse(g: Graph) -> list[int] | None:
    failed: set[frozenset[int]] = set()

    def search(alive: frozenset[int]) -> list[int] | None:
        if len(alive) == 1:
            return []
        if alive in failed:
            return None
        h = g.induced(alive)
        for v in sorted(alive, key=lambda u: (h.degree(u), u)):
            if _contractible(h.induced(h.neighbors(v))):
                rest = search(alive - {v})
                if rest is not None:
                    return [v] + rest
        failed.add(alive)
        return None

    if g.n == 0:
        return None
    return search(frozenset(g.vertices))


def is_contractible(g: Graph, exact: bool = False) -> list[int] | None:
    """Collapse sequence certifying contractibility, or None.

    The default greedy search never backtracks over the choice of removed
    vertex; ``exact=True`` explores all choices (exponential worst case).
    """
    if g.n == 0:
        return None
    if g.n == 1:
        return []
    seq = _greedy_collapse(g)
    if seq is None and exact:
        seq = _exact_collapse(g)
    return seq


def replay_collapse(g: Graph, sequence: list[int]) -> bool:
    h = g
    for v in sequence:
        if v not in h or not _contractible(h.induced(h.neighbors(v))):
            return False
        h = h.remove_vertex(v)
    return h.n == 1


# -- spheres, balls, d-graphs ------------------------------------------------


def sphere_dimension(g: Graph) -> int | None:
    """d if ``g`` is a d-sphere, else None.  The empty graph is the (-1)-sphere."""
    if g.n == 0:
        return -1
    if g.m == 0:
        return 0 if g.n == 2 else None
    if all(len(nb) == 2 for nb in g.adjacency.values()):
        return 1 if g.n >= 4 and g.is_connected() else None
    return _memo("sphere", g, lambda: _sphere_dimension(g))


def _sphere_dimension(g: Graph) -> int | None:
    d = dgraph_dimension(g)
    if d is None or d < 1:
        return None
    if euler_characteristic(g) != 1 + (-1) ** d:
        return None
    for v in sorted(g.vertices, key=lambda u: (g.degree(u), u)):
        if _contractible(g.remove_vertex(v)):
            return d
    return None


def dgraph_dimension(g: Graph) -> int | None:
    """d if every unit sphere is a (d-1)-sphere (a d-graph without boundary)."""
    if g.n == 0:
        return None
    if g.m == 0:
        return 0
    if all(len(nb) == 2 for nb in g.adjacency.values()):
        # every unit sphere is two isolated points; triangles fail below
        if all(not g.has_edge(*sorted(nb)) for nb in g.adjacency.values()):
            return 1
        return None
    return _memo("dgraph", g, lambda: _dgraph_dimension(g))


def _dgraph_dimension(g: Graph) -> int | None:
    dims = set()
    for v in g.vertices:
        s = g.induced(g.neighbors(v))
        k = sphere_dimension(s)
        if k is None:
            return None
        dims.add(k)
        if len(dims) > 1:
            return None
    return dims.pop() + 1


def _dim_or_none(g: Graph) -> int | None:
    try:
        facets = maximal_cliques(g)
    except NotPureError:
        return None
    dims = {len(f) - 1 for f in facets}
    return dims.pop() if len(dims) == 1 else None


def is_ball(g: Graph) -> int | None:
    """d if ``g`` is a d-ball (a d-sphere with one vertex removed).

    A d-sphere ``S`` with vertex ``x`` removed has boundary faces exactly
    the facets of ``S(x)``, so ``g`` is a ball iff coning its boundary
    vertex set with one new vertex produces a d-sphere.
    """
    if g.n == 0:
        return None
    if g.n == 1:
        return 0
    return _memo("ball", g, lambda: _is_ball(g))


def _is_ball(g: Graph) -> int | None:
    d = _dim_or_none(g)
    if d is None or d < 1:
        return None
    bd = boundary(g)
    if not bd.vertices:
        return None
    apex = max(g.vertices) + 1
    closed = g.with_edges(add=[(v, apex) for v in bd.vertices], new_vertices=[apex])
    return d if sphere_dimension(closed) == d else None


def is_ball_local(g: Graph) -> int | None:
    """Local characterisation used as a cross-check for :func:`is_ball`.

    Contractible, pure of dimension d, every unit sphere a (d-1)-sphere or
    (d-1)-ball, and the boundary complex a (d-1)-sphere.
    """
    if g.n == 1:
        return 0
    if g.is_complete():
        # K_{d+1} is a simplex, and K_2 would be C_3 minus a vertex
        return None
    d = _dim_or_none(g)
    if d is None or d < 1 or not _contractible(g):
        return None
    for v in g.vertices:
        s = g.induced(g.neighbors(v))
        if sphere_dimension(s) != d - 1 and is_ball_local(s) != d - 1:
            return None
    bd = boundary(g)
    if sphere_dimension(bd.graph) != d - 1:
        return None
    return d


def boundary_dgraph_dimension(g: Graph) -> int | None:
    """d if every unit sphere is a (d-1)-sphere or (d-1)-ball and one is a ball."""
    if g.n < 2:
        return None
    return _memo("with_boundary", g, lambda: _boundary_dgraph_dimension(g))


def _boundary_dgraph_dimension(g: Graph) -> int | None:
    d = _dim_or_none(g)
    if d is None or d < 1:
        return None
    saw_ball = False
    for v in g.vertices:
        s = g.induced(g.neighbors(v))
        if sphere_dimension(s) == d - 1:
            continue
        if is_ball(s) == d - 1:
            saw_ball = True
            continue
        return None
    return d if saw_ball else None


def generalized_dimension(g: Graph) -> int | None:
    """d if ``g`` is a generalized d-graph (see module notes in the README).

    Pure of dimension d; each unit sphere is a (d-1)-sphere, a (d-1)-ball, a
    (d-1)-simplex, or a path-shellable generalized (d-1)-graph; for d >= 2
    every interior vertex next to the boundary spans a triangle with a
    boundary edge.
    """
    if g.n < 2:
        return None
    return _memo("generalized", g, lambda: _generalized(g)[0])


def accessibility_failures(g: Graph) -> list[int]:
    """Interior vertices adjacent to the boundary without a boundary edge in their link."""
    try:
        bd = boundary(g)
    except NotPureError:
        return []
    if bd.dim < 2 or not bd.vertices:
        return []
    bedges = set(bd.graph.edges())
    bad = []
    for x in g.vertices:
        if x in bd.vertices:
            continue
        nb = g.neighbors(x)
        if not nb & bd.vertices:
            continue
        if not any(edge(a, b) in bedges for a, b in combinations(sorted(nb & bd.vertices), 2)):
            bad.append(x)
    return bad


def _generalized(g: Graph) -> tuple[int | None, str]:
    d = _dim_or_none(g)
    if d is None or d < 1:
        return None, "not pure"
    for v in g.vertices:
        s = g.induced(g.neighbors(v))
        if sphere_dimension(s) == d - 1 or is_ball(s) == d - 1:
            continue
        if s.is_complete() and s.n == d:
            continue
        if d - 1 >= 1 and is_path_shellable_generalized(s) == d - 1:
            continue
        return None, f"unit sphere of {v} is not a {d - 1}-sphere, ball or simplex"
    bad = accessibility_failures(g)
    if bad:
        return None, f"interior vertex {bad[0]} is not accessible from the boundary"
    return d, ""


def path_order(g: Graph) -> list[tuple[int, ...]] | None:
    """Facets in dual-path order if the dual graph is a path, else None."""
    facets = maximal_cliques(g)
    if len(facets) == 1:
        return facets
    if len({len(f) for f in facets}) != 1:
        return None
    d = len(facets[0]) - 1
    by_face: dict = {}
    for i, f in enumerate(facets):
        for face in combinations(f, d):
            by_face.setdefault(face, []).append(i)
    nbrs: dict[int, set[int]] = {i: set() for i in range(len(facets))}
    for members in by_face.values():
        for a, b in combinations(members, 2):
            nbrs[a].add(b)
            nbrs[b].add(a)
    ends = [i for i, nb in nbrs.items() if len(nb) == 1]
    if any(len(nb) > 2 or not nb for nb in nbrs.values()) or len(ends) != 2:
        return None
    order = [min(ends)]
    prev = None
    while len(order) < len(facets):
        nxt = [j for j in nbrs[order[-1]] if j != prev]
        if not nxt:
            return None
        prev = order[-1]
        order.append(nxt[0])
    return [facets[i] for i in order]


def is_path_shellable_generalized(g: Graph) -> int | None:
    if g.n < 2:
        return None
    return _memo("path_shellable", g, lambda: _path_shellable(g))


def _path_shellable(g: Graph) -> int | None:
    from .shelling import verify_shelling
    from .complex_core import Complex

    order = path_order(g)
    if order is None:
        return None
    d = len(order[0]) - 1
    if not verify_shelling(Complex(frozenset(order)), order):
        return None
    if len(order) > 1 and generalized_dimension(g) != d:
        return None
    return d


# -- classification -----------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    """Strongest applicable tag plus the full set of tags that hold."""

    tag: str
    dim: int | None
    tags: frozenset[str] = field(default_factory=frozenset)
    reason: str = ""

    def __str__(self) -> str:
        if self.tag in ("Other", "Contractible"):
            return self.tag if not self.reason else f"{self.tag}({self.reason})"
        return f"{self.tag}({self.dim})"

    @property
    def label(self) -> str:
        if self.tag in ("Other", "Contractible", "MinusOneSphere"):
            return self.tag
        return f"{self.tag}({self.dim})"

    def has(self, tag: str) -> bool:
        return tag in self.tags

    def to_json(self) -> dict:
        return {"tag": self.tag, "dim": self.dim, "label": self.label,
                "tags": sorted(self.tags), "reason": self.reason}


_ORDER = ["MinusOneSphere", "Sphere", "Ball", "ClosedDGraph", "DGraphWithBoundary",
          "GeneralizedDGraph", "SimplexGraph", "Contractible"]


def classify_dgraph(g: Graph) -> Classification:
    tags: dict[str, int | None] = {}
    if g.n == 0:
        return Classification("MinusOneSphere", -1, frozenset({"MinusOneSphere", "Sphere(-1)"}))
    if g.is_complete():
        k = g.n - 1
        tags["SimplexGraph"] = k
        tags["Contractible"] = None
        if k >= 1:
            tags["GeneralizedDGraph"] = k
        if k == 0:
            tags["Ball"] = 0
            tags["ClosedDGraph"] = 0
        return _finish("SimplexGraph", tags, "")

    d = dgraph_dimension(g)
    if d is not None:
        tags["ClosedDGraph"] = d
        tags["GeneralizedDGraph"] = d
        if sphere_dimension(g) == d:
            tags["Sphere"] = d
    else:
        d = boundary_dgraph_dimension(g)
        if d is not None:
            tags["DGraphWithBoundary"] = d
            tags["GeneralizedDGraph"] = d
            if is_ball(g) == d:
                tags["Ball"] = d
        else:
            d, why = _generalized(g) if g.n >= 2 else (None, "too small")
            if d is not None:
                tags["GeneralizedDGraph"] = d
    reason = ""
    if not tags:
        _, reason = _generalized(g) if g.n >= 2 else (None, "single vertex")
    if _contractible(g):
        tags["Contractible"] = None
    for tag in _ORDER:
        if tag in tags and tag != "Contractible":
            return _finish(tag, tags, reason)
    # Contractible only takes precedence for complexes that are not pure;
    # pure graphs failing every d-graph test are reported as Other.
    if "Contractible" in tags and _dim_or_none(g) is None:
        return _finish("Contractible", tags, "not pure")
    return _finish("Other", tags, reason or "no d-graph structure")


def _finish(tag: str, tags: dict[str, int | None], reason: str) -> Classification:
    labels = frozenset(t if v is None else f"{t}({v})" for t, v in tags.items())
    return Classification(tag, tags.get(tag), labels, reason)


def hamiltonian_precondition(g: Graph) -> tuple[bool, Classification]:
    """Whether the constructive algorithm applies: connected closed d-graph
    (d >= 1), d-graph with boundary (d >= 2), generalized d-graph (d >= 2),
    or a simplex graph K_{k+1} with k >= 2."""
    c = classify_dgraph(g)
    if not g.is_connected():
        return False, c
    ok = (
        (c.tag in ("Sphere", "ClosedDGraph") and c.dim >= 1)
        or (c.tag in ("Ball", "DGraphWithBoundary", "GeneralizedDGraph") and c.dim >= 2)
        or (c.tag == "SimplexGraph" and c.dim >= 2)
    )
    return ok, c


def require_pure(g: Graph) -> int:
    d = _dim_or_none(g)
    if d is None:
        raise InvalidInput("graph is not pure")
    return d
