"""Finite simple graphs and their Whitney complexes.

A :class:`Graph` is an immutable value.  Vertex ids are integers and are
never renumbered by induced-subgraph operations, so cycles found on a unit
sphere or on a boundary component are cycles of the ambient graph as well.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

Simplex = tuple[int, ...]
Edge = tuple[int, int]


class InvalidInput(ValueError):
    """Raised when an operation receives input outside its domain."""


class NotPureError(InvalidInput):
    def __init__(self, dims: Sequence[int]):
        self.dims = tuple(sorted(set(dims)))
        super().__init__(f"complex is not pure: facet dimensions {self.dims}")


def edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable finite simple undirected graph."""

    __slots__ = ("_adj", "_vertices", "_hash")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Sequence[int]] = ()):
        adj: dict[int, set[int]] = {int(v): set() for v in vertices}
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            if u not in adj or v not in adj:
                raise InvalidInput(f"edge ({u}, {v}) references an unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = {v: frozenset(nb) for v, nb in adj.items()}
        self._vertices = tuple(sorted(self._adj))
        self._hash = None

    @classmethod
    def from_adjacency(cls, adj: Mapping[int, Iterable[int]]) -> "Graph":
        g = cls.__new__(cls)
        table = {int(v): frozenset(int(w) for w in nb) for v, nb in adj.items()}
        for v, nb in table.items():
            if v in nb:
                raise InvalidInput(f"self-loop at {v}")
            for w in nb:
                if w not in table or v not in table[w]:
                    raise InvalidInput(f"adjacency is not symmetric at ({v}, {w})")
        g._adj = table
        g._vertices = tuple(sorted(table))
        g._hash = None
        return g

    @classmethod
    def _trusted(cls, adj: dict[int, frozenset[int]]) -> "Graph":
        g = cls.__new__(cls)
        g._adj = adj
        g._vertices = tuple(sorted(adj))
        g._hash = None
        return g

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return self._vertices

    @property
    def adjacency(self) -> Mapping[int, frozenset[int]]:
        return self._adj

    def neighbors(self, v: int) -> frozenset[int]:
        try:
            return self._adj[v]
        except KeyError:
            raise InvalidInput(f"unknown vertex {v}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        nb = self._adj.get(u)
        return nb is not None and v in nb

    def edges(self) -> list[Edge]:
        return sorted((u, v) for u in self._vertices for v in self._adj[u] if u < v)

    @property
    def n(self) -> int:
        return len(self._vertices)

    @property
    def m(self) -> int:
        return sum(len(nb) for nb in self._adj.values()) // 2

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, tuple(self.edges())))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ---------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = set(vertices)
        missing = keep.difference(self._adj)
        if missing:
            raise InvalidInput(f"unknown vertices {sorted(missing)}")
        return Graph._trusted({v: self._adj[v] & keep for v in keep})

    def remove_vertex(self, v: int) -> "Graph":
        if v not in self._adj:
            raise InvalidInput(f"unknown vertex {v}")
        return self.induced(w for w in self._vertices if w != v)

    def with_edges(self, add: Iterable[Edge] = (), remove: Iterable[Edge] = (),
                   new_vertices: Iterable[int] = ()) -> "Graph":
        adj = {v: set(nb) for v, nb in self._adj.items()}
        for v in new_vertices:
            adj.setdefault(v, set())
        for u, v in remove:
            adj[u].discard(v)
            adj[v].discard(u)
        for u, v in add:
            if u == v:
                raise InvalidInput(f"self-loop at {u}")
            adj[u].add(v)
            adj[v].add(u)
        return Graph._trusted({v: frozenset(nb) for v, nb in adj.items()})

    def relabel(self, mapping: Mapping[int, int]) -> "Graph":
        image = [mapping[v] for v in self._vertices]
        if len(set(image)) != len(image):
            raise InvalidInput("relabelling is not injective")
        return Graph._trusted({mapping[v]: frozenset(mapping[w] for w in nb)
                               for v, nb in self._adj.items()})

    def is_complete(self) -> bool:
        n = self.n
        return all(len(nb) == n - 1 for nb in self._adj.values())

    def components(self) -> list[list[int]]:
        seen: set[int] = set()
        out = []
        for s in self._vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    # -- interchange --------------------------------------------------------

    def to_json(self) -> dict:
        return {"vertices": list(self._vertices), "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        try:
            vertices = data["vertices"]
            edges = data["edges"]
        except (KeyError, TypeError):
            raise InvalidInput("graph JSON needs 'vertices' and 'edges'") from None
        for e in edges:
            if len(e) != 2:
                raise InvalidInput(f"bad edge {e!r}")
        g = cls(vertices, edges)
        if len(g.vertices) != len(vertices):
            raise InvalidInput("duplicate vertex ids")
        return g


def read_graph(path) -> Graph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InvalidInput(f"{path}: {exc}") from None
    return Graph.from_json(data)


def write_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(g.to_json(), fh)
        fh.write("\n")


def to_dot(g: Graph, cycle: Sequence[int] | None = None, name: str = "G") -> str:
    """Graphviz source; edges of ``cycle`` are drawn bold red."""
    highlight: set[Edge] = set()
    if cycle:
        highlight = {edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))}
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for u, v in g.edges():
        attr = ' [color=red, penwidth=2.5]' if (u, v) in highlight else ""
        lines.append(f"  {u} -- {v}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- cliques and complexes -----------------------------------------------


def cliques(g: Graph) -> Iterator[Simplex]:
    """All non-empty cliques as sorted tuples (every face of the Whitney complex)."""
    adj = g.adjacency

    def extend(clique: tuple[int, ...], cand: list[int]):
        yield clique
        for i, w in enumerate(cand):
            nb = adj[w]
            yield from extend(clique + (w,), [x for x in cand[i + 1:] if x in nb])

    for v in g.vertices:
        yield from extend((v,), sorted(w for w in adj[v] if w > v))


def maximal_cliques(g: Graph) -> list[Simplex]:
    """Bron-Kerbosch with pivoting; isolated vertices are 0-dimensional facets."""
    adj = g.adjacency
    out: list[Simplex] = []

    def bk(r: list[int], p: set[int], x: set[int]):
        if not p and not x:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(adj[u] & p))
        for v in sorted(p - adj[pivot]):
            bk(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if g.n:
        bk([], set(g.vertices), set())
    return sorted(out)


@dataclass(frozen=True)
class Complex:
    """Finite abstract simplicial complex given by its facets."""

    facets: frozenset[Simplex]

    def __post_init__(self):
        fs = [tuple(sorted(set(f))) for f in self.facets]
        if any(len(f) == 0 for f in fs):
            raise InvalidInput("empty facet")
        canon = frozenset(fs)
        sets = sorted((frozenset(f) for f in canon), key=len)
        for i, a in enumerate(sets):
            for b in sets[i + 1:]:
                if len(a) < len(b) and a < b:
                    raise InvalidInput(f"facet {sorted(a)} lies inside {sorted(b)}")
        object.__setattr__(self, "facets", canon)

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable[int]]) -> "Complex":
        sets = {frozenset(s) for s in simplices}
        maximal = [s for s in sets if not any(s < t for t in sets)]
        return cls(frozenset(tuple(sorted(s)) for s in maximal))

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def sorted_facets(self) -> list[Simplex]:
        return sorted(self.facets, key=lambda f: (len(f), f))

    def vertices(self) -> list[int]:
        return sorted({v for f in self.facets for v in f})

    def faces(self) -> set[Simplex]:
        out: set[Simplex] = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out.update(combinations(f, k))
        return out

    def f_vector(self) -> list[int]:
        counts = Counter(len(s) for s in self.faces())
        return [counts[k] for k in range(1, self.dim + 2)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.f_vector()))


def whitney_complex(g: Graph) -> Complex:
    return Complex(frozenset(maximal_cliques(g)))


def skeleton(c: Complex) -> Graph:
    verts = c.vertices()
    edges = {e for f in c.facets for e in combinations(f, 2)}
    return Graph(verts, edges)


def unit_sphere(g: Graph, v: int) -> Graph:
    return g.induced(g.neighbors(v))


def unit_ball(g: Graph, v: int) -> Graph:
    return g.induced(g.neighbors(v) | {v})


def induced(g: Graph, s: Iterable[int]) -> Graph:
    return g.induced(s)


def f_vector(g: Graph) -> list[int]:
    counts = Counter(len(c) for c in cliques(g))
    top = max(counts, default=0)
    return [counts[k] for k in range(1, top + 1)]


def euler_characteristic(g: Graph) -> int:
    return sum((-1) ** i * c for i, c in enumerate(f_vector(g)))


def dimension(g: Graph) -> int:
    """Dimension of the Whitney complex; -1 for the empty graph."""
    return len(f_vector(g)) - 1


def pure_dimension(g: Graph) -> int:
    """Common facet dimension, raising :class:`NotPureError` otherwise."""
    facets = maximal_cliques(g)
    dims = {len(f) - 1 for f in facets}
    if len(dims) > 1:
        raise NotPureError(sorted(dims))
    return dims.pop() if dims else -1


def is_pure(g: Graph) -> bool:
    return len({len(f) for f in maximal_cliques(g)}) <= 1


def dual_graph(g: Graph) -> tuple[Graph, list[Simplex]]:
    """Facet adjacency graph.

    Vertex ``i`` of the returned graph stands for ``facets[i]`` (facets in
    sorted order); two facets are joined when they share a codimension-one
    face.
    """
    facets = maximal_cliques(g)
    dims = {len(f) - 1 for f in facets}
    if len(dims) > 1:
        raise NotPureError(sorted(dims))
    by_face: dict[Simplex, list[int]] = {}
    for i, f in enumerate(facets):
        if len(f) < 2:
            continue
        for face in combinations(f, len(f) - 1):
            by_face.setdefault(face, []).append(i)
    edges = set()
    for members in by_face.values():
        for a, b in combinations(members, 2):
            edges.add((a, b))
    return Graph(range(len(facets)), edges), facets


@dataclass(frozen=True)
class Boundary:
    vertices: frozenset[int]
    graph: Graph
    faces: tuple[Simplex, ...]
    dim: int


def boundary(g: Graph) -> Boundary:
    """Boundary faces (codimension-one faces in exactly one facet) of a pure graph."""
    facets = maximal_cliques(g)
    dims = {len(f) - 1 for f in facets}
    if len(dims) > 1:
        raise NotPureError(sorted(dims))
    d = dims.pop() if dims else -1
    if d <= 0:
        return Boundary(frozenset(), Graph(), (), d)
    count: Counter[Simplex] = Counter()
    for f in facets:
        count.update(combinations(f, d))
    faces = tuple(sorted(face for face, k in count.items() if k == 1))
    verts = {v for face in faces for v in face}
    edges = {e for face in faces for e in combinations(face, 2)}
    return Boundary(frozenset(verts), Graph(verts, edges), faces, d)


def distances_from(g: Graph, sources: Iterable[int]) -> dict[int, int]:
    dist = {}
    queue = deque()
    for s in sources:
        if s not in g:
            raise InvalidInput(f"unknown vertex {s}")
        if s not in dist:
            dist[s] = 0
            queue.append(s)
    adj = g.adjacency
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def graph_distance(g: Graph, sources: Iterable[int], target: int) -> float:
    if target not in g:
        raise InvalidInput(f"unknown vertex {target}")
    return distances_from(g, sources).get(target, math.inf)


# -- isomorphism-invariant keys --------------------------------------------


def color_refinement(g: Graph) -> tuple[dict[int, int], list]:
    """Stable colouring by iterated degree refinement.

    Colours are numbered by the sorted order of their signatures, so the
    returned history is invariant under relabelling.
    """
    adj = g.adjacency
    colors = {v: len(adj[v]) for v in g.vertices}
    history: list = [sorted(Counter(colors.values()).items())]
    classes = len(set(colors.values()))
    while True:
        sig = {v: (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in g.vertices}
        palette = {s: i for i, s in enumerate(sorted(set(sig.values())))}
        colors = {v: palette[sig[v]] for v in g.vertices}
        history.append(sorted(palette.items(), key=lambda kv: kv[1]))
        if len(palette) == classes:
            break
        classes = len(palette)
    return colors, history


def _key(g: Graph) -> tuple[bytes, bool]:
    colors, history = color_refinement(g)
    discrete = len(set(colors.values())) == g.n
    payload: list = [g.n, g.m, history]
    if discrete:
        payload.append(sorted(edge(colors[u], colors[v]) for u, v in g.edges()))
    return hashlib.blake2b(repr(payload).encode(), digest_size=16).digest(), discrete


def canonical_key(g: Graph) -> bytes:
    """Isomorphism-invariant digest.

    Equal graphs up to isomorphism always get equal keys; unequal keys prove
    non-isomorphism.  When the stable colouring is discrete the key is a true
    canonical form, otherwise collisions are possible and callers confirm
    with an exact isomorphism test (see :class:`IsoCache`).
    """
    return _key(g)[0]


def is_discrete_key(g: Graph) -> bool:
    colors, _ = color_refinement(g)
    return len(set(colors.values())) == g.n


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    import networkx as nx

    return nx.is_isomorphic(_to_nx(g1), _to_nx(g2))


def _to_nx(g: Graph):
    import networkx as nx

    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


class IsoCache:
    """Memo table keyed by isomorphism class.

    Lookups hash with :func:`canonical_key`; when the key is not a complete
    canonical form the candidate entries are confirmed with an exact
    isomorphism test before a cached value is returned.
    """

    def __init__(self):
        self._table: dict[bytes, list] = {}
        self.hits = 0
        self.misses = 0

    def __len__(self) -> int:
        return sum(len(v) for v in self._table.values())

    def clear(self) -> None:
        self._table.clear()
        self.hits = self.misses = 0

    def get(self, g: Graph, default=None):
        key, discrete = _key(g)
        bucket = self._table.get(key)
        if bucket:
            if discrete:
                self.hits += 1
                return bucket[0][1]
            for other, value in bucket:
                if other == g or is_isomorphic(other, g):
                    self.hits += 1
                    return value
        self.misses += 1
        return default

    def put(self, g: Graph, value) -> None:
        key, discrete = _key(g)
        bucket = self._table.setdefault(key, [])
        if discrete:
            bucket[:] = [(g, value)]
            return
        for i, (other, _) in enumerate(bucket):
            if other == g or is_isomorphic(other, g):
                bucket[i] = (other, value)
                return
        bucket.append((g, value))
