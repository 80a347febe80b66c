"""Named graphs and families used as the test corpus.

Every generator is deterministic in its parameters (and seed).  ``CATALOG``
records, for each name, default parameters, the expected classification
label and whether the graph is expected to be Hamiltonian.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from . import constructions as C
from .complex_core import Complex, Graph, InvalidInput, boundary, skeleton


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidInput(msg)


def cyclic(n: int) -> Graph:
    _need(n >= 3, "cyclic(n) needs n >= 3")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    _need(n >= 1, "path(n) needs n >= 1")
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def wheel(n: int) -> Graph:
    """Hub ``n`` joined to the rim cycle ``0..n-1`` (boundary C_n)."""
    _need(n >= 4, "wheel(n) needs n >= 4")
    return C.join(cyclic(n), Graph([n]))


def complete(n: int) -> Graph:
    _need(n >= 1, "complete(n) needs n >= 1")
    return Graph(range(n), combinations(range(n), 2))


def simplex(d: int) -> Graph:
    _need(d >= 0, "simplex(d) needs d >= 0")
    return complete(d + 1)


def cross_polytope(d: int) -> Graph:
    """Smallest d-sphere: C_4 suspended d-1 times (octahedron for d = 2)."""
    _need(d >= 1, "cross_polytope(d) needs d >= 1")
    g = cyclic(4)
    for _ in range(d - 1):
        g = C.suspension(g)
    return g


def octahedron() -> Graph:
    return cross_polytope(2)


def icosahedron() -> Graph:
    # two poles 0 and 11, upper ring 1..5, lower ring 6..10
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (11, lo), (lo, lo_next), (up, lo), (up, lo_next)]
    return Graph(range(12), edges)


def avici(d: int) -> Graph:
    """Two K_{d+1} glued along a K_d (K_{d+2} minus one edge)."""
    _need(d >= 1, "avici(d) needs d >= 1")
    k = simplex(d)
    return C.glue_along(k, k, {v: v for v in range(d)})


def diamond() -> Graph:
    return avici(2)


def goldner_harary(d: int = 3) -> Graph:
    """avici(d) with every boundary (d-1)-face stellated."""
    _need(d in (3, 4), "goldner_harary(d) needs d in {3, 4}")
    g = avici(d)
    return C.stellate_facets(g, boundary(g).faces)


def _stellate_all(g: Graph, faces) -> Graph:
    top = max(g.vertices)
    adds, new = [], []
    for i, face in enumerate(faces):
        x = top + 1 + i
        new.append(x)
        adds.extend((v, x) for v in face)
    return g.with_edges(add=adds, new_vertices=new)


def birkhoff_diamond() -> Graph:
    """W_5 plus a second wheel centred at rim vertex 0: two interior points, boundary C_6."""
    g = wheel(5)  # rim 0..4, hub 5
    a, b = 6, 7
    return g.with_edges(add=[(0, a), (0, b), (1, a), (a, b), (b, 4)], new_vertices=[a, b])


def stellated_square() -> Graph:
    """W_4 with each rim edge stellated; the hub touches the boundary only in points."""
    g = wheel(4)
    return _stellate_all(g, [(i, (i + 1) % 4) for i in range(4)])


def windmill() -> Graph:
    """Three triangles hinged on a common edge: join of K_2 and three points."""
    return C.join(complete(2), Graph([0, 1, 2]))


def stellated_octahedron(solid: bool = True) -> Graph:
    g = octahedron()
    faces = [f for f in _triangles(g)]
    if solid:
        g = C.cone(g)
    return _stellate_all(g, faces)


def _triangles(g: Graph):
    return sorted(t for t in combinations(g.vertices, 3)
                  if g.has_edge(t[0], t[1]) and g.has_edge(t[0], t[2]) and g.has_edge(t[1], t[2]))


def prism_graph(d: int) -> Graph:
    """d-simplices {a_0..a_i, b_i..b_{d-1}}: a (d-1)-simplex floor and roof."""
    _need(d >= 2, "prism_graph(d) needs d >= 2")
    a = list(range(d))
    b = list(range(d, 2 * d))
    edges = list(combinations(a, 2)) + list(combinations(b, 2))
    edges += [(a[i], b[j]) for i in range(d) for j in range(d) if i <= j]
    return Graph(range(2 * d), edges)


def _band(n: int) -> Graph:
    return Graph(range(n), [(i, (i + k) % n) for i in range(n) for k in (1, 2)])


def moebius_strip(n: int = 7) -> Graph:
    """Triangles {i, i+1, i+2} mod n for odd n: one boundary curve through every vertex."""
    _need(n >= 7 and n % 2 == 1, "moebius_strip(n) needs odd n >= 7")
    return _band(n)


def cylinder(n: int = 8) -> Graph:
    """Same band for even n: an annulus with two boundary circles of length n/2."""
    _need(n >= 8 and n % 2 == 0, "cylinder(n) needs even n >= 8")
    return _band(n)


def torus(m: int = 4, n: int = 4) -> Graph:
    """m x n grid with one diagonal per square, wrapped in both directions."""
    _need(m >= 4 and n >= 4, "torus(m, n) needs m, n >= 4")

    def vid(i, j):
        return (i % m) * n + (j % n)

    edges = set()
    for i in range(m):
        for j in range(n):
            for di, dj in ((1, 0), (0, 1), (1, 1)):
                edges.add(tuple(sorted((vid(i, j), vid(i + di, j + dj)))))
    return Graph(range(m * n), edges)


def torus_complex(m: int = 3, n: int = 3) -> Complex:
    """Grid triangulation of the torus as a pure 2-complex (not a Whitney complex)."""
    _need(m >= 3 and n >= 3, "torus_complex(m, n) needs m, n >= 3")

    def vid(i, j):
        return (i % m) * n + (j % n)

    tris = []
    for i in range(m):
        for j in range(n):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    return Complex.from_simplices(tris)


RP2_TRIANGLES = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
                 (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def _refine_complex(triangles) -> Graph:
    """Barycentric refinement of a 2-complex given by triangles (vertex ids = face order)."""
    faces = set()
    for t in triangles:
        t = tuple(sorted(t))
        for k in (1, 2, 3):
            faces.update(combinations(t, k))
    order = sorted(faces, key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(order)}
    edges = []
    for s in order:
        for k in range(1, len(s)):
            for face in combinations(s, k):
                edges.append((index[face], index[s]))
    return Graph(range(len(order)), edges)


def _cycle_link(g: Graph, v: int) -> bool:
    s = g.induced(g.neighbors(v))
    return s.n >= 4 and s.is_connected() and all(s.degree(w) == 2 for w in s.vertices)


def _contract(g: Graph, a: int, b: int) -> Graph:
    adj = {v: set(nb) for v, nb in g.adjacency.items()}
    for w in adj.pop(b):
        adj[w].discard(b)
        if w != a:
            adj[w].add(a)
            adj[a].add(w)
    return Graph.from_adjacency(adj)


def reduce_surface(g: Graph) -> Graph:
    """Contract edges of a 2-graph while every unit sphere stays a C_k, k >= 4.

    The first admissible edge in sorted order is contracted each round, so
    the result is deterministic; vertices are renumbered 0..n-1.
    """
    changed = True
    while changed:
        changed = False
        for a, b in g.edges():
            if len(g.neighbors(a) & g.neighbors(b)) != 2:
                continue
            h = _contract(g, a, b)
            if all(_cycle_link(h, v) for v in {a} | h.neighbors(a)):
                g, changed = h, True
                break
    return g.relabel({v: i for i, v in enumerate(g.vertices)})


def projective_plane(refined: bool = False) -> Graph:
    """Flag projective plane: the refined 6-vertex RP^2 (31 vertices) or,
    by default, its edge-contracted form (13 vertices)."""
    g = _refine_complex(RP2_TRIANGLES)
    return g if refined else reduce_surface(g)


def klein_bottle(m: int = 3, n: int = 3, refined: bool = False) -> Graph:
    """Flipped m x n grid, refined to a flag complex, then edge-contracted
    unless ``refined``."""
    _need(m >= 3 and n >= 3, "klein_bottle(m, n) needs m, n >= 3")

    def vid(i, j):
        if j == n:
            i, j = -i, 0
        return (i % m) * n + j

    tris = []
    for i in range(m):
        for j in range(n):
            tris.append((vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)))
            tris.append((vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)))
    if any(len(set(t)) < 3 for t in tris) or len({tuple(sorted(t)) for t in tris}) != len(tris):
        raise InvalidInput("degenerate Klein bottle grid")
    g = _refine_complex(tris)
    return g if refined else reduce_surface(g)


def random_refined_sphere(d: int, steps: int, seed: int = 0) -> Graph:
    """cross_polytope(d) followed by ``steps`` edge refinements at random edges."""
    _need(steps >= 0, "steps must be >= 0")
    rng = random.Random(seed)
    g = cross_polytope(d)
    edges = g.edges()
    for _ in range(steps):
        a, b = edges[rng.randrange(len(edges))]
        g = C.edge_refinement(g, (a, b))
        c = max(g.vertices)
        edges.remove((a, b))
        edges.extend((w, c) for w in sorted(g.neighbors(c)))
    return g


def random_refined_ball(d: int, steps: int, seed: int = 0) -> Graph:
    """Cone over a random refined (d-1)-sphere: a d-ball with one interior vertex."""
    return C.cone(random_refined_sphere(d - 1, steps, seed))


# -- catalogue ------------------------------------------------------------------


@dataclass(frozen=True)
class Entry:
    name: str
    build: Callable[..., Graph]
    params: tuple = ()
    expected: str = ""
    hamiltonian: bool | None = None
    note: str = ""

    def graph(self) -> Graph:
        return self.build(*self.params)


CATALOG: dict[str, Entry] = {}


def _add(name, build, params=(), expected="", hamiltonian=None, note=""):
    CATALOG[name] = Entry(name, build, tuple(params), expected, hamiltonian, note)


_add("cyclic", cyclic, (5,), "Sphere(1)", True, "C_n, the 1-spheres for n >= 4")
_add("triangle", cyclic, (3,), "SimplexGraph(2)", True, "C_3 = K_3, not a 1-sphere")
_add("wheel", wheel, (5,), "Ball(2)", True, "W_n, a 2-ball with boundary C_n")
_add("simplex", simplex, (3,), "SimplexGraph(3)", True, "K_{d+1}")
_add("octahedron", cross_polytope, (2,), "Sphere(2)", True, "smallest 2-sphere")
_add("16-cell", cross_polytope, (3,), "Sphere(3)", True, "suspension of the octahedron")
_add("32-chamber", cross_polytope, (4,), "Sphere(4)", True, "suspension of the 16-cell")
_add("icosahedron", icosahedron, (), "Sphere(2)", True)
_add("diamond", diamond, (), "GeneralizedDGraph(2)", True, "two triangles on an edge")
_add("avici3", avici, (3,), "GeneralizedDGraph(3)", True, "two K_4 glued along a K_3")
_add("avici4", avici, (4,), "GeneralizedDGraph(4)", True, "two K_5 glued along a K_4")
_add("goldner-harary", goldner_harary, (3,), "Other", False, "avici(3), boundary stellated")
_add("goldner-harary4", goldner_harary, (4,), "Other", False, "avici(4), boundary stellated")
_add("birkhoff-diamond", birkhoff_diamond, (), "Ball(2)", True, "2 interior points, boundary C_6")
_add("stellated-square", stellated_square, (), "Other", False, "inaccessible hub")
_add("windmill", windmill, (), "Other", False, "three blades on one edge")
_add("stellated-solid-octahedron", stellated_octahedron, (True,), "Other", False)
_add("stellated-octahedron", stellated_octahedron, (False,), "Other", None)
_add("prism3", prism_graph, (3,), "GeneralizedDGraph(3)", True, "three tetrahedra")
_add("moebius", moebius_strip, (7,), "DGraphWithBoundary(2)", True, "boundary visits all vertices")
_add("cylinder", cylinder, (8,), "DGraphWithBoundary(2)", True, "two boundary circles")
_add("torus", torus, (4, 4), "ClosedDGraph(2)", True)
_add("projective-plane", projective_plane, (), "ClosedDGraph(2)", True, "contracted flag RP^2")
_add("klein-bottle", klein_bottle, (3, 3), "ClosedDGraph(2)", True, "contracted flag Klein bottle")
_add("solid-octahedron", lambda: C.cone(octahedron()), (), "Ball(3)", True, "cone over the octahedron")
_add("refined-octahedron", lambda: C.barycentric_refinement(octahedron()), (), "Sphere(2)", True)
_add("random-refined-sphere", random_refined_sphere, (2, 20, 0), "Sphere(2)", True)


def generate(name: str, *params) -> Graph:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise InvalidInput(f"unknown generator {name!r}") from None
    return entry.build(*(params or entry.params))


# generator functions by their own names, for the CLI
FUNCTIONS: dict[str, Callable[..., Graph]] = {
    f.__name__: f for f in (
        cyclic, path, wheel, complete, simplex, cross_polytope, octahedron, icosahedron,
        avici, diamond, goldner_harary, birkhoff_diamond, stellated_square, windmill,
        stellated_octahedron, prism_graph, moebius_strip, cylinder, torus,
        projective_plane, klein_bottle, random_refined_sphere, random_refined_ball,
    )
}


def torus_skeleton(m: int = 3, n: int = 3) -> Graph:
    return skeleton(torus_complex(m, n))
