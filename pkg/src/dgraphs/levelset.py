"""Level surfaces, cuts and prism bridges for vertex functions on d-graphs."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Mapping

from .complex_core import Edge, Graph, InvalidInput, Simplex, cliques, edge, maximal_cliques


class VertexFunction(dict):
    """Mapping vertex -> Fraction."""

    @classmethod
    def of(cls, values: Mapping) -> "VertexFunction":
        return cls({int(v): Fraction(x) for v, x in values.items()})

    @classmethod
    def from_json(cls, data: Mapping) -> "VertexFunction":
        if "values" not in data:
            raise InvalidInput("function JSON needs a 'values' object")
        try:
            return cls.of({int(k): Fraction(str(v)) for k, v in data["values"].items()})
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"bad function value: {exc}") from None

    def to_json(self) -> dict:
        return {"values": {str(v): str(x) for v, x in sorted(self.items())}}

    def is_locally_injective(self, g: Graph) -> bool:
        return all(self[u] != self[v] for u, v in g.edges())


def random_function(g: Graph, seed: int = 0) -> VertexFunction:
    """A random permutation of 1..n: locally injective by construction."""
    rng = random.Random(seed)
    values = list(range(1, g.n + 1))
    rng.shuffle(values)
    return VertexFunction.of(dict(zip(g.vertices, values)))


def midpoints(f: Mapping[int, Fraction]) -> list[Fraction]:
    """All cut levels halfway between consecutive distinct values."""
    vals = sorted(set(f.values()))
    return [(a + b) / 2 for a, b in zip(vals, vals[1:])]


def _check(g: Graph, f: Mapping[int, Fraction], c) -> Fraction:
    missing = [v for v in g.vertices if v not in f]
    if missing:
        raise InvalidInput(f"function undefined on vertices {missing[:5]}")
    c = Fraction(c)
    if any(f[v] == c for v in g.vertices):
        raise InvalidInput(f"level {c} is a value of f")
    return c


@dataclass(frozen=True)
class LevelSurface:
    graph: Graph
    carrier: dict[int, Simplex]

    def to_json(self) -> dict:
        return {"graph": self.graph.to_json(),
                "carrier": {str(k): list(s) for k, s in sorted(self.carrier.items())}}


def level_surface(g: Graph, f: Mapping[int, Fraction], c) -> LevelSurface:
    """Graph on the simplices where f - c changes sign, joined by containment."""
    c = _check(g, f, c)
    simplices = sorted((s for s in cliques(g)
                        if len(s) >= 2 and min(f[v] for v in s) < c < max(f[v] for v in s)),
                       key=lambda s: (len(s), s))
    index = {s: i for i, s in enumerate(simplices)}
    edges = []
    for s in simplices:
        for k in range(2, len(s)):
            for face in combinations(s, k):
                if face in index:
                    edges.append((index[face], index[s]))
    return LevelSurface(Graph(range(len(simplices)), edges), dict(enumerate(simplices)))


def split(g: Graph, f: Mapping[int, Fraction], c) -> tuple[Graph, Graph]:
    c = _check(g, f, c)
    return (g.induced(v for v in g.vertices if f[v] < c),
            g.induced(v for v in g.vertices if f[v] > c))


def is_smooth(g: Graph, f: Mapping[int, Fraction], c) -> bool:
    """Every signed half of every unit sphere is a (d-1)-ball, (d-1)-sphere,
    a simplex or empty."""
    from .recognition import is_ball, require_pure, sphere_dimension

    c = _check(g, f, c)
    d = require_pure(g)
    for x in g.vertices:
        nb = g.neighbors(x)
        for half in ([v for v in nb if f[v] < c], [v for v in nb if f[v] > c]):
            h = g.induced(half)
            if h.n == 0 or h.is_complete():
                continue
            if is_ball(h) == d - 1 or sphere_dimension(h) == d - 1:
                continue
            return False
    return True


@dataclass(frozen=True)
class PrismBridge:
    """Two faces on opposite sides of a cut and a quadrilateral rewiring.

    ``rewiring`` is ``(removed, added)``: cycle edges (a, b) in face_a and
    (c, d) in face_b are swapped for (a, c) and (b, d).
    """

    face_a: Simplex
    face_b: Simplex
    cross_edges: frozenset[Edge] = field(default_factory=frozenset)
    rewiring: tuple[tuple[Edge, Edge], tuple[Edge, Edge]] = ((), ())

    def quadrilateral_ok(self, g: Graph) -> bool:
        (ab, cd), (ac, bd) = self.rewiring
        a, b = ab
        for e in (ab, cd, ac, bd):
            if not g.has_edge(*e):
                return False
        return (a in ac and b in bd and set(cd) == {ac[0] if ac[1] == a else ac[1],
                                                    bd[0] if bd[1] == b else bd[1]})

    def to_json(self) -> dict:
        return {"face_a": list(self.face_a), "face_b": list(self.face_b),
                "removed": [list(e) for e in self.rewiring[0]],
                "added": [list(e) for e in self.rewiring[1]]}


def quadrilateral_bridge(g: Graph, ab: Edge, cd: Edge) -> PrismBridge:
    """Bridge from a single quadrilateral a-b-d-c with a~c and b~d."""
    a, b = ab
    c, d = cd
    if not (g.has_edge(a, c) and g.has_edge(b, d)):
        c, d = d, c
    if not (g.has_edge(a, b) and g.has_edge(c, d) and g.has_edge(a, c) and g.has_edge(b, d)):
        raise InvalidInput(f"no quadrilateral on {ab} and {cd}")
    fa, fb = edge(a, b), edge(c, d)
    cross = frozenset(edge(u, w) for u in fa for w in fb if g.has_edge(u, w))
    return PrismBridge(fa, fb, cross, ((fa, fb), (edge(a, c), edge(b, d))))


def find_prism_bridge(below: Graph, above: Graph, ambient: Graph, face_a) -> PrismBridge:
    """Match face_a with a face of ``above`` through a bijection along cross edges.

    Prefers a face_b admitting a full bijection (every edge of face_a then
    lies in a quadrilateral); among those, the lexicographically smallest
    face and rewiring.
    """
    face_a = tuple(sorted(face_a))
    if any(v not in below for v in face_a):
        raise InvalidInput("face_a is not in the lower part")
    reach = set()
    for v in face_a:
        reach |= {w for w in ambient.neighbors(v) if w in above}
    if not reach:
        raise InvalidInput(f"{face_a} has no edge across the cut")
    k = len(face_a)
    local = above.induced(reach)
    candidates = sorted({tuple(sorted(s)) for s in cliques(local) if len(s) == k})
    best = None
    for face_b in candidates:
        full = any(all(ambient.has_edge(u, w) for u, w in zip(face_a, perm))
                   for perm in permutations(face_b))
        rewiring = _smallest_rewiring(ambient, face_a, face_b)
        if rewiring is None:
            continue
        key = (not full, face_b, rewiring)
        if best is None or key < best[0]:
            best = (key, face_b, rewiring)
    if best is None:
        raise InvalidInput(f"no prism bridge from {face_a}")
    _, face_b, rewiring = best
    cross = frozenset(edge(u, w) for u in face_a for w in face_b if ambient.has_edge(u, w))
    return PrismBridge(face_a, face_b, cross, rewiring)


def _smallest_rewiring(g: Graph, face_a: Simplex, face_b: Simplex):
    for a, b in combinations(face_a, 2):
        for c, d in combinations(face_b, 2):
            for x, y in ((c, d), (d, c)):
                if g.has_edge(a, x) and g.has_edge(b, y):
                    return ((edge(a, b), edge(c, d)), (edge(a, x), edge(b, y)))
    return None


def cut_faces(below: Graph, above: Graph, ambient: Graph) -> list[Simplex]:
    """(d-1)-faces of ``below`` lying in an ambient facet that crosses the cut."""
    faces = set()
    for f in maximal_cliques(ambient):
        low = tuple(v for v in f if v in below)
        if len(low) < len(f) and any(v in above for v in f):
            faces.update(combinations(low, len(f) - 1))
    return sorted(faces)
