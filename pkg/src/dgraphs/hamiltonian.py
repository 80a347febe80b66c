"""Constructive Hamiltonian cycles in d-graphs: the Swiss cheese construction.

The construction keeps a family of vertex-disjoint cycles ("pieces").
Boundary components contribute one cycle each, spherical cavities around
deep interior points contribute a unit-sphere cycle with a detour through
the centre, and the pieces are then joined by quadrilateral bridges while
the remaining points are absorbed by detours.  Every edge edit is logged as
a trace step, so a trace can be replayed to reproduce the final cycle.
"""

from __future__ import annotations

import heapq
import math
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .complex_core import Complex, Edge, Graph, InvalidInput, Simplex, boundary, dual_graph, edge, \
    maximal_cliques, skeleton
from .levelset import PrismBridge, quadrilateral_bridge

STEP_KINDS = ("CarveCavity", "AbsorbBoxedPoint", "DrillHole", "BoundaryCycle", "Bridge",
              "Detour", "FacetLift", "Rewire")


class PreconditionError(InvalidInput):
    def __init__(self, classification, why: str = ""):
        self.classification = classification
        msg = f"find_hamiltonian does not apply to {classification.label}"
        super().__init__(msg + (f" ({why})" if why else ""))


class ConstructionError(RuntimeError):
    """The construction got stuck; carries the trace prefix for diagnosis."""

    def __init__(self, msg: str, trace: "ConstructionTrace | None" = None):
        super().__init__(msg)
        self.trace = trace


class StrongPropertyError(ConstructionError):
    """A Hamiltonian cycle was found but the strong repair did not reach
    every facet; ``cycle`` holds the verified Hamiltonian cycle."""

    def __init__(self, msg: str, cycle: "Cycle", trace: "ConstructionTrace", missing: int,
                 proven: bool = False):
        super().__init__(msg, trace)
        self.cycle = cycle
        self.missing = missing
        # True when the exact search showed that no strong cycle exists
        self.proven = proven


# -- cycles ---------------------------------------------------------------------


@dataclass(frozen=True)
class Cycle:
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        if len(vs) < 2:
            return []
        if len(vs) == 2:
            return [edge(*vs)]
        return [edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def edge_set(self) -> set[Edge]:
        return set(self.edges())

    def to_json(self) -> list[int]:
        return list(self.vertices)

    @classmethod
    def canonical(cls, order: Sequence[int]) -> "Cycle":
        """Start at the smallest vertex, walk toward its smaller cycle neighbour."""
        vs = list(order)
        if len(vs) < 3:
            return cls(tuple(sorted(vs)))
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if vs[-1] < vs[1]:
            vs = [vs[0]] + vs[:0:-1]
        return cls(tuple(vs))

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> "Cycle":
        nb: dict[int, list[int]] = {}
        for u, v in edges:
            nb.setdefault(u, []).append(v)
            nb.setdefault(v, []).append(u)
        if not nb:
            return cls(())
        if any(len(x) != 2 for x in nb.values()):
            raise ConstructionError("edge set is not 2-regular")
        start = min(nb)
        order, prev, cur = [start], None, start
        while True:
            a, b = nb[cur]
            nxt = a if a != prev else b
            if nxt == start:
                break
            order.append(nxt)
            prev, cur = cur, nxt
        if len(order) != len(nb):
            raise ConstructionError("edge set splits into several cycles")
        return cls.canonical(order)


# -- trace ----------------------------------------------------------------------


@dataclass
class Step:
    kind: str
    data: dict = field(default_factory=dict)
    removed: list[Edge] = field(default_factory=list)
    added: list[Edge] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"kind": self.kind, "data": self.data,
                "removed": [list(e) for e in self.removed],
                "added": [list(e) for e in self.added]}

    @classmethod
    def from_json(cls, d: dict) -> "Step":
        if d.get("kind") not in STEP_KINDS:
            raise InvalidInput(f"unknown step kind {d.get('kind')!r}")
        return cls(d["kind"], dict(d.get("data", {})),
                   [edge(*e) for e in d.get("removed", [])],
                   [edge(*e) for e in d.get("added", [])])


@dataclass
class ConstructionTrace:
    steps: list[Step] = field(default_factory=list)
    seed: int = 0

    def __len__(self) -> int:
        return len(self.steps)

    def kinds(self) -> list[str]:
        return [s.kind for s in self.steps]

    def to_json(self) -> dict:
        return {"seed": self.seed, "steps": [s.to_json() for s in self.steps]}

    @classmethod
    def from_json(cls, d: dict) -> "ConstructionTrace":
        try:
            return cls([Step.from_json(s) for s in d["steps"]], int(d.get("seed", 0)))
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"malformed trace: {exc}") from None


def replay_trace(g: Graph, trace: ConstructionTrace) -> Cycle:
    """Apply the logged edge edits to an empty edge set and read off the cycle."""
    edges: set[Edge] = set()
    for k, step in enumerate(trace.steps):
        for e in step.removed:
            if e not in edges:
                raise InvalidInput(f"step {k} removes {e}, which is not present")
            edges.remove(e)
        for e in step.added:
            if not g.has_edge(*e):
                raise InvalidInput(f"step {k} adds {e}, which is not an edge of the graph")
            if e in edges:
                raise InvalidInput(f"step {k} adds {e} twice")
            edges.add(e)
    if g.n == 1 and not edges:
        return Cycle((g.vertices[0],))
    return Cycle.from_edges(edges)


# -- verification -----------------------------------------------------------------


def verify_hamiltonian(g: Graph, c) -> bool:
    vs = list(c)
    if g.n == 0:
        return not vs
    if sorted(vs) != sorted(g.vertices) or len(set(vs)) != len(vs):
        return False
    if len(vs) == 1:
        return True
    if len(vs) == 2:
        return g.has_edge(*vs)
    return all(g.has_edge(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))


def strong_targets(g: Graph, with_boundary: bool = False) -> list[Simplex]:
    """Simplices that must contain a cycle edge: facets, plus boundary faces."""
    targets = [f for f in maximal_cliques(g) if len(f) >= 2]
    if with_boundary:
        targets += [f for f in boundary(g).faces if len(f) >= 2]
    return targets


def uncovered_targets(g: Graph, c, with_boundary: bool = False) -> list[Simplex]:
    es = Cycle(tuple(c)).edge_set()
    return [t for t in strong_targets(g, with_boundary)
            if not any(e in es for e in combinations(t, 2))]


def verify_strong(g: Graph, c, with_boundary: bool = False) -> bool:
    return verify_hamiltonian(g, c) and not uncovered_targets(g, c, with_boundary)


# -- engine -----------------------------------------------------------------------


class _Engine:
    """Mutable state of one construction: pieces as 2-regular edge sets."""

    def __init__(self, g: Graph, trace: ConstructionTrace, rng: random.Random, depth: int = 0):
        self.g = g
        self.adj = g.adjacency
        self.trace = trace
        self.rng = rng
        self.depth = depth
        self.nb: dict[int, list[int]] = {}
        self.parent: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self.boundary_edges: set[Edge] = set()
        self.near_boundary: set[int] = set()

    # pieces -----------------------------------------------------------------

    def find(self, v: int) -> int:
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size.pop(rb)

    def covered(self, v: int) -> bool:
        return v in self.nb

    def pieces(self) -> int:
        return len(self.size)

    def _new_vertex(self, v: int) -> None:
        self.nb[v] = []
        self.parent[v] = v
        self.size[v] = 1

    def apply(self, kind: str, data: dict, removed: Sequence[Edge], added: Sequence[Edge]) -> None:
        removed = [edge(*e) for e in removed]
        added = [edge(*e) for e in added]
        for u, v in removed:
            self.nb[u].remove(v)
            self.nb[v].remove(u)
        for u, v in added:
            for x in (u, v):
                if x not in self.nb:
                    self._new_vertex(x)
            self.nb[u].append(v)
            self.nb[v].append(u)
        for u, v in added:
            self.union(u, v)
        self.trace.steps.append(Step(kind, data, removed, added))

    def regroup(self) -> None:
        """Recompute pieces from scratch; needed after moves that split a piece."""
        self.parent = {v: v for v in self.nb}
        self.size = {v: 1 for v in self.nb}
        for u, vs in self.nb.items():
            for v in vs:
                self.union(u, v)

    def cycle_edges(self) -> list[Edge]:
        return sorted({edge(u, v) for u, vs in self.nb.items() for v in vs})

    def walk(self, start: int) -> list[int]:
        order, prev, cur = [start], None, start
        while True:
            a, b = self.nb[cur]
            nxt = a if a != prev else b
            if nxt == start:
                return order
            order.append(nxt)
            prev, cur = cur, nxt

    def add_cycle(self, kind: str, data: dict, order: Sequence[int]) -> None:
        k = len(order)
        added = [(order[i], order[(i + 1) % k]) for i in range(k)]
        self.apply(kind, data, [], added)

    # steps --------------------------------------------------------------------

    def carve(self, x: int) -> None:
        sphere = sorted(self.adj[x])
        sub = solve(self.g.induced(sphere), self.rng, self.depth + 1)
        order = list(sub.vertices)
        k = len(order)
        u, v = min(edge(order[i], order[(i + 1) % k]) for i in range(k))
        added = [edge(order[i], order[(i + 1) % k]) for i in range(k)]
        added.remove((u, v))
        added += [edge(u, x), edge(x, v)]
        self.apply("CarveCavity", {"center": x, "sphere": sphere}, [], added)

    def detour_options(self, y: int) -> list[Edge]:
        ny = self.adj[y]
        out = set()
        for u in ny:
            if u in self.nb:
                for v in self.nb[u]:
                    if v in ny:
                        out.add(edge(u, v))
        return sorted(out)

    def detour(self, y: int, e: Edge) -> None:
        u, v = e
        kind = "DrillHole" if e in self.boundary_edges and y in self.near_boundary else "Detour"
        self.apply(kind, {"vertex": y, "edge": list(e)}, [e], [edge(u, y), edge(y, v)])

    def try_detours(self, uncovered: set[int]) -> bool:
        progress = False
        for y in sorted(uncovered):
            opts = self.detour_options(y)
            if opts:
                self.detour(y, opts[0])
                uncovered.discard(y)
                progress = True
        return progress

    def try_bridges(self) -> bool:
        progress = False
        for a, b in self.cycle_edges():
            if self.pieces() == 1:
                break
            if b not in self.nb[a]:
                continue
            found = self._bridge_at(a, b)
            if found is not None:
                bridge = quadrilateral_bridge(self.g, (a, b), found)
                removed, added = bridge.rewiring
                self.apply("Bridge", {"bridge": bridge.to_json()}, removed, added)
                progress = True
        return progress

    def _bridge_at(self, a: int, b: int) -> Edge | None:
        pa = self.find(a)
        best = None
        for c in self.adj[a]:
            if c not in self.nb or self.find(c) == pa:
                continue
            for d in self.nb[c]:
                if d in self.adj[b]:
                    cand = edge(c, d)
                    if best is None or cand < best:
                        best = cand
        return best

    def try_double_detour(self, uncovered: set[int]) -> bool:
        for y in sorted(uncovered):
            for w in sorted(self.adj[y]):
                if w not in uncovered:
                    continue
                for u in sorted(self.adj[y]):
                    if u not in self.nb:
                        continue
                    for v in sorted(self.nb[u]):
                        if v in self.adj[w]:
                            self.apply("Detour", {"vertex": y, "edge": list(edge(u, v)), "path": [y, w]},
                                       [edge(u, v)], [edge(u, y), edge(y, w), edge(w, v)])
                            uncovered.discard(y)
                            uncovered.discard(w)
                            return True
        return False

    def try_absorb(self, uncovered: set[int]) -> bool:
        """Pull a covered neighbour z of a boxed point y out of its cycle and
        reinsert the pair y, z elsewhere."""
        for y in sorted(uncovered):
            ny = self.adj[y]
            for z in sorted(w for w in ny if w in self.nb):
                if self.size[self.find(z)] < 4:
                    continue
                p, s = self.nb[z]
                if s not in self.adj[p]:
                    continue
                removed = [edge(p, z), edge(z, s)]
                for u in sorted(w for w in ny if w in self.nb and w != z):
                    for v in sorted(self.nb[u]):
                        if v == z:
                            continue
                        e = edge(u, v)
                        if e in removed:
                            continue
                        if v in self.adj[z]:
                            self.apply("AbsorbBoxedPoint", {"point": y, "absorbed": z},
                                       removed + [e], [edge(p, s), edge(u, y), edge(y, z), edge(z, v)])
                            # z may have moved to another piece
                            self.regroup()
                            uncovered.discard(y)
                            return True
                # reinsert into the new edge (p, s) itself
                for u, v in ((p, s), (s, p)):
                    if u in ny and v in self.adj[z]:
                        self.apply("AbsorbBoxedPoint", {"point": y, "absorbed": z},
                                   removed, [edge(u, y), edge(y, z), edge(z, v)])
                        uncovered.discard(y)
                        return True
        return False

    def try_flip(self, uncovered: set[int]) -> bool:
        """2-opt inside one piece so that two neighbours of y become consecutive."""
        for y in sorted(uncovered):
            ny = sorted(w for w in self.adj[y] if w in self.nb)
            for u, v in combinations(ny, 2):
                if v not in self.adj[u] or self.find(u) != self.find(v) or v in self.nb[u]:
                    continue
                order = self.walk(u)
                pos = {w: i for i, w in enumerate(order)}
                k = len(order)
                j = pos[v]
                su, sv = order[1 % k], order[(j + 1) % k]
                pu, pv = order[-1], order[j - 1]
                for a, b in ((su, sv), (pu, pv)):
                    if a == v or b == u or a == b or b not in self.adj[a]:
                        continue
                    removed = [edge(u, a), edge(v, b)]
                    added = [edge(a, b), edge(u, y), edge(y, v)]
                    self.apply("Rewire", {"flip": [u, v], "for": y}, removed, [edge(a, b), edge(u, v)])
                    self.apply("Detour", {"vertex": y, "edge": [u, v]}, [edge(u, v)], added[1:])
                    uncovered.discard(y)
                    return True
        return False

    # closing ------------------------------------------------------------------

    def close(self, uncovered: set[int]) -> None:
        """Rotation-extension search joining all pieces and remaining points."""
        order = posa(self.g, self._piece_cycles(), uncovered, self.rng)
        if order is None:
            raise ConstructionError("rotation-extension search failed", self.trace)
        old = set(self.cycle_edges())
        k = len(order)
        new = {edge(order[i], order[(i + 1) % k]) for i in range(k)}
        self.apply("Rewire", {"closing": True}, sorted(old - new), sorted(new - old))
        uncovered.clear()

    def _piece_cycles(self) -> list[list[int]]:
        seen, out = set(), []
        for v in sorted(self.nb):
            r = self.find(v)
            if r in seen:
                continue
            seen.add(r)
            out.append(self.walk(v) if self.nb[v] else [v])
        return out

    # driver --------------------------------------------------------------------

    def run(self, with_boundary: bool) -> Cycle:
        g = self.g
        if with_boundary:
            self.boundary_phase()
        uncovered = {v for v in g.vertices if v not in self.nb}
        self.cavity_phase(uncovered)
        while uncovered or self.pieces() > 1:
            if self.try_detours(uncovered):
                continue
            if self.pieces() > 1 and self.try_bridges():
                continue
            if uncovered and (self.try_double_detour(uncovered) or self.try_absorb(uncovered)
                              or self.try_flip(uncovered)):
                continue
            self.close(uncovered)
        return Cycle.from_edges(self.cycle_edges())

    def boundary_phase(self) -> None:
        b = boundary(self.g)
        self.boundary_edges = set(b.graph.edges())
        for v in b.vertices:
            self.near_boundary.update(self.adj[v])
        self.near_boundary -= b.vertices
        for i, comp in enumerate(b.graph.components()):
            h = b.graph.induced(comp)
            sub = solve(h, self.rng, self.depth + 1)
            self.add_cycle("BoundaryCycle", {"component": i, "cycle": list(sub.vertices)},
                           list(sub.vertices))
        self.try_bridges()

    def cavity_phase(self, uncovered: set[int]) -> None:
        adj = self.adj
        blocked = {v: sum(1 for w in adj[v] if w in self.nb) for v in self.g.vertices}
        heap: list[int] = []

        def cover(vs):
            for v in vs:
                for w in adj[v]:
                    blocked[w] += 1
                for w in adj[v]:
                    for z in adj[w]:
                        if z in uncovered and blocked[z] == 0:
                            heapq.heappush(heap, z)

        cover(list(self.nb))
        scan = sorted(self.g.vertices)
        while True:
            x = None
            while heap:
                z = heapq.heappop(heap)
                if z in uncovered and blocked[z] == 0:
                    x = z
                    break
            if x is None:
                if self.nb:
                    # distance-2 candidates exhausted; start afresh only in an untouched region
                    x = next((z for z in scan if z in uncovered and blocked[z] == 0
                              and all(blocked[w] == 0 for w in adj[z])), None)
                else:
                    x = next((z for z in scan if z in uncovered and blocked[z] == 0), None)
            if x is None:
                return
            ball = [x, *adj[x]]
            self.carve(x)
            uncovered.difference_update(ball)
            cover(ball)


def posa(g: Graph, pieces: list[list[int]], uncovered: set[int], rng: random.Random,
         max_rounds: int = 50) -> list[int] | None:
    """Rotation-extension search for a Hamiltonian cycle.

    Starts from the largest piece; other pieces are spliced in whole when the
    path end reaches them.
    """
    adj = g.adjacency
    n = g.n
    for attempt in range(max_rounds):
        owner: dict[int, int] = {}
        cycles = [list(p) for p in pieces]
        cycles.sort(key=len, reverse=True)
        for i, p in enumerate(cycles):
            for v in p:
                owner[v] = i
        if cycles:
            path = cycles[0]
            free_cycles = set(range(1, len(cycles)))
        else:
            start = min(uncovered)
            path = [start]
            free_cycles = set()
        inpath = set(path)
        pos = {v: i for i, v in enumerate(path)}
        budget = 40 * n + 2000
        while budget > 0:
            budget -= 1
            end = path[-1]
            outside = [w for w in adj[end] if w not in inpath]
            if outside:
                w = min(outside, key=lambda z: (sum(1 for t in adj[z] if t not in inpath),
                                                rng.random()))
                if w in owner and owner[w] in free_cycles:
                    cyc = cycles[owner[w]]
                    free_cycles.discard(owner[w])
                    i = cyc.index(w)
                    seg = cyc[i:] + cyc[:i]
                    if rng.random() < 0.5:
                        seg = [seg[0]] + seg[:0:-1]
                else:
                    seg = [w]
                for v in seg:
                    pos[v] = len(path)
                    path.append(v)
                inpath.update(seg)
                continue
            if len(path) == n and path[0] in adj[end] and n >= 3:
                return path
            if path[0] in adj[end] and len(path) < n:
                # closed cycle: reopen at a vertex with an outside neighbour
                idx = [i for i, v in enumerate(path) if any(w not in inpath for w in adj[v])]
                if idx:
                    i = rng.choice(idx)
                    path = path[i + 1:] + path[:i + 1]
                    pos = {v: k for k, v in enumerate(path)}
                    continue
            last = len(path) - 2
            pivots = sorted(pos[w] for w in adj[end] if w in inpath and pos[w] < last)
            if not pivots:
                break
            j = rng.choice(pivots)
            path[j + 1:] = path[j + 1:][::-1]
            for k in range(j + 1, len(path)):
                pos[path[k]] = k
    return None


def _cycle_graph_order(g: Graph) -> list[int]:
    start = min(g.vertices)
    order, prev, cur = [start], None, start
    while True:
        nxt = [w for w in sorted(g.neighbors(cur)) if w != prev]
        w = nxt[0]
        if w == start:
            return order
        order.append(w)
        prev, cur = cur, w


def _is_cycle_graph(g: Graph) -> bool:
    return g.n >= 3 and g.is_connected() and all(g.degree(v) == 2 for v in g.vertices)


def solve(g: Graph, rng: random.Random, depth: int = 0,
          trace: ConstructionTrace | None = None, with_boundary: bool = False) -> Cycle:
    """Recursive worker used for unit spheres and boundary components."""
    trace = trace if trace is not None else ConstructionTrace()
    if g.n >= 3 and g.is_complete():
        order = sorted(g.vertices)
        _log_cycle(trace, "FacetLift", {"facet": order}, order)
        return Cycle.canonical(order)
    if _is_cycle_graph(g):
        order = _cycle_graph_order(g)
        _log_cycle(trace, "BoundaryCycle", {"component": 0, "cycle": order}, order)
        return Cycle.canonical(order)
    if depth > 12:
        raise ConstructionError("recursion too deep", trace)
    return _Engine(g, trace, rng, depth).run(with_boundary)


def _log_cycle(trace: ConstructionTrace, kind: str, data: dict, order: Sequence[int]) -> None:
    k = len(order)
    trace.steps.append(Step(kind, data, [], [edge(order[i], order[(i + 1) % k]) for i in range(k)]))


# -- facet lifting ------------------------------------------------------------------


def facet_extension(g: Graph, c, new_vertex: int, facet: Sequence[int]) -> Cycle:
    """Lift a cycle edge inside ``facet`` to the new apex ``new_vertex``."""
    face = set(facet)
    vs = list(c)
    k = len(vs)
    options = sorted(edge(vs[i], vs[(i + 1) % k]) for i in range(k)
                     if vs[i] in face and vs[(i + 1) % k] in face)
    if not options:
        raise InvalidInput(f"cycle has no edge inside {tuple(sorted(face))}")
    u, v = options[0]
    i = vs.index(u)
    if vs[(i + 1) % k] == v:
        out = vs[:i + 1] + [new_vertex] + vs[i + 1:]
    else:
        out = vs[:i] + [new_vertex] + vs[i:]
    return Cycle.canonical(out)


def _path_shelling(c: Complex) -> list[Simplex] | None:
    g = skeleton(c)
    dual, facets = dual_graph(g)
    if not c.is_pure() or set(facets) != set(c.facets):
        return None
    if len(facets) == 1:
        return list(facets)
    degs = [dual.degree(i) for i in dual.vertices]
    if not dual.is_connected() or max(degs) > 2 or degs.count(1) != 2:
        return None
    start = min(i for i in dual.vertices if dual.degree(i) == 1)
    order, prev = [start], None
    while len(order) < len(facets):
        nxt = [j for j in dual.neighbors(order[-1]) if j != prev]
        prev = order[-1]
        order.append(nxt[0])
    return [facets[i] for i in order]


def hamiltonian_for_path_shellable(c: Complex, trace: ConstructionTrace | None = None) -> Cycle:
    """Iterated facet lifting along the path order of the dual graph."""
    order = _path_shelling(c)
    if order is None:
        raise InvalidInput("dual graph is not a path")
    if len(order[0]) < 3:
        raise InvalidInput("path-shellable lifting needs dimension >= 2")
    trace = trace if trace is not None else ConstructionTrace()
    first = list(order[0])
    _log_cycle(trace, "FacetLift", {"facet": first}, first)
    cyc = Cycle.canonical(first)
    seen = set(first)
    g = skeleton(c)
    for prev, f in zip(order, order[1:]):
        new = [v for v in f if v not in prev]
        if len(new) != 1 or new[0] in seen:
            raise InvalidInput(f"facet {f} does not add exactly one new vertex")
        x = new[0]
        shared = [v for v in f if v != x]
        before = cyc.edge_set()
        cyc = facet_extension(g, cyc, x, shared)
        after = cyc.edge_set()
        trace.steps.append(Step("FacetLift", {"vertex": x, "facet": list(f)},
                                sorted(before - after), sorted(after - before)))
        seen.add(x)
    return cyc


# -- strong repair ----------------------------------------------------------------


def strengthen(g: Graph, c: Cycle, with_boundary: bool, rng: random.Random,
               max_moves: int | None = None) -> Cycle | None:
    """Local search over 2-opt and relocation moves until every target simplex
    holds a cycle edge.  Returns None if the move budget runs out."""
    targets = strong_targets(g, with_boundary)
    by_edge: dict[Edge, list[int]] = {}
    for t, s in enumerate(targets):
        for e in combinations(s, 2):
            by_edge.setdefault(e, []).append(t)
    order = list(c.vertices)
    n = len(order)
    if n < 4:
        return c if verify_strong(g, c, with_boundary) else None
    pos = {v: i for i, v in enumerate(order)}
    count = [0] * len(targets)
    for e in Cycle(tuple(order)).edges():
        for t in by_edge.get(e, ()):
            count[t] += 1
    missing = {t for t in range(len(targets)) if count[t] == 0}
    adj = g.adjacency
    nbrs = {v: sorted(adj[v]) for v in order}
    max_moves = max_moves if max_moves is not None else 4000 + 400 * n

    def nxt(v):
        return order[(pos[v] + 1) % n]

    def prv(v):
        return order[pos[v] - 1]

    def delta(removed, added) -> int:
        change: dict[int, int] = {}
        for e in removed:
            for t in by_edge.get(e, ()):
                change[t] = change.get(t, 0) - 1
        for e in added:
            for t in by_edge.get(e, ()):
                change[t] = change.get(t, 0) + 1
        d = 0
        for t, k in change.items():
            before = count[t] == 0
            after = count[t] + k == 0
            d += after - before
        return d

    def commit(removed, added):
        for e in removed:
            for t in by_edge.get(e, ()):
                count[t] -= 1
                if count[t] == 0:
                    missing.add(t)
        for e in added:
            for t in by_edge.get(e, ()):
                if count[t] == 0:
                    missing.discard(t)
                count[t] += 1

    def two_opt(x, y):
        # reverse order[pos[x]+1 .. pos[y]] (cyclically)
        i, j = pos[x] + 1, pos[y]
        length = (j - i) % n + 1
        idx = [(i + k) % n for k in range(length)]
        vals = [order[k] for k in idx][::-1]
        for k, v in zip(idx, vals):
            order[k] = v
            pos[v] = k

    def relocate(z, u, v):
        # move z between consecutive u, v
        order.pop(pos[z])
        for k, w in enumerate(order):
            pos[w] = k
        k = pos[u]
        at = k + 1 if order[(k + 1) % (n - 1)] == v else k
        order.insert(at, z)
        for k, w in enumerate(order):
            pos[w] = k

    moves = 0
    best_missing = len(missing)
    stale = 0
    while missing and moves < max_moves:
        moves += 1
        stale += 1
        # temperature cools with the time since the last improvement
        temperature = 0.15 + 0.85 * min(1.0, stale / (50.0 * n))
        if rng.random() < 0.5:
            t = rng.choice(sorted(missing)) if len(missing) < 64 else rng.choice(list(missing))
            pairs = list(combinations(targets[t], 2))
        else:
            # an arbitrary graph edge, to escape states with no targeted move
            x = order[rng.randrange(n)]
            pairs = [(x, rng.choice(nbrs[x]))]
        cands = []
        for x, y in pairs:
            for a, b in ((x, y), (y, x)):
                na, nb_ = nxt(a), nxt(b)
                if na != b and nb_ != a and nb_ in adj[na]:
                    cands.append(("2opt", a, b, [edge(a, na), edge(b, nb_)],
                                  [edge(a, b), edge(na, nb_)]))
                pa, pb = prv(a), prv(b)
                if pa != b and pb != a and pb in adj[pa]:
                    # same exchange seen from the predecessors
                    cands.append(("2opt", pa, pb, [edge(pa, a), edge(pb, b)],
                                  [edge(a, b), edge(pa, pb)]))
                qa = nxt(a)
                if qa in adj[pa] and b not in (pa, qa):
                    for w in (prv(b), nxt(b)):
                        if w != a and w in adj[a]:
                            cands.append(("move", a, (b, w), [edge(pa, a), edge(a, qa), edge(b, w)],
                                          [edge(pa, qa), edge(a, b), edge(a, w)]))
        if not cands:
            continue
        kind, a, b, removed, added = cands[rng.randrange(len(cands))]
        dl = delta(removed, added)
        if dl > 0 and rng.random() > math.exp(-dl / temperature):
            continue
        if kind == "2opt":
            two_opt(a, b)
        else:
            relocate(a, *b)
        commit(removed, added)
        if len(missing) < best_missing:
            best_missing = len(missing)
            stale = 0
    if missing:
        return None
    return Cycle.canonical(order)


def exact_strong(g: Graph, with_boundary: bool = False, time_limit: float = 60.0):
    """Exact strong cycle search as a 0/1 program with lazy subtour cuts.

    Variables are edges; every vertex gets degree 2 and every target simplex
    at least one chosen edge.  Cuts only remove disconnected 2-factors, so an
    infeasible model proves that no strong Hamiltonian cycle exists.
    Returns ``("found", cycle)``, ``("infeasible", None)`` or ``("timeout", None)``.
    """
    import time

    import numpy as np
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import csr_matrix

    edges = g.edges()
    index = {e: k for k, e in enumerate(edges)}
    vindex = {v: i for i, v in enumerate(g.vertices)}
    m = len(edges)

    def rows(groups):
        r, cidx = [], []
        for i, ks in enumerate(groups):
            r += [i] * len(ks)
            cidx += ks
        return csr_matrix((np.ones(len(r)), (r, cidx)), shape=(len(groups), m))

    degree = [[] for _ in g.vertices]
    for k, (u, v) in enumerate(edges):
        degree[vindex[u]].append(k)
        degree[vindex[v]].append(k)
    cover = [[index[e] for e in combinations(t, 2)] for t in strong_targets(g, with_boundary)]
    constraints = [LinearConstraint(rows(degree), 2, 2), LinearConstraint(rows(cover), 1, np.inf)]
    cuts: list[list[int]] = []
    deadline = time.monotonic() + time_limit
    while True:
        left = deadline - time.monotonic()
        if left <= 0:
            return "timeout", None
        extra = [LinearConstraint(rows(cuts), 2, np.inf)] if cuts else []
        res = milp(np.zeros(m), constraints=constraints + extra, integrality=np.ones(m),
                   bounds=Bounds(0, 1), options={"time_limit": left})
        if res.status == 2:
            return "infeasible", None
        if res.x is None:
            return "timeout", None
        chosen = [edges[k] for k in range(m) if res.x[k] > 0.5]
        parts = Graph(g.vertices, chosen).components()
        if len(parts) == 1:
            return "found", Cycle.from_edges(chosen)
        for part in parts:
            inside = set(part)
            cuts.append([k for k, (u, v) in enumerate(edges) if (u in inside) != (v in inside)])


# -- public entry points ------------------------------------------------------------


def _strong_required(cls) -> tuple[bool, bool]:
    """(strong expected, with boundary faces) for a classification."""
    if cls.tag in ("Sphere", "ClosedDGraph"):
        return True, False
    if cls.tag in ("Ball", "DGraphWithBoundary", "GeneralizedDGraph", "SimplexGraph"):
        return cls.dim >= 3, True
    return False, False


def find_hamiltonian(g: Graph, strong: bool = True, seed: int = 0,
                     oracle_fallback: bool = False,
                     exact_limit: float = 60.0) -> tuple[Cycle, ConstructionTrace]:
    """Hamiltonian cycle of a connected d-graph (with or without boundary).

    With ``strong`` the cycle is repaired, where the theorems promise it,
    until it holds an edge in every facet (and every boundary face for
    d >= 3 with boundary).  Local search runs first; if it stalls, the exact
    search gets ``exact_limit`` seconds (0 disables it).
    """
    from .recognition import hamiltonian_precondition, is_path_shellable_generalized

    ok, cls = hamiltonian_precondition(g)
    if not ok:
        raise PreconditionError(cls, "disconnected" if not g.is_connected() else "")
    rng = random.Random(seed)
    trace = ConstructionTrace(seed=seed)
    d = cls.dim
    if cls.tag == "SimplexGraph":
        cyc = solve(g, rng, 0, trace)
    elif cls.tag in ("Sphere", "ClosedDGraph"):
        cyc = solve(g, rng, 0, trace)
    elif cls.tag == "GeneralizedDGraph" and is_path_shellable_generalized(g) == d:
        cyc = hamiltonian_for_path_shellable(Complex(frozenset(maximal_cliques(g))), trace)
    else:
        manifold = cls.tag in ("Ball", "DGraphWithBoundary")
        try:
            cyc = solve(g, rng, 0, trace, with_boundary=manifold)
        except ConstructionError:
            if not oracle_fallback:
                raise
            cyc = _oracle_cycle(g, trace)
    if not verify_hamiltonian(g, cyc):
        raise ConstructionError("constructed cycle failed verification", trace)
    want, with_boundary = _strong_required(cls)
    if strong and want and not verify_strong(g, cyc, with_boundary):
        better = None
        for attempt in range(6):
            better = strengthen(g, cyc, with_boundary, random.Random(seed * 7919 + attempt))
            if better is not None:
                break
        status = "skipped"
        if better is None and exact_limit > 0:
            status, better = exact_strong(g, with_boundary, exact_limit)
        if better is None:
            missing = len(uncovered_targets(g, cyc, with_boundary))
            if status == "infeasible":
                msg = "no strongly Hamiltonian cycle exists (exact search)"
            else:
                msg = f"strong repair did not converge (exact search: {status})"
            raise StrongPropertyError(f"{msg}; best cycle misses {missing} simplices",
                                      cyc, trace, missing, proven=status == "infeasible")
        old, new = cyc.edge_set(), better.edge_set()
        trace.steps.append(Step("Rewire", {"strong": True}, sorted(old - new), sorted(new - old)))
        cyc = better
    return cyc, trace


def _oracle_cycle(g: Graph, trace: ConstructionTrace) -> Cycle:
    from .oracle import brute_hamiltonian

    res = brute_hamiltonian(g)
    if res.verdict != "Found":
        raise ConstructionError(f"oracle fallback: {res.verdict}", trace)
    trace.steps.clear()
    _log_cycle(trace, "Rewire", {"oracle": True}, res.witness)
    return Cycle.canonical(res.witness)


def merge_cycles(c1, c2, b: PrismBridge) -> Cycle:
    """Swap the two removed edges of the bridge for its two cross edges."""
    e1, e2 = set(Cycle(tuple(c1)).edges()), set(Cycle(tuple(c2)).edges())
    if set(c1) & set(c2):
        raise InvalidInput("cycles share vertices")
    (ab, cd), added = b.rewiring
    if ab in e2 and cd in e1:
        ab, cd = cd, ab
    if ab not in e1 or cd not in e2:
        raise InvalidInput("cycles do not traverse the bridge edges")
    return Cycle.from_edges((e1 | e2) - {ab, cd} | set(added))


# -- sub-steps as standalone functions -------------------------------------------------


def find_strong_interior(g: Graph, covered: Iterable[int]) -> int | None:
    """Smallest vertex whose closed neighbourhood avoids ``covered``, preferring
    distance exactly 2 from it."""
    covered = set(covered)
    free = [x for x in sorted(g.vertices)
            if x not in covered and not (g.neighbors(x) & covered)]
    if not covered:
        return free[0] if free else None
    near = [x for x in free if any(g.neighbors(w) & covered for w in g.neighbors(x))]
    return near[0] if near else None


def carve_cavity(g: Graph, x: int, seed: int = 0) -> Cycle:
    """Cycle on the unit ball B(x): the unit-sphere cycle with a detour through x."""
    eng = _Engine(g, ConstructionTrace(), random.Random(seed))
    eng.carve(x)
    return Cycle.from_edges(eng.cycle_edges())


def extend_detour(g: Graph, c, x: int) -> Cycle:
    """Replace the smallest cycle edge (u, v) with u, v in S(x) by u - x - v."""
    vs = list(c)
    k = len(vs)
    nx = g.neighbors(x)
    options = sorted(edge(vs[i], vs[(i + 1) % k]) for i in range(k)
                     if vs[i] in nx and vs[(i + 1) % k] in nx)
    if not options:
        raise InvalidInput(f"no cycle edge inside S({x})")
    return facet_extension(g, c, x, options[0])


def _engine_from(g: Graph, cycles: Sequence[Sequence[int]]) -> _Engine:
    eng = _Engine(g, ConstructionTrace(), random.Random(0))
    for cyc in cycles:
        eng.add_cycle("BoundaryCycle", {}, list(cyc))
    return eng


def absorb_boxed_point(g: Graph, c, y: int) -> Cycle | None:
    """Insert y by pulling one of its neighbours out of the cycle and
    reinserting both; None if no such move exists."""
    eng = _engine_from(g, [list(c)])
    if eng.try_absorb({y}):
        return Cycle.from_edges(eng.cycle_edges())
    return None


def drill_hole(g: Graph, c, x: int) -> Cycle:
    """Open a boundary edge next to x and route the cycle through x,
    flipping a segment first when no such edge is on the cycle."""
    eng = _engine_from(g, [list(c)])
    eng.boundary_edges = set(boundary(g).graph.edges())
    eng.near_boundary = {x}
    todo = {x}
    if not (eng.try_detours(todo) or eng.try_flip(todo)):
        raise InvalidInput(f"cannot drill towards {x}")
    return Cycle.from_edges(eng.cycle_edges())


def boundary_cycles_and_bridges(g: Graph, seed: int = 0) -> list[Cycle]:
    """One cycle per boundary component, joined by bridges where possible."""
    eng = _Engine(g, ConstructionTrace(), random.Random(seed))
    eng.boundary_phase()
    return [Cycle.canonical(p) for p in eng._piece_cycles()]
