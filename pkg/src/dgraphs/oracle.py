"""Brute-force ground truth: Hamiltonian cycles and shelling orders.

Deliberately independent of the constructive code; the only shared pieces
are the graph container and the single-step shelling validator.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from itertools import combinations

from .complex_core import Complex, Graph, InvalidInput, Simplex
from .shelling import valid_intersection

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class Found:
    witness: list = field(default_factory=list)
    expansions: int = 0
    verdict: str = "Found"


@dataclass(frozen=True)
class NotHamiltonian:
    expansions: int = 0
    verdict: str = "NotHamiltonian"


@dataclass(frozen=True)
class NotStronglyHamiltonian:
    expansions: int = 0
    verdict: str = "NotStronglyHamiltonian"


@dataclass(frozen=True)
class NotShellable:
    expansions: int = 0
    verdict: str = "NotShellable"


@dataclass(frozen=True)
class BudgetExceeded:
    expansions: int = 0
    verdict: str = "BudgetExceeded"


class _OutOfBudget(Exception):
    pass


def _reachable_ok(adj, free: set[int], ends: tuple[int, int]) -> bool:
    """Free vertices plus both path ends must be connected, and every free
    vertex needs two usable neighbours."""
    a, b = ends
    for v in free:
        usable = sum(1 for w in adj[v] if w in free or w == a or w == b)
        if usable < 2:
            return False
    if not free:
        return True
    start = next(iter(free))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in free and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != len(free):
        return False
    touches_a = any(w in free for w in adj[a])
    touches_b = any(w in free for w in adj[b])
    return touches_a and touches_b


def brute_hamiltonian(g: Graph, budget: int = DEFAULT_BUDGET):
    """Exhaustive backtracking for a Hamiltonian cycle."""
    n = g.n
    if n < 3:
        return NotHamiltonian(0)
    adj = g.adjacency
    if any(len(adj[v]) < 2 for v in adj) or not g.is_connected():
        return NotHamiltonian(0)
    start = min(g.vertices, key=lambda v: (len(adj[v]), v))
    path = [start]
    free = set(g.vertices) - {start}
    count = [0]

    def grow() -> bool:
        count[0] += 1
        if count[0] > budget:
            raise _OutOfBudget
        end = path[-1]
        if not free:
            return start in adj[end]
        if not _reachable_ok(adj, free, (start, end)):
            return False
        options = sorted((w for w in adj[end] if w in free),
                         key=lambda w: (sum(1 for x in adj[w] if x in free), w))
        for w in options:
            path.append(w)
            free.discard(w)
            if grow():
                return True
            free.add(w)
            path.pop()
        return False

    try:
        if grow():
            return Found(list(path), count[0])
    except _OutOfBudget:
        return BudgetExceeded(count[0])
    return NotHamiltonian(count[0])


def _targets(g: Graph, with_boundary: bool) -> list[Simplex]:
    # written out here rather than imported so the oracle stays independent
    facets = _maximal_cliques(g)
    out = [f for f in facets if len(f) >= 2]
    if with_boundary and facets:
        d = max(len(f) for f in facets)
        seen: dict[Simplex, int] = {}
        for f in facets:
            for face in combinations(f, d - 1):
                seen[face] = seen.get(face, 0) + 1
        out += [face for face, k in sorted(seen.items()) if k == 1 and len(face) >= 2]
    return out


def _maximal_cliques(g: Graph) -> list[Simplex]:
    adj = g.adjacency
    out = []

    def extend(clique, cand):
        grown = False
        for i, v in enumerate(cand):
            nxt = [w for w in cand[i + 1:] if w in adj[v]]
            extend(clique + (v,), nxt)
            grown = True
        if not any(all(w in adj[u] for u in clique) for w in adj if w not in clique) and clique:
            out.append(clique)

    extend((), sorted(g.vertices))
    return sorted(set(out))


def brute_strong_hamiltonian(g: Graph, with_boundary: bool = False, budget: int = DEFAULT_BUDGET):
    """Exhaustive search for a Hamiltonian cycle with an edge in every facet
    (and every boundary face when ``with_boundary``)."""
    n = g.n
    if n < 3:
        return NotStronglyHamiltonian(0)
    adj = g.adjacency
    targets = _targets(g, with_boundary)
    by_vertex: dict[int, list[int]] = {v: [] for v in g.vertices}
    for i, t in enumerate(targets):
        for v in t:
            by_vertex[v].append(i)
    hits = [0] * len(targets)
    start = min(g.vertices, key=lambda v: (len(adj[v]), v))
    path = [start]
    free = set(g.vertices) - {start}
    done: set[int] = set()
    count = [0]

    def touch(u, w, k):
        for i in by_vertex[u]:
            if w in targets[i]:
                hits[i] += k

    def dead(v) -> bool:
        # a target is lost once every one of its edges has a finished endpoint
        for i in by_vertex[v]:
            if hits[i] == 0 and all(a in done or b in done for a, b in combinations(targets[i], 2)):
                return True
        return False

    def grow() -> bool:
        count[0] += 1
        if count[0] > budget:
            raise _OutOfBudget
        end = path[-1]
        if not free:
            if start not in adj[end]:
                return False
            touch(end, start, 1)
            ok = all(hits)
            touch(end, start, -1)
            return ok
        if not _reachable_ok(adj, free, (start, end)):
            return False
        options = sorted((w for w in adj[end] if w in free),
                         key=lambda w: (sum(1 for x in adj[w] if x in free), w))
        for w in options:
            touch(end, w, 1)
            path.append(w)
            free.discard(w)
            closing = end != start
            if closing:
                done.add(end)
            if not (closing and dead(end)) and grow():
                return True
            if closing:
                done.discard(end)
            free.add(w)
            path.pop()
            touch(end, w, -1)
        return False

    try:
        if grow():
            return Found(list(path), count[0])
    except _OutOfBudget:
        return BudgetExceeded(count[0])
    return NotStronglyHamiltonian(count[0])


def count_hamiltonian_cycles(g: Graph, budget: int = DEFAULT_BUDGET) -> int:
    """Number of Hamiltonian cycles up to rotation and reflection."""
    n = g.n
    if n < 3:
        return 0
    adj = g.adjacency
    start = min(g.vertices)
    path = [start]
    free = set(g.vertices) - {start}
    total = [0]
    count = [0]

    def grow():
        count[0] += 1
        if count[0] > budget:
            raise _OutOfBudget
        end = path[-1]
        if not free:
            # each undirected cycle is seen twice, once per direction;
            # keep the direction whose second vertex is smaller than the last
            if start in adj[end] and path[1] < path[-1]:
                total[0] += 1
            return
        for w in sorted(adj[end]):
            if w in free:
                path.append(w)
                free.discard(w)
                grow()
                free.add(w)
                path.pop()

    try:
        grow()
    except _OutOfBudget:
        raise RuntimeError(f"count exceeded budget of {budget} expansions") from None
    return total[0]


def brute_shellable(c: Complex, budget: int = DEFAULT_BUDGET):
    """Exhaustive search over facet orders, memoising dead prefixes."""
    if not c.is_pure():
        raise InvalidInput("brute_shellable needs a pure complex")
    facets: list[Simplex] = c.sorted_facets()
    d = c.dim
    m = len(facets)
    # faces[i]: proper faces of facet i with the bitmask of facets containing them
    containing: dict[Simplex, int] = {}
    for i, f in enumerate(facets):
        for k in range(1, len(f)):
            for s in combinations(f, k):
                containing[s] = containing.get(s, 0) | 1 << i
    faces = [[(s, containing[s]) for k in range(1, len(f)) for s in combinations(f, k)]
             for f in facets]
    near = [0] * m
    for i, f in enumerate(facets):
        for v in f:
            near[i] |= containing[(v,)]
    dead: set[int] = set()
    seen_steps: dict[tuple[int, int], bool] = {}
    count = [0]
    order: list[int] = []

    def meets_well(i: int, mask: int) -> bool:
        # only facets sharing a vertex with facet i affect the step
        key = (i, mask & near[i])
        if key not in seen_steps:
            seen_steps[key] = _meets(i, key[1])
        return seen_steps[key]

    def _meets(i: int, mask: int) -> bool:
        hit = [frozenset(s) for s, owners in faces[i] if owners & mask]
        top = frozenset(tuple(sorted(a)) for a in hit if not any(a < b for b in hit))
        return valid_intersection(top, d)

    def grow(mask: int) -> bool:
        if len(order) == m:
            return True
        if mask in dead:
            return False
        count[0] += 1
        if count[0] > budget:
            raise _OutOfBudget
        for i in range(m):
            if mask >> i & 1:
                continue
            if mask and not meets_well(i, mask):
                continue
            order.append(i)
            if grow(mask | 1 << i):
                return True
            order.pop()
        dead.add(mask)
        return False

    try:
        if grow(0):
            return Found([facets[i] for i in order], count[0])
    except _OutOfBudget:
        return BudgetExceeded(count[0])
    return NotShellable(count[0])
