import itertools
import math
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from dgraphs import Graph, InvalidInput, constructions as C, zoo
from dgraphs.complex_core import dual_graph, euler_characteristic, f_vector, maximal_cliques
from dgraphs.recognition import classify_dgraph, dgraph_dimension, is_ball, sphere_dimension

from conftest import BALLS, SPHERES, fixture, graphs


def iso(a: Graph, b: Graph) -> bool:
    return nx.is_isomorphic(_nx(a), _nx(b))


def _nx(g: Graph):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges())
    return h


def brute_simplex_count(g: Graph) -> int:
    """Number of non-empty cliques, by checking every vertex subset."""
    vs = g.vertices
    return sum(1 for k in range(1, len(vs) + 1) for s in itertools.combinations(vs, k)
               if all(g.has_edge(a, b) for a, b in itertools.combinations(s, 2)))


# -- join, cone, suspension ---------------------------------------------------------


def test_join_examples():
    assert iso(C.join(Graph([0]), zoo.cyclic(4)), zoo.wheel(4))
    assert iso(C.join(Graph([0, 1]), zoo.cyclic(4)), zoo.octahedron())
    assert iso(C.join(zoo.complete(2), Graph([0, 1, 2])), zoo.windmill())


def test_join_shifts_overlapping_ids():
    g = C.join(zoo.cyclic(4), zoo.cyclic(4))
    assert g.n == 8 and g.m == 4 + 4 + 16


def test_cone_examples():
    assert iso(C.cone(zoo.cyclic(5)), zoo.wheel(5))
    assert is_ball(C.cone(zoo.octahedron())) == 3
    assert C.cone(Graph()) == Graph([0])


def test_suspension_chain():
    assert iso(C.suspension(zoo.cyclic(4)), zoo.octahedron())
    s3 = C.suspension(zoo.octahedron())
    assert classify_dgraph(s3).label == "Sphere(3)"
    s4 = C.suspension(s3)
    assert classify_dgraph(s4).label == "Sphere(4)"


def test_suspension_bumps_sphere_dimension():
    g = Graph()
    for d in range(-1, 4):
        assert sphere_dimension(g) == d
        g = C.suspension(g)


@pytest.mark.parametrize("a,b", [("cyclic", "triangle"), ("octahedron", "cyclic"),
                                 ("wheel", "diamond"), ("torus", "triangle")])
def test_join_euler_identity(a, b):
    g1, g2 = fixture(a), fixture(b)
    x1, x2 = euler_characteristic(g1), euler_characteristic(g2)
    assert euler_characteristic(C.join(g1, g2)) == x1 + x2 - x1 * x2


@given(graphs(max_n=5), graphs(max_n=4))
@settings(max_examples=30)
def test_join_euler_identity_random(g1, g2):
    x1, x2 = euler_characteristic(g1), euler_characteristic(g2)
    assert euler_characteristic(C.join(g1, g2)) == x1 + x2 - x1 * x2


# -- Barycentric refinement --------------------------------------------------------------


def test_barycentric_small():
    assert iso(C.barycentric_refinement(zoo.complete(2)), zoo.path(3))
    assert iso(C.barycentric_refinement(zoo.cyclic(4)), zoo.cyclic(8))


def test_barycentric_octahedron_vertex_count():
    g = zoo.octahedron()
    expected = brute_simplex_count(g)
    assert expected == 6 + 12 + 8
    r = C.barycentric_refinement(g)
    assert r.n == expected == 26
    assert euler_characteristic(r) == 2


def test_barycentric_carrier_names_vertices():
    g = zoo.wheel(4)
    carrier = C.barycentric_carrier(g)
    r = C.barycentric_refinement(g)
    for u, v in r.edges():
        a, b = set(carrier[u]), set(carrier[v])
        assert a < b or b < a


@pytest.mark.parametrize("name", ["cyclic", "octahedron", "icosahedron", "wheel",
                                  "birkhoff-diamond", "16-cell", "solid-octahedron"])
def test_barycentric_preserves_class(name):
    g = fixture(name)
    r = C.barycentric_refinement(g)
    assert classify_dgraph(r).label == classify_dgraph(g).label
    assert euler_characteristic(r) == euler_characteristic(g)


@given(graphs(max_n=6))
@settings(max_examples=30)
def test_barycentric_preserves_euler_characteristic(g):
    r = C.barycentric_refinement(g)
    assert r.n == brute_simplex_count(g)
    assert euler_characteristic(r) == euler_characteristic(g)


# -- edge refinement ------------------------------------------------------------------------


def test_edge_refinement_examples():
    assert iso(C.edge_refinement(zoo.cyclic(4), (0, 1)), zoo.cyclic(5))
    r = C.edge_refinement(zoo.octahedron(), zoo.octahedron().edges()[0])
    assert r.n == 7 and sphere_dimension(r) == 2
    with pytest.raises(InvalidInput):
        C.edge_refinement(zoo.cyclic(5), (0, 2))


def test_edge_refinement_of_interior_edge_adds_interior_vertex():
    ball = C.cone(zoo.octahedron())
    apex = max(ball.vertices)
    r = C.edge_refinement(ball, (0, apex))
    new = max(r.vertices)
    from dgraphs.complex_core import boundary
    assert is_ball(r) == 3
    assert new not in boundary(r).vertices


@pytest.mark.parametrize("name", ["octahedron", "icosahedron", "torus", "16-cell",
                                  "projective-plane"])
def test_edge_refinement_preserves_closed_dgraph(name):
    g = fixture(name)
    d = dgraph_dimension(g)
    rng = random.Random(name)
    for e in rng.sample(g.edges(), 5):
        assert dgraph_dimension(C.edge_refinement(g, e)) == d


# -- stellation and gluing ---------------------------------------------------------------


def test_stellate_triangle_gives_k4():
    g = C.stellate_facet(zoo.cyclic(3), (0, 1, 2))
    assert g == zoo.complete(4)


def test_stellate_rejects_interior_faces():
    with pytest.raises(InvalidInput):
        C.stellate_facet(zoo.octahedron(), (0, 1))


@pytest.mark.parametrize("name", ["octahedron", "wheel", "avici3", "simplex", "avici4"])
def test_stellate_f_vector_delta(name):
    # the new vertex x adds exactly the faces {x} + s for s a face of f (or empty)
    g = fixture(name)
    for f in [maximal_cliques(g)[0]] + list(_boundary_faces(g))[:1]:
        h = C.stellate_facet(g, f)
        fg, fh = f_vector(g), f_vector(h)
        fg += [0] * (len(fh) - len(fg))
        k = len(f)
        assert [b - a for a, b in zip(fg, fh)] == [math.comb(k, i) for i in range(k + 1)]


def test_stellate_facet_versus_boundary_face_facet_counts():
    g = zoo.avici(3)
    facets = maximal_cliques(g)
    # over a facet: the facet grows into a simplex one dimension higher
    assert len(maximal_cliques(C.stellate_facet(g, facets[0]))) == len(facets)
    # over a boundary face: one new facet of the same dimension
    face = next(iter(_boundary_faces(g)))
    h = C.stellate_facet(g, face)
    assert len(maximal_cliques(h)) == len(facets) + 1
    assert {len(f) for f in maximal_cliques(h)} == {4}


def _boundary_faces(g):
    from dgraphs.complex_core import boundary
    return boundary(g).faces


def test_goldner_harary_4_by_stellation():
    g = zoo.goldner_harary(4)
    base = zoo.avici(4)
    assert g.n == base.n + 8
    assert classify_dgraph(g).tag == "Other"


def test_stellate_avici_boundary_triangle_gives_path_dual():
    g = zoo.avici(3)
    from dgraphs.complex_core import boundary
    face = boundary(g).faces[0]
    h = C.stellate_facet(g, face)
    dual, facets = dual_graph(h)
    assert len(facets) == 3
    assert iso(dual, zoo.path(3))


def test_glue_along_builds_avici():
    k4 = zoo.complete(4)
    g = C.glue_along(k4, k4, {0: 0, 1: 1, 2: 2})
    assert g.n == 5 and iso(g, zoo.avici(3))
    with pytest.raises(InvalidInput):
        C.glue_along(zoo.cyclic(4), k4, {0: 0, 1: 2})
    with pytest.raises(InvalidInput):
        C.glue_along(k4, k4, {0: 0, 1: 0})


@given(graphs(max_n=6))
@settings(max_examples=30)
def test_disjoint_union_counts(g):
    h = g.relabel({v: v + 100 for v in g.vertices})
    u = C.disjoint_union(g, h)
    assert u.n == 2 * g.n and u.m == 2 * g.m
