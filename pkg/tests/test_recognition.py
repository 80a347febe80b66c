import pytest
from hypothesis import given, settings, strategies as st

from dgraphs import Complex, Graph, InvalidInput, constructions as C, zoo
from dgraphs.complex_core import boundary, unit_sphere, whitney_complex
from dgraphs.recognition import (
    accessibility_failures, cache_disabled, classify_dgraph, clear_caches, dgraph_dimension,
    hamiltonian_precondition, is_ball, is_ball_local, is_contractible, replay_collapse,
    sphere_dimension,
)
from dgraphs.shelling import shelling_for_sphere_or_ball, verify_shelling

from conftest import BALLS, SPHERES, fixture, graphs


# -- contractibility ------------------------------------------------------------------


def test_contractible_examples():
    assert is_contractible(Graph([0])) == []
    for n in range(2, 7):
        seq = is_contractible(zoo.complete(n))
        assert seq is not None and len(seq) == n - 1
    assert is_contractible(zoo.cyclic(4)) is None
    assert is_contractible(Graph()) is None


@pytest.mark.parametrize("name", BALLS + ["diamond", "avici3", "goldner-harary"])
def test_collapse_certificates_replay(name):
    g = fixture(name)
    seq = is_contractible(g)
    assert seq is not None
    assert replay_collapse(g, seq)


def test_replay_rejects_bad_sequence():
    g = zoo.wheel(5)
    # removing the hub first leaves a cycle
    assert not replay_collapse(g, [5, 0, 1, 2, 3])


@given(graphs(max_n=7))
def test_exact_collapse_agrees_with_greedy_when_greedy_succeeds(g):
    greedy = is_contractible(g)
    exact = is_contractible(g, exact=True)
    if greedy is not None:
        assert exact is not None
    if exact is not None:
        assert replay_collapse(g, exact)


# -- spheres --------------------------------------------------------------------------


def test_sphere_dimension_examples():
    assert sphere_dimension(Graph()) == -1
    assert sphere_dimension(Graph([0, 1])) == 0
    for n in (4, 5, 9):
        assert sphere_dimension(zoo.cyclic(n)) == 1
    assert sphere_dimension(zoo.cyclic(3)) is None
    assert sphere_dimension(zoo.octahedron()) == 2
    assert sphere_dimension(zoo.icosahedron()) == 2
    assert sphere_dimension(zoo.cross_polytope(3)) == 3
    assert sphere_dimension(zoo.torus(4, 4)) is None


@pytest.mark.parametrize("name", SPHERES)
def test_sphere_links_and_punctures(name):
    g = fixture(name)
    d = sphere_dimension(g)
    assert d is not None
    for v in g.vertices:
        assert sphere_dimension(unit_sphere(g, v)) == d - 1
        assert is_contractible(g.remove_vertex(v)) is not None


@given(st.integers(0, 12), st.integers(0, 5))
@settings(max_examples=25)
def test_random_refined_spheres_stay_spheres(steps, seed):
    assert sphere_dimension(zoo.random_refined_sphere(2, steps, seed)) == 2


# -- balls -------------------------------------------------------------------------------


def test_ball_examples():
    for n in (4, 5, 8):
        assert is_ball(zoo.wheel(n)) == 2
    assert is_ball(zoo.cyclic(4)) is None
    assert is_ball(C.cone(zoo.octahedron())) == 3


@pytest.mark.parametrize("name", ["cyclic", "octahedron", "icosahedron", "16-cell",
                                  "refined-octahedron"])
def test_ball_tests_agree_on_punctured_spheres(name):
    # both characterisations on every sphere-minus-a-vertex
    g = fixture(name)
    d = sphere_dimension(g)
    for v in g.vertices:
        h = g.remove_vertex(v)
        assert is_ball(h) == d
        assert is_ball_local(h) == d


@given(graphs(max_n=8))
def test_ball_tests_agree_on_random_graphs(g):
    assert is_ball(g) == is_ball_local(g)


@pytest.mark.parametrize("name", BALLS)
def test_ball_boundary_is_sphere_and_cone_closes(name):
    g = fixture(name)
    d = is_ball(g)
    b = boundary(g).graph
    assert sphere_dimension(b) == d - 1
    assert is_ball(C.cone(b)) == d


# -- classification -----------------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(zoo.CATALOG))
def test_catalog_expectations(name):
    e = zoo.CATALOG[name]
    assert classify_dgraph(e.graph()).label == e.expected


def test_classification_examples():
    c = classify_dgraph(zoo.cross_polytope(3))
    assert c.label == "Sphere(3)" and c.has("ClosedDGraph(3)")
    assert classify_dgraph(zoo.goldner_harary(3)).tag == "Other"
    assert classify_dgraph(zoo.diamond()).label == "GeneralizedDGraph(2)"
    assert classify_dgraph(Graph()).tag == "MinusOneSphere"
    assert classify_dgraph(zoo.complete(4)).label == "SimplexGraph(3)"


def test_non_pure_contractible_graph():
    # a triangle with a pendant edge
    g = Graph(range(4), [(0, 1), (1, 2), (0, 2), (2, 3)])
    assert classify_dgraph(g).tag == "Contractible"


@pytest.mark.parametrize("name", sorted(zoo.CATALOG))
def test_tag_inclusions(name):
    c = classify_dgraph(fixture(name))
    if c.tag == "Sphere":
        assert c.has(f"ClosedDGraph({c.dim})")
    if c.tag in ("Sphere", "Ball", "ClosedDGraph", "DGraphWithBoundary"):
        assert c.has(f"GeneralizedDGraph({c.dim})")


def test_stellated_square_fails_accessibility():
    g = zoo.stellated_square()
    assert accessibility_failures(g)
    assert "accessible" in classify_dgraph(g).reason


def test_memo_cache_is_transparent():
    names = ["octahedron", "wheel", "torus", "avici3", "goldner-harary", "moebius", "birkhoff-diamond"]
    clear_caches()
    cached = [classify_dgraph(fixture(n)).to_json() for n in names]
    with cache_disabled():
        plain = [classify_dgraph(fixture(n)).to_json() for n in names]
    assert cached == plain


def test_dgraph_dimension():
    assert dgraph_dimension(zoo.torus(4, 4)) == 2
    assert dgraph_dimension(zoo.wheel(5)) is None


def test_hamiltonian_precondition():
    assert hamiltonian_precondition(zoo.octahedron())[0]
    assert not hamiltonian_precondition(zoo.windmill())[0]
    oct_ = zoo.octahedron()
    two = C.disjoint_union(oct_, oct_.relabel({v: v + 10 for v in oct_.vertices}))
    ok, _ = hamiltonian_precondition(two)
    assert not ok


# -- shellings ----------------------------------------------------------------------------


def test_shelling_examples():
    order = shelling_for_sphere_or_ball(zoo.cyclic(4))
    assert len(order) == 4
    fan = shelling_for_sphere_or_ball(zoo.wheel(5))
    assert len(fan) == 5
    assert verify_shelling(whitney_complex(zoo.wheel(5)), fan)


@pytest.mark.parametrize("name", SPHERES + BALLS)
def test_shelling_verifies(name):
    g = fixture(name)
    order = shelling_for_sphere_or_ball(g)
    assert verify_shelling(whitney_complex(g), order)


def test_shelling_rejects_other_classes():
    with pytest.raises(InvalidInput):
        shelling_for_sphere_or_ball(zoo.torus(4, 4))


def test_verify_shelling_examples():
    single = Complex.from_simplices([(0, 1, 2)])
    assert verify_shelling(single, [(0, 1, 2)])
    windmill = whitney_complex(zoo.windmill())
    assert verify_shelling(windmill, windmill.sorted_facets())
    # the torus fails at some step for every order; the sorted order is one of them
    torus = zoo.torus_complex(3, 3)
    assert not verify_shelling(torus, torus.sorted_facets())
    with pytest.raises(InvalidInput):
        verify_shelling(single, [(0, 1)])
