import pytest
from hypothesis import given, settings, strategies as st

from dgraphs import InvalidInput, constructions as C, zoo
from dgraphs.complex_core import boundary, euler_characteristic, maximal_cliques
from dgraphs.recognition import classify_dgraph, is_ball, sphere_dimension


@pytest.mark.parametrize("name", sorted(zoo.CATALOG))
def test_generators_are_deterministic(name):
    assert zoo.CATALOG[name].graph() == zoo.CATALOG[name].graph()


@given(st.integers(0, 30), st.integers(0, 1000))
@settings(max_examples=20)
def test_random_sphere_is_seeded(steps, seed):
    a = zoo.random_refined_sphere(2, steps, seed)
    assert a == zoo.random_refined_sphere(2, steps, seed)
    assert a.n == 6 + steps


@pytest.mark.parametrize("call", [
    lambda: zoo.cyclic(2), lambda: zoo.wheel(3), lambda: zoo.complete(0),
    lambda: zoo.cross_polytope(0), lambda: zoo.goldner_harary(5), lambda: zoo.avici(0),
    lambda: zoo.klein_bottle(2, 3), lambda: zoo.random_refined_sphere(2, -1),
    lambda: zoo.generate("no-such-graph"),
])
def test_parameter_errors(call):
    with pytest.raises(InvalidInput):
        call()


def test_goldner_harary_sizes():
    g = zoo.goldner_harary(3)
    assert g.n == 11
    assert len(maximal_cliques(g)) == 2 + 6
    assert zoo.goldner_harary(4).n == 14


def test_birkhoff_diamond():
    g = zoo.birkhoff_diamond()
    assert is_ball(g) == 2
    b = boundary(g)
    assert sphere_dimension(b.graph) == 1 and b.graph.n == 6
    assert set(g.vertices) - set(b.vertices) == {0, 5}


def test_cross_polytope_sizes():
    for d in range(1, 5):
        g = zoo.cross_polytope(d)
        assert g.n == 2 * d + 2 and sphere_dimension(g) == d


def test_surfaces_have_the_right_euler_characteristic():
    assert euler_characteristic(zoo.torus(4, 4)) == 0
    assert euler_characteristic(zoo.projective_plane()) == 1
    assert euler_characteristic(zoo.projective_plane(refined=True)) == 1
    assert euler_characteristic(zoo.klein_bottle()) == 0
    assert zoo.projective_plane().n == 13 and zoo.klein_bottle().n == 16


def test_moebius_and_cylinder_boundaries():
    m = zoo.moebius_strip(7)
    assert boundary(m).graph.is_connected() and set(boundary(m).vertices) == set(m.vertices)
    cyl = zoo.cylinder(8)
    assert len(boundary(cyl).graph.components()) == 2


def test_random_refined_ball():
    g = zoo.random_refined_ball(3, 5, 1)
    assert is_ball(g) == 3


def test_generate_uses_catalog_defaults():
    assert zoo.generate("cyclic") == zoo.cyclic(5)
    assert zoo.generate("cyclic", 7) == zoo.cyclic(7)


def test_solid_octahedron_is_cone():
    assert zoo.CATALOG["solid-octahedron"].graph() == C.cone(zoo.octahedron())


def test_functions_table_covers_catalog_builders():
    for name in ("cyclic", "wheel", "torus", "goldner_harary", "random_refined_sphere"):
        assert name in zoo.FUNCTIONS


@pytest.mark.parametrize("name", sorted(zoo.CATALOG))
def test_catalog_labels(name):
    e = zoo.CATALOG[name]
    assert e.expected
    assert classify_dgraph(e.graph()).label == e.expected
