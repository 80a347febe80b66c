import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dgraphs import Graph, InvalidInput, zoo
from dgraphs.complex_core import maximal_cliques, unit_sphere
from dgraphs.levelset import (
    PrismBridge, VertexFunction, cut_faces, find_prism_bridge, is_smooth, level_surface,
    midpoints, quadrilateral_bridge, random_function, split,
)
from dgraphs.recognition import sphere_dimension

from conftest import SPHERES, fixture


def height(g: Graph) -> VertexFunction:
    return VertexFunction.of({v: v + 1 for v in g.vertices})


def brute_quadrilaterals(g: Graph, lo, hi):
    """Edges ab in lo and cd in hi with a~c and b~d, by checking all pairs."""
    out = set()
    for (a, b), (c, d) in itertools.product(lo.edges(), hi.edges()):
        for x, y in ((c, d), (d, c)):
            if g.has_edge(a, x) and g.has_edge(b, y):
                out.add(((a, b), (c, d)))
    return out


# -- vertex functions -------------------------------------------------------------------


def test_function_json_round_trip():
    f = VertexFunction.of({0: Fraction(1, 3), 1: 2, 2: "-5/7"})
    assert VertexFunction.from_json(f.to_json()) == f
    assert f.to_json() == {"values": {"0": "1/3", "1": "2", "2": "-5/7"}}


def test_function_json_errors():
    with pytest.raises(InvalidInput):
        VertexFunction.from_json({})
    with pytest.raises(InvalidInput):
        VertexFunction.from_json({"values": {"0": "x"}})


@given(st.integers(0, 50))
def test_random_function_is_locally_injective(seed):
    g = zoo.icosahedron()
    f = random_function(g, seed)
    assert f.is_locally_injective(g)
    assert sorted(f.values()) == list(range(1, 13))


def test_midpoints():
    f = VertexFunction.of({0: 1, 1: 3, 2: 3, 3: 4})
    assert midpoints(f) == [2, Fraction(7, 2)]


# -- level surfaces --------------------------------------------------------------------


def test_level_at_function_value_is_rejected():
    g = zoo.cyclic(4)
    with pytest.raises(InvalidInput):
        level_surface(g, height(g), 2)
    with pytest.raises(InvalidInput):
        split(g, {0: 1}, Fraction(1, 2))


@pytest.mark.parametrize("name", SPHERES)
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_sard_level_surfaces_are_closed_graphs(name, seed):
    # every unit sphere in a level surface of a d-sphere is a (d-2)-sphere
    g = fixture(name)
    f = random_function(g, seed)
    d = sphere_dimension(g)
    for c in midpoints(f):
        s = level_surface(g, f, c).graph
        assert s.n > 0
        for v in s.vertices:
            assert sphere_dimension(unit_sphere(s, v)) == d - 2


def test_level_surface_of_cycle_is_two_points():
    g = zoo.cyclic(6)
    f = height(g)
    ls = level_surface(g, f, Fraction(7, 2))
    assert ls.graph.n == 2 and ls.graph.m == 0
    assert sorted(ls.carrier.values()) == [(0, 5), (2, 3)]
    assert set(ls.to_json()) == {"graph", "carrier"}


def test_octahedron_levels():
    g = zoo.octahedron()
    f = height(g)
    dims = [sphere_dimension(level_surface(g, f, c).graph) for c in midpoints(f)]
    # at 9/2 the level separates the antipodes 4 and 5: two disjoint circles
    assert dims == [1, 1, 1, None, 1]
    assert [is_smooth(g, f, c) for c in midpoints(f)] == [True, True, False, False, True]


@given(st.integers(0, 30))
@settings(max_examples=20)
def test_split_partitions_vertices(seed):
    g = zoo.icosahedron()
    f = random_function(g, seed)
    for c in midpoints(f):
        lo, hi = split(g, f, c)
        assert set(lo.vertices) | set(hi.vertices) == set(g.vertices)
        assert not set(lo.vertices) & set(hi.vertices)
        assert all(f[v] < c for v in lo.vertices) and all(f[v] > c for v in hi.vertices)


# -- smoothness ----------------------------------------------------------------------


def test_smooth_on_one_graph():
    g = zoo.cyclic(7)
    f = random_function(g, 3)
    assert all(is_smooth(g, f, c) for c in midpoints(f))


def test_single_positive_vertex_is_smooth():
    g = zoo.octahedron()
    f = VertexFunction.of({v: (10 if v == 0 else v) for v in g.vertices})
    assert is_smooth(g, f, Fraction(19, 2))


def test_stellated_square_is_not_smooth_at_the_hub():
    g = zoo.stellated_square()
    hub = max(g.vertices, key=lambda v: len(g.neighbors(v)))
    rim = sorted(g.neighbors(hub))
    # alternate signs around the hub split its unit sphere into disconnected pieces
    f = VertexFunction.of({v: (0 if v == hub else (1 if i % 2 else -1))
                           for i, v in enumerate([hub] + rim)} |
                          {v: 2 for v in g.vertices if v != hub and v not in rim})
    assert not is_smooth(g, f, Fraction(1, 2))


@pytest.mark.parametrize("name", ["octahedron", "icosahedron", "refined-octahedron",
                                  "random-refined-sphere"])
@pytest.mark.parametrize("seed", range(3))
def test_level_curves_on_2_spheres_are_circles(name, seed):
    # smoothness is local, so two minima give two circles; each component is one
    g = fixture(name)
    f = random_function(g, seed)
    for c in midpoints(f):
        s = level_surface(g, f, c).graph
        for comp in s.components():
            assert sphere_dimension(s.induced(comp)) == 1


# -- prism bridges ------------------------------------------------------------------


def test_quadrilateral_bridge_on_octahedron():
    g = zoo.octahedron()
    lo, hi = split(g, height(g), Fraction(7, 2))
    quads = brute_quadrilaterals(g, lo, hi)
    assert quads
    for ab, cd in quads:
        b = quadrilateral_bridge(g, ab, cd)
        assert b.quadrilateral_ok(g)
    with pytest.raises(InvalidInput):
        quadrilateral_bridge(zoo.path(4), (0, 1), (2, 3))


@pytest.mark.parametrize("name", ["octahedron", "icosahedron", "refined-octahedron"])
@pytest.mark.parametrize("seed", [0, 1])
def test_bridge_exists_iff_brute_force_finds_a_quadrilateral(name, seed):
    g = fixture(name)
    f = random_function(g, seed)
    found = 0
    for c in midpoints(f):
        lo, hi = split(g, f, c)
        for face in cut_faces(lo, hi, g):
            quads = brute_quadrilaterals(g, lo.induced(face), hi)
            if not quads:
                with pytest.raises(InvalidInput):
                    find_prism_bridge(lo, hi, g, face)
                continue
            b = find_prism_bridge(lo, hi, g, face)
            found += 1
            assert b.quadrilateral_ok(g)
            assert all(v in lo for v in b.face_a) and all(v in hi for v in b.face_b)
            assert b.rewiring[0] in quads
    assert found


def test_cut_faces_are_boundary_faces_of_the_lower_part():
    g = zoo.octahedron()
    f = height(g)
    lo, hi = split(g, f, Fraction(5, 2))
    faces = cut_faces(lo, hi, g)
    d = len(maximal_cliques(g)[0]) - 1
    assert faces and all(len(s) == d for s in faces)
    assert all(lo.induced(s).is_complete() for s in faces)


def test_find_prism_bridge_errors():
    g = zoo.octahedron()
    lo, hi = split(g, height(g), Fraction(7, 2))
    with pytest.raises(InvalidInput):
        find_prism_bridge(lo, hi, g, (hi.vertices[0],))
    iso = Graph([0, 1])
    with pytest.raises(InvalidInput):
        find_prism_bridge(iso.induced([0]), iso.induced([1]), iso, (0,))


def test_bridge_json():
    g = zoo.octahedron()
    lo, hi = split(g, height(g), Fraction(7, 2))
    b = find_prism_bridge(lo, hi, g, cut_faces(lo, hi, g)[0])
    assert isinstance(b, PrismBridge)
    assert set(b.to_json()) == {"face_a", "face_b", "removed", "added"}
