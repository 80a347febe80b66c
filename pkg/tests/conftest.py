import os

from hypothesis import HealthCheck, settings, strategies as st

from dgraphs import Graph, zoo

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", deadline=None, max_examples=200)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def graphs(draw, max_n: int = 8, min_n: int = 0) -> Graph:
    """Arbitrary small simple graphs on vertices 0..n-1."""
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(range(n), chosen)


# small fixtures that every module can use
CLOSED = ["cyclic", "octahedron", "16-cell", "icosahedron", "torus", "projective-plane",
          "klein-bottle", "refined-octahedron", "random-refined-sphere"]
SPHERES = ["cyclic", "octahedron", "16-cell", "32-chamber", "icosahedron", "refined-octahedron",
           "random-refined-sphere"]
BALLS = ["wheel", "birkhoff-diamond", "solid-octahedron"]

closed_names = st.sampled_from(CLOSED)
sphere_names = st.sampled_from(SPHERES)


def fixture(name: str) -> Graph:
    return zoo.CATALOG[name].graph()
