from itertools import combinations

import pytest
from hypothesis import strategies as st

from contigdist import build_complex, random_simplicial_map
from contigdist.io import bundled_data_dir, parse_complex_file, parse_map_file

DATA = bundled_data_dir()


@pytest.fixture(scope="session")
def fig31():
    return parse_complex_file(DATA / "fig31.cx")


@pytest.fixture(scope="session")
def fig31_maps(fig31):
    return [parse_map_file(DATA / ("fig31_phi%d.map" % i), fig31, fig31) for i in (1, 2, 3)]


@pytest.fixture(scope="session")
def fig32():
    return parse_complex_file(DATA / "fig32.cx")


@pytest.fixture(scope="session")
def fig32_maps(fig32):
    """``id``, ``c0``, ``c1`` and the rotation ``phi`` of the triangle boundary."""
    return {name: parse_map_file(DATA / ("fig32_%s.map" % name), fig32, fig32) for name in ("id", "c0", "c1", "phi")}


@pytest.fixture(scope="session")
def fig33():
    return parse_complex_file(DATA / "fig33.cx")


@pytest.fixture
def edge():
    return build_complex([["0", "1"]])


@pytest.fixture
def two_points():
    return build_complex([["a"], ["b"]])


@st.composite
def complexes(draw, max_vertices=5, max_dim=2):
    """Random complexes on ``0..n-1`` with every vertex used."""
    n = draw(st.integers(1, max_vertices))
    verts = [str(i) for i in range(n)]
    candidates = [c for r in range(1, max_dim + 2) for c in combinations(verts, r)]
    facets = draw(st.lists(st.sampled_from(candidates), min_size=0, max_size=6))
    facets = [list(f) for f in facets] + [[v] for v in verts]
    return build_complex(facets)


@st.composite
def simplicial_maps(draw, K, L):
    """A simplicial map ``K -> L`` by randomised backtracking seeded from hypothesis."""
    return random_simplicial_map(K, L, draw(st.randoms(use_true_random=False)))
