from itertools import combinations

import pytest
from hypothesis import given, settings

from contigdist import (
    Subcomplex,
    build_complex,
    enumerate_subcomplexes,
    full_simplex,
    is_edge_path_connected,
    point,
    restrict_complex,
)
from contigdist.complex import natural_key
from contigdist.errors import EmptyComplex, EmptyFacet, EnumerationBudgetExceeded, UnknownVertex
from contigdist.oracles import count_subcomplexes

from conftest import complexes


def test_triangle_boundary_has_six_faces(fig32):
    assert fig32.n == 3
    assert len(fig32.faces) == 6
    assert sorted(fig32.facet_label_sets()) == [("0", "1"), ("0", "2"), ("1", "2")]


def test_point_complex():
    K = build_complex([["a"]])
    assert K.n == 1 and len(K.faces) == 1


def test_fig31_counts(fig31):
    # pentagon plus pentagram: 5 vertices, 10 edges
    assert fig31.n == 5
    assert len(fig31.faces) == 15
    assert fig31.dimension == 1


def test_redundant_faces_absorbed():
    K = build_complex([["0", "1"], ["1"], ["0", "1", "2"], ["2"]])
    assert K.facet_label_sets() == [("0", "1", "2")]


def test_errors():
    with pytest.raises(EmptyFacet):
        build_complex([["0"], []])
    with pytest.raises(EmptyComplex):
        build_complex([])


def test_natural_label_order():
    K = build_complex([["10", "2"], ["b", "a"]])
    assert K.labels == ("2", "10", "a", "b")
    assert sorted(["x10", "x9", "x1"], key=natural_key) == ["x1", "x9", "x10"]


def test_connectivity(fig31, fig32, two_points):
    assert is_edge_path_connected(fig32)
    assert is_edge_path_connected(fig31)
    assert not is_edge_path_connected(two_points)


def test_enumerate_induced_triangle(fig32):
    subs = list(enumerate_subcomplexes(fig32, "induced"))
    assert len(subs) == 7


def test_enumerate_all_edge(edge):
    subs = {tuple(s.facet_label_sets()) for s in enumerate_subcomplexes(edge, "all")}
    assert subs == {(("0",),), (("1",),), (("0",), ("1",)), (("0", "1"),)}


def test_u0_only_in_all_mode(fig32):
    u0 = Subcomplex(fig32, [fig32.mask("01"), fig32.mask("02")])
    assert u0 in set(enumerate_subcomplexes(fig32, "all"))
    assert u0 not in set(enumerate_subcomplexes(fig32, "induced"))


def test_enumeration_budget(fig31):
    with pytest.raises(EnumerationBudgetExceeded):
        list(enumerate_subcomplexes(fig31, "all", max_count=10))


def test_restrict(fig31, fig32):
    u1 = restrict_complex(fig32, ["1", "2"])
    assert u1.facet_label_sets() == [("1", "2")]
    assert restrict_complex(fig32, ["0", "1", "2"]).is_full()
    assert restrict_complex(fig31, ["0", "1"]).facet_label_sets() == [("0", "1")]
    with pytest.raises(UnknownVertex):
        restrict_complex(fig32, ["7"])


def test_subcomplex_rejects_foreign_simplex(fig32):
    with pytest.raises(UnknownVertex):
        Subcomplex(fig32, [fig32.mask("012")])


def test_point_and_simplex_helpers():
    assert point().n == 1
    assert len(full_simplex(3).faces) == 7


@given(complexes())
@settings(max_examples=60, deadline=None)
def test_downward_closed_and_antichain(K):
    faces = K.faces
    for f in faces:
        sub = f
        while sub:
            low = sub & -sub
            assert f & ~low == 0 or (f & ~low) in faces
            sub &= sub - 1
    for a, b in combinations(K.facets, 2):
        assert a & b != a and a & b != b
    assert K.fs.support == (1 << K.n) - 1


@given(complexes(max_vertices=4))
@settings(max_examples=40, deadline=None)
def test_all_mode_count_matches_brute_force(K):
    if len(K.faces) > 12:
        return
    assert sum(1 for _ in enumerate_subcomplexes(K, "all")) == count_subcomplexes(K)


@given(complexes())
@settings(max_examples=40, deadline=None)
def test_restriction_faces_exact(K):
    S = [lab for i, lab in enumerate(K.labels) if i % 2 == 0]
    m = K.mask(S)
    sub = restrict_complex(K, S)
    assert sub.faces == {f for f in K.faces if f & ~m == 0}
