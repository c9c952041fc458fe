from itertools import permutations

from hypothesis import given, settings

from contigdist import (
    Subcomplex,
    build_complex,
    constant_map,
    core,
    dominated_vertices,
    full_simplex,
    inclusion,
    is_edge_path_connected,
    is_strongly_collapsible,
    point,
    same_contiguity_class,
)
from contigdist.complex import FacetSet

from conftest import complexes


def test_full_simplex_everything_dominated():
    pairs = dominated_vertices(full_simplex(3))
    assert len(pairs) == 6
    assert is_strongly_collapsible(full_simplex(3))
    assert core(full_simplex(3)).is_point


def test_triangle_boundary_is_its_own_core(fig32):
    assert dominated_vertices(fig32) == []
    assert core(fig32).result == fig32
    assert not is_strongly_collapsible(fig32)


def test_cone_apex_dominates_everything():
    cone = build_complex([["a", "0", "1"], ["a", "1", "2"], ["a", "2", "0"]])
    dominators = {w for v, w in dominated_vertices(cone) if v != "a"}
    assert "a" in dominators
    assert {v for v, w in dominated_vertices(cone) if w == "a"} == {"0", "1", "2"}


def test_u0_collapses(fig32):
    u0 = Subcomplex(fig32, [fig32.mask("01"), fig32.mask("02")]).as_complex()
    assert core(u0).is_point
    assert is_strongly_collapsible(point())


def test_fig33_not_strongly_collapsible(fig33):
    assert dominated_vertices(fig33) == []
    assert not is_strongly_collapsible(fig33)


def test_trace_steps_are_dominations():
    K = build_complex([["0", "1", "2"], ["2", "3"], ["3", "4"]])
    fs = K.fs
    for v, w in core(K).steps:
        iv, iw = K.index[v], K.index[w]
        assert all(f >> iw & 1 for f in fs.star[iv])
        fs = fs.delete_vertex(iv)


@given(complexes(max_vertices=6))
@settings(max_examples=60, deadline=None)
def test_core_idempotent(K):
    c = core(K).result
    assert core(c).result == c
    assert dominated_vertices(c) == []


def _any_order_collapses(fs: FacetSet) -> bool:
    if len(fs.vertices) == 1:
        return True
    return any(_any_order_collapses(fs.delete_vertex(v)) for v, _ in fs.dominated_pairs())


def _all_orders_agree(fs: FacetSet, expected: bool, seen: set) -> bool:
    if fs in seen:
        return True
    seen.add(fs)
    pairs = fs.dominated_pairs()
    if not pairs:
        return (len(fs.vertices) == 1) == expected
    return all(_all_orders_agree(fs.delete_vertex(v), expected, seen) for v in {v for v, _ in pairs})


@given(complexes(max_vertices=6))
@settings(max_examples=60, deadline=None)
def test_collapsibility_independent_of_order(K):
    assert _all_orders_agree(K.fs, is_strongly_collapsible(K), set())


@given(complexes(max_vertices=5))
@settings(max_examples=40, deadline=None)
def test_collapsible_piece_inclusion_is_null(K):
    if not is_edge_path_connected(K):
        return
    for f in K.facets:
        for g in K.facets:
            omega = Subcomplex(K, [f, g])
            if not is_strongly_collapsible(omega.as_complex()):
                continue
            incl = inclusion(omega)
            c = constant_map(incl.domain, K, K.labels[0])
            assert same_contiguity_class(incl, c).equivalent
