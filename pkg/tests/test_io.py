import pytest
from hypothesis import given, settings, strategies as st

from contigdist import build_complex, constant_map, full_simplex, point
from contigdist.errors import EmptyComplex, MissingVertex, NotSimplicial, ParseError, UnknownVertex
from contigdist.io import (
    bundled_data_dir,
    emit_complex,
    emit_map,
    parse_complex_file,
    parse_complex_text,
    parse_map_file,
    parse_map_text,
)

from conftest import complexes, simplicial_maps


def test_triangle_boundary(fig32):
    assert parse_complex_text("0,1\n0,2\n1,2\n") == fig32


def test_point_and_absorbed_facet():
    assert parse_complex_text("a\n") == build_complex([["a"]])
    assert parse_complex_text("0\n") == point()
    assert parse_complex_text("0,1\n1\n") == full_simplex(2)


def test_comments_and_blank_lines(fig32):
    assert parse_complex_text("# boundary\n\n0,1  # an edge\n 0 , 2\n1,2\n") == fig32


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as e:
        parse_complex_text("0,1\n0,,2\n")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(ParseError) as e:
        parse_complex_text("0,1\n1,a b\n")
    assert e.value.line == 2 and e.value.column == 3
    with pytest.raises(ParseError):
        parse_complex_text("0,0\n")
    with pytest.raises(EmptyComplex):
        parse_complex_text("# nothing\n\n")


def test_map_phi(fig32, fig32_maps):
    assert parse_map_text("0 -> 1\n1 -> 2\n2 -> 0\n", fig32, fig32) == fig32_maps["phi"]
    assert parse_map_text("0->0\n1->0\n2->0\n", fig32, fig32) == constant_map(fig32, fig32, "0")


def test_map_errors(fig32):
    with pytest.raises(MissingVertex):
        parse_map_text("0 -> 1\n1 -> 2\n", fig32, fig32)
    with pytest.raises(ParseError) as e:
        parse_map_text("0 -> 1\n0 -> 2\n1 -> 1\n2 -> 1\n", fig32, fig32)
    assert e.value.line == 2
    with pytest.raises(ParseError):
        parse_map_text("0 1\n", fig32, fig32)
    with pytest.raises(UnknownVertex):
        parse_map_text("7 -> 1\n", fig32, fig32)
    with pytest.raises(UnknownVertex):
        parse_map_text("0 -> 7\n1 -> 1\n2 -> 1\n", fig32, fig32)
    tri = full_simplex(3)
    with pytest.raises(NotSimplicial) as e:
        parse_map_text("0 -> 0\n1 -> 1\n2 -> 2\n", tri, fig32)
    assert e.value.face


def test_bundled_examples(fig31, fig32, fig33, fig31_maps, fig32_maps):
    d = bundled_data_dir()
    assert parse_complex_file(d / "fig31.cx") == fig31
    assert parse_complex_file(d / "fig32.cx") == fig32
    assert parse_complex_file(d / "fig33.cx") == fig33
    assert [parse_map_file(d / ("fig31_phi%d.map" % i), fig31, fig31) for i in (1, 2, 3)] == list(fig31_maps)
    for name, m in fig32_maps.items():
        assert parse_map_file(d / ("fig32_%s.map" % name), fig32, fig32) == m


@given(complexes(max_vertices=6))
@settings(max_examples=60, deadline=None)
def test_complex_round_trip(K):
    text = emit_complex(K)
    assert parse_complex_text(text) == K
    assert emit_complex(parse_complex_text(text)) == text


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_map_round_trip(data):
    K = data.draw(complexes(max_vertices=5))
    L = data.draw(complexes(max_vertices=5))
    f = data.draw(simplicial_maps(K, L))
    text = emit_map(f)
    assert parse_map_text(text, K, L) == f
    assert emit_map(parse_map_text(text, K, L)) == text


def test_file_round_trip(tmp_path, fig33):
    p = tmp_path / "k.cx"
    p.write_text(emit_complex(fig33))
    assert p.read_text() == emit_complex(parse_complex_file(p))
