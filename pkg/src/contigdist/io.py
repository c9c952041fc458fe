"""Plain-text formats for complexes and maps.

Complex files hold one facet per line as comma-separated vertex labels::

    # the boundary of a triangle
    0,1
    0,2
    1,2

Map files hold one ``label -> label`` assignment per line.  In both formats
``#`` starts a comment and blank lines are ignored.  The emitters write the
canonical form (natural label order, canonical facet order, no comments), and
parsing a canonical file then emitting it reproduces it byte for byte.
"""

from __future__ import annotations

import os
from pathlib import Path

from .complex import Complex, build_complex
from .errors import EmptyComplex, MissingVertex, ParseError, UnknownVertex
from .maps import SimplicialMap, build_map


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield lineno, raw, body


def _label(raw: str, start: int, end: int, lineno: int, path) -> str:
    tok = raw[start:end]
    lab = tok.strip()
    col = start + 1 + (len(tok) - len(tok.lstrip()))
    if not lab:
        raise ParseError("empty vertex label", lineno, start + 1, path)
    if any(c.isspace() for c in lab) or "->" in lab:
        raise ParseError("vertex label %r contains whitespace or '->'" % lab, lineno, col, path)
    return lab


def parse_complex_text(text: str, path=None, *, max_vertices: int | None = None) -> Complex:
    facets = []
    for lineno, raw, body in _lines(text):
        labels = []
        start = 0
        for i, ch in enumerate(body + ","):
            if ch == ",":
                labels.append(_label(body, start, i, lineno, path))
                start = i + 1
        if len(set(labels)) != len(labels):
            raise ParseError("repeated vertex in facet", lineno, 1, path)
        facets.append(labels)
    if not facets:
        raise EmptyComplex("%s: no facets" % (path or "input"))
    return build_complex(facets, max_vertices=max_vertices)


def parse_complex_file(path, *, max_vertices: int | None = None) -> Complex:
    return parse_complex_text(Path(path).read_text(), str(path), max_vertices=max_vertices)


def parse_map_text(text: str, domain: Complex, codomain: Complex, path=None) -> SimplicialMap:
    assignment: dict[str, str] = {}
    for lineno, raw, body in _lines(text):
        if body.count("->") != 1:
            raise ParseError("expected 'label -> label'", lineno, 1, path)
        arrow = body.index("->")
        src = _label(body, 0, arrow, lineno, path)
        dst = _label(body, arrow + 2, len(body), lineno, path)
        if src in assignment:
            raise ParseError("vertex %r assigned twice" % src, lineno, 1, path)
        if src not in domain.index:
            raise UnknownVertex("%s:%d: %r is not a domain vertex" % (path or "input", lineno, src))
        assignment[src] = dst
    missing = [lab for lab in domain.labels if lab not in assignment]
    if missing:
        raise MissingVertex("%s: no image given for vertex %r" % (path or "input", missing[0]))
    return build_map(domain, codomain, assignment)


def parse_map_file(path, domain: Complex, codomain: Complex) -> SimplicialMap:
    return parse_map_text(Path(path).read_text(), domain, codomain, str(path))


def emit_complex(K: Complex) -> str:
    return "".join(",".join(labels) + "\n" for labels in K.facet_label_sets())


def emit_map(phi: SimplicialMap) -> str:
    return "".join("%s -> %s\n" % kv for kv in phi.label_table().items())


def write_text(path, text: str):
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_text(text)


def bundled_data_dir() -> Path:
    """Directory holding the worked-example complexes and maps shipped with the package."""
    return Path(os.path.dirname(__file__)) / "data"
