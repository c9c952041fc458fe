"""Finite abstract simplicial complexes stored as facet bit masks.

A simplex is an ``int`` whose set bits are vertex indices.  A complex keeps its
facets (the inclusion-maximal simplices) as the source of truth; the full face
set is materialised lazily because products and subdivisions inflate it.

Vertex labels are arbitrary strings.  Indices are dense, ``0..n-1``, and for
complexes built from labels they follow natural label order ("2" < "10").
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyComplex,
    EmptyFacet,
    EnumerationBudgetExceeded,
    UnknownVertex,
    VertexBudgetExceeded,
)

MAX_VERTICES = 64

_DIGITS = re.compile(r"(\d+)")


def natural_key(label: str):
    parts = _DIGITS.split(label)
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in parts if p != "")


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def simplex_key(mask: int):
    """Canonical (lexicographic on sorted vertices) order of simplices."""
    return tuple(bits(mask))


def maximal(masks: Iterable[int]) -> tuple[int, ...]:
    """Reduce a family of simplices to its antichain of maximal members."""
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return tuple(sorted(kept, key=simplex_key))


def submasks(mask: int) -> Iterator[int]:
    """All nonempty subsets of ``mask``."""
    s = mask
    while s:
        yield s
        s = (s - 1) & mask


class FacetSet:
    """Facet antichain over a fixed index space, with cached queries.

    The vertex support may be a proper subset of the index space; this is how
    subcomplexes and intermediate cores are represented without re-indexing.
    """

    def __init__(self, facets: Sequence[int]):
        self.facets = tuple(facets)
        self.support = 0
        for f in self.facets:
            self.support |= f
        self._face_memo: dict[int, bool] = {}
        self._hash = hash(self.facets)

    def __repr__(self):
        return "FacetSet(%s)" % [simplex_key(f) for f in self.facets]

    def __eq__(self, other):
        return self is other or (isinstance(other, FacetSet) and self._hash == other._hash and self.facets == other.facets)

    def __hash__(self):
        return self._hash

    def is_face(self, mask: int) -> bool:
        r = self._face_memo.get(mask)
        if r is None:
            r = mask != 0 and any(mask & f == mask for f in self.facets)
            if len(self._face_memo) < 1_000_000:
                self._face_memo[mask] = r
        return r

    @cached_property
    def facet_vertices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(f)) for f in self.facets)

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(bits(self.support))

    @cached_property
    def star(self) -> dict[int, tuple[int, ...]]:
        """vertex -> facets containing it."""
        st: dict[int, list[int]] = {v: [] for v in self.vertices}
        for f in self.facets:
            for v in bits(f):
                st[v].append(f)
        return {v: tuple(fs) for v, fs in st.items()}

    @cached_property
    def faces(self) -> frozenset[int]:
        out: set[int] = set()
        for f in self.facets:
            out.update(submasks(f))
        return frozenset(out)

    @cached_property
    def neighbours(self) -> dict[int, int]:
        """vertex -> mask of vertices sharing an edge with it."""
        nb = {v: 0 for v in self.vertices}
        for v, fs in self.star.items():
            m = 0
            for f in fs:
                m |= f
            nb[v] = m & ~(1 << v)
        return nb

    @cached_property
    def components(self) -> tuple[int, ...]:
        """Vertex masks of the edge-path components, ordered by least vertex."""
        seen = 0
        comps = []
        for v in self.vertices:
            if seen >> v & 1:
                continue
            comp = frontier = 1 << v
            while frontier:
                nxt = 0
                for u in bits(frontier):
                    nxt |= self.neighbours[u]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(comp)
        return tuple(comps)

    @cached_property
    def component_of(self) -> dict[int, int]:
        out = {}
        for i, c in enumerate(self.components):
            for v in bits(c):
                out[v] = i
        return out

    def dominated_pairs(self) -> list[tuple[int, int]]:
        """All (v, w), v != w, with w in every facet containing v."""
        out = []
        for v in self.vertices:
            common = self.support
            for f in self.star[v]:
                common &= f
            common &= ~(1 << v)
            for w in bits(common):
                out.append((v, w))
        return out

    def first_dominated(self) -> tuple[int, int] | None:
        for v in self.vertices:
            common = self.support
            for f in self.star[v]:
                common &= f
            common &= ~(1 << v)
            if common:
                return v, (common & -common).bit_length() - 1
        return None

    def delete_vertex(self, v: int) -> "FacetSet":
        """Faces not containing ``v`` (the induced subcomplex on the rest)."""
        b = 1 << v
        return FacetSet(maximal(f & ~b for f in self.facets if f & ~b))

    def induced(self, mask: int) -> "FacetSet":
        return FacetSet(maximal(f & mask for f in self.facets if f & mask))

    def contains(self, other: "FacetSet") -> bool:
        return all(self.is_face(f) for f in other.facets)


class Complex:
    """An abstract simplicial complex with labelled vertices.

    ``labels[i]`` is the label of vertex ``i``; ``facets`` are bit masks in
    canonical order.  Instances are immutable and hashable.
    """

    def __init__(self, labels: Sequence[str], facets: Iterable[int], *, factors=None, antichain: bool = False):
        self.labels = tuple(labels)
        if not self.labels:
            raise EmptyComplex("a complex needs at least one vertex")
        # antichain=True: caller guarantees no facet contains another
        self.fs = FacetSet(tuple(sorted(set(facets), key=simplex_key)) if antichain else maximal(facets))
        if not self.fs.facets:
            raise EmptyComplex("a complex needs at least one facet")
        if self.fs.support != (1 << len(self.labels)) - 1:
            missing = [self.labels[i] for i in range(len(self.labels)) if not self.fs.support >> i & 1]
            raise UnknownVertex("vertices %s lie in no facet" % ",".join(missing))
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self.index) != len(self.labels):
            raise ValueError("duplicate vertex labels")
        # set by categorical_power: factor complexes for mixed-radix indices
        self.factors = factors

    @property
    def facets(self) -> tuple[int, ...]:
        return self.fs.facets

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def faces(self) -> frozenset[int]:
        return self.fs.faces

    def is_face(self, mask: int) -> bool:
        return self.fs.is_face(mask)

    def __eq__(self, other):
        return isinstance(other, Complex) and self.labels == other.labels and self.facets == other.facets

    def __hash__(self):
        return hash((self.labels, self.facets))

    def __repr__(self):
        return "Complex(%s)" % ", ".join("{%s}" % ",".join(self.simplex_labels(f)) for f in self.facets)

    def simplex_labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise UnknownVertex("unknown vertex %r" % (lab,)) from None
        return m

    def facet_label_sets(self) -> list[tuple[str, ...]]:
        return [self.simplex_labels(f) for f in self.facets]

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    def whole(self) -> "Subcomplex":
        return Subcomplex(self, self.facets)


class Subcomplex:
    """A subcomplex of ``parent`` given by an antichain of its faces.

    Vertex indices are those of the parent, so maps on the parent restrict
    without re-indexing.
    """

    def __init__(self, parent: Complex, facets: Iterable[int]):
        self.parent = parent
        self.fs = FacetSet(maximal(facets))
        if not self.fs.facets:
            raise EmptyComplex("subcomplexes are nonempty")
        for f in self.fs.facets:
            if not parent.is_face(f):
                raise UnknownVertex(
                    "{%s} is not a simplex of the parent" % ",".join(parent.simplex_labels(f))
                    if f < (1 << parent.n)
                    else "simplex uses vertices outside the parent"
                )

    @property
    def facets(self) -> tuple[int, ...]:
        return self.fs.facets

    @property
    def support(self) -> int:
        return self.fs.support

    @property
    def faces(self) -> frozenset[int]:
        return self.fs.faces

    def __eq__(self, other):
        return isinstance(other, Subcomplex) and self.parent == other.parent and self.facets == other.facets

    def __hash__(self):
        return hash((self.parent, self.facets))

    def __repr__(self):
        return "Subcomplex(%s)" % ", ".join(
            "{%s}" % ",".join(self.parent.simplex_labels(f)) for f in self.facets
        )

    def facet_label_sets(self) -> list[tuple[str, ...]]:
        return [self.parent.simplex_labels(f) for f in self.facets]

    @cached_property
    def vertex_indices(self) -> tuple[int, ...]:
        return tuple(bits(self.support))

    def as_complex(self) -> Complex:
        """Re-indexed standalone complex (labels keep the parent's order)."""
        old = self.vertex_indices
        new_of = {v: i for i, v in enumerate(old)}
        facets = [mask_of(new_of[v] for v in bits(f)) for f in self.facets]
        return Complex([self.parent.labels[v] for v in old], facets)

    def is_full(self) -> bool:
        return self.facets == self.parent.facets


def build_complex(facets: Iterable[Iterable[str]], *, max_vertices: int | None = None) -> Complex:
    """Canonical complex from facet label sets; redundant faces are absorbed."""
    label_sets = []
    for f in facets:
        s = {str(x) for x in f}
        if not s:
            raise EmptyFacet("facets must be nonempty")
        label_sets.append(s)
    if not label_sets:
        raise EmptyComplex("no facets given")
    labels = sorted(set().union(*label_sets), key=natural_key)
    if max_vertices is not None and len(labels) > max_vertices:
        raise VertexBudgetExceeded("%d vertices exceed the cap of %d" % (len(labels), max_vertices))
    index = {lab: i for i, lab in enumerate(labels)}
    return Complex(labels, [mask_of(index[x] for x in s) for s in label_sets])


def is_edge_path_connected(K: Complex) -> bool:
    return len(K.fs.components) == 1


def restrict_complex(K: Complex, S: Iterable[str]) -> Subcomplex:
    """Induced subcomplex on the vertex labels ``S``."""
    m = K.mask(S)
    if not m:
        raise EmptyComplex("restriction to an empty vertex set")
    return Subcomplex(K, K.fs.induced(m).facets)


def _antichains(faces: list[int], start: int, chosen: list[int]) -> Iterator[list[int]]:
    for i in range(start, len(faces)):
        f = faces[i]
        if any(f & c == f or f & c == c for c in chosen):
            continue
        chosen.append(f)
        yield chosen
        yield from _antichains(faces, i + 1, chosen)
        chosen.pop()


def enumerate_subcomplexes(K: Complex, mode: str = "all", max_count: int = 100_000) -> Iterator[Subcomplex]:
    """Stream the nonempty subcomplexes of ``K``.

    ``mode="induced"`` yields one induced subcomplex per nonempty vertex subset
    (in increasing bit-mask order); ``mode="all"`` yields every downward-closed
    family as an antichain of faces.  Raises :class:`EnumerationBudgetExceeded`
    once more than ``max_count`` items would be produced.
    """
    count = 0
    if mode == "induced":
        for m in range(1, 1 << K.n):
            count += 1
            if count > max_count:
                raise EnumerationBudgetExceeded("more than %d induced subcomplexes" % max_count)
            yield Subcomplex(K, K.fs.induced(m).facets)
    elif mode == "all":
        faces = sorted(K.faces, key=lambda m: (m.bit_count(), simplex_key(m)))
        for chain in _antichains(faces, 0, []):
            count += 1
            if count > max_count:
                raise EnumerationBudgetExceeded("more than %d subcomplexes" % max_count)
            yield Subcomplex(K, list(chain))
    else:
        raise ValueError("mode must be 'all' or 'induced'")


def point() -> Complex:
    return build_complex([["0"]])


def full_simplex(n_vertices: int) -> Complex:
    return build_complex([[str(i) for i in range(n_vertices)]])


def boundary_of_simplex(n_vertices: int) -> Complex:
    vs = [str(i) for i in range(n_vertices)]
    return build_complex(list(combinations(vs, n_vertices - 1)))
