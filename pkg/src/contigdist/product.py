"""Categorical products, powers and the map families the TC / scat theorems use.

A vertex of ``K1 x ... x Kn`` is a tuple of factor vertices, indexed in
mixed radix with the first coordinate most significant, so index order is
lexicographic tuple order.  A vertex set is a simplex iff every coordinate
projection is a simplex of its factor; the facets are therefore exactly the
products of factor facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as cartesian

from .complex import MAX_VERTICES, Complex, bits, mask_of
from .errors import IndexOutOfRange, UnknownVertex, VertexBudgetExceeded
from .maps import SimplicialMap


@dataclass(frozen=True)
class ProductComplex:
    factors: tuple[Complex, ...]
    underlying: Complex

    @property
    def arity(self) -> int:
        return len(self.factors)

    def encode(self, coords) -> int:
        idx = 0
        for c, F in zip(coords, self.factors):
            idx = idx * F.n + c
        return idx

    def decode(self, idx: int) -> tuple[int, ...]:
        return decode(idx, [F.n for F in self.factors])

    def is_product_face(self, mask: int) -> bool:
        """Face test straight from the coordinate-projection criterion."""
        if not mask:
            return False
        proj = [0] * self.arity
        for v in bits(mask):
            for i, c in enumerate(self.decode(v)):
                proj[i] |= 1 << c
        return all(F.is_face(p) for F, p in zip(self.factors, proj))


def decode(idx: int, radices) -> tuple[int, ...]:
    out = []
    for r in reversed(radices):
        idx, c = divmod(idx, r)
        out.append(c)
    return tuple(reversed(out))


def tuple_label(parts) -> str:
    return "(" + ",".join(parts) + ")"


@lru_cache(maxsize=64)
def categorical_product(factors: tuple[Complex, ...], max_vertices: int = MAX_VERTICES) -> ProductComplex:
    total = 1
    for F in factors:
        total *= F.n
    if total > max_vertices:
        raise VertexBudgetExceeded("product has %d vertices, cap is %d" % (total, max_vertices))
    radices = [F.n for F in factors]
    labels = [tuple_label(F.labels[c] for F, c in zip(factors, coords))
              for coords in cartesian(*(range(r) for r in radices))]

    def enc(coords):
        idx = 0
        for c, r in zip(coords, radices):
            idx = idx * r + c
        return idx

    facets = []
    for choice in cartesian(*(F.facets for F in factors)):
        facets.append(mask_of(enc(coords) for coords in cartesian(*(bits(f) for f in choice))))
    underlying = Complex(labels, facets, factors=tuple(factors), antichain=True)
    return ProductComplex(tuple(factors), underlying)


def categorical_power(K: Complex, n: int, max_vertices: int = MAX_VERTICES) -> ProductComplex:
    if n < 1:
        raise IndexOutOfRange("power must be at least 1")
    return categorical_product((K,) * n, max_vertices)


def _slot(j: int, n: int):
    if not 1 <= j <= n:
        raise IndexOutOfRange("index %d outside 1..%d" % (j, n))


def projection(P: ProductComplex, i: int) -> SimplicialMap:
    """The ``i``-th coordinate map (1-based)."""
    _slot(i, P.arity)
    images = [P.decode(v)[i - 1] for v in range(P.underlying.n)]
    return SimplicialMap(P.underlying, P.factors[i - 1], images, check=False)


def diagonal(K: Complex, n: int, max_vertices: int = MAX_VERTICES) -> SimplicialMap:
    P = categorical_power(K, n, max_vertices)
    return SimplicialMap(K, P.underlying, [P.encode([v] * n) for v in range(K.n)], check=False)


def _basepoint(K: Complex, v0: str) -> int:
    if v0 not in K.index:
        raise UnknownVertex("unknown basepoint %r" % (v0,))
    return K.index[v0]


def axis_inclusion(K: Complex, n: int, j: int, v0: str, max_vertices: int = MAX_VERTICES) -> SimplicialMap:
    """``v -> (v0, ..., v, ..., v0)`` with ``v`` in slot ``j`` (1-based)."""
    _slot(j, n)
    b = _basepoint(K, v0)
    P = categorical_power(K, n, max_vertices)
    images = []
    for v in range(K.n):
        coords = [b] * n
        coords[j - 1] = v
        images.append(P.encode(coords))
    return SimplicialMap(K, P.underlying, images, check=False)


def slab_inclusion(K: Complex, n: int, j: int, v0: str, max_vertices: int = MAX_VERTICES) -> SimplicialMap:
    """``K^(n-1) -> K^n`` inserting ``v0`` at slot ``j`` (1-based)."""
    if n < 2:
        raise IndexOutOfRange("slab inclusions need n >= 2")
    _slot(j, n)
    b = _basepoint(K, v0)
    src = categorical_power(K, n - 1, max_vertices)
    dst = categorical_power(K, n, max_vertices)
    images = []
    for v in range(src.underlying.n):
        coords = list(src.decode(v))
        coords.insert(j - 1, b)
        images.append(dst.encode(coords))
    return SimplicialMap(src.underlying, dst.underlying, images, check=False)


def factor_map(phi: SimplicialMap, n: int, max_vertices: int = MAX_VERTICES) -> SimplicialMap:
    """``phi x ... x phi : K^n -> L^n`` applied coordinatewise."""
    A = categorical_power(phi.domain, n, max_vertices)
    B = categorical_power(phi.codomain, n, max_vertices)
    images = [B.encode([phi.images[c] for c in A.decode(v)]) for v in range(A.underlying.n)]
    return SimplicialMap(A.underlying, B.underlying, images, check=False)
