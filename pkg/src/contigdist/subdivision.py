"""First barycentric subdivision of complexes and of simplicial maps."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .complex import MAX_VERTICES, Complex, Subcomplex, bits, simplex_key
from .errors import VertexBudgetExceeded
from .maps import SimplicialMap


@dataclass(frozen=True)
class SubdividedComplex:
    base: Complex
    underlying: Complex
    faces: tuple[int, ...]  # faces[i] = face of base represented by vertex i

    def vertex_of(self, face: int) -> int:
        return self._index[face]

    @property
    def _index(self):
        idx = self.__dict__.get("_idx")
        if idx is None:
            idx = {f: i for i, f in enumerate(self.faces)}
            object.__setattr__(self, "_idx", idx)
        return idx


def face_label(K: Complex, face: int) -> str:
    return "{" + ",".join(K.simplex_labels(face)) + "}"


@lru_cache(maxsize=128)
def barycentric_subdivision(K: Complex, max_vertices: int = MAX_VERTICES) -> SubdividedComplex:
    faces = sorted(K.faces, key=lambda m: (m.bit_count(), simplex_key(m)))
    if len(faces) > max_vertices:
        raise VertexBudgetExceeded("sd K would have %d vertices, cap is %d" % (len(faces), max_vertices))
    index = {f: i for i, f in enumerate(faces)}
    chains = []
    for facet in K.facets:
        for order in permutations(bits(facet)):
            m = 0
            acc = 0
            for v in order:
                acc |= 1 << v
                m |= 1 << index[acc]
            chains.append(m)
    labels = [face_label(K, f) for f in faces]
    return SubdividedComplex(K, Complex(labels, chains, antichain=True), tuple(faces))


def subdivide_map(phi: SimplicialMap, max_vertices: int = MAX_VERTICES) -> SimplicialMap:
    src = barycentric_subdivision(phi.domain, max_vertices)
    dst = barycentric_subdivision(phi.codomain, max_vertices)
    images = [dst.vertex_of(phi.image(face)) for face in src.faces]
    return SimplicialMap(src.underlying, dst.underlying, images, check=False)


def subdivision_staircase(phi: SimplicialMap, psi: SimplicialMap, max_vertices: int = MAX_VERTICES) -> list[SimplicialMap]:
    """A contiguity chain from ``sd phi`` to ``sd psi`` for contiguous ``phi, psi``.

    ``sd phi`` and ``sd psi`` need not be contiguous themselves.  With
    ``H(sigma) = phi(sigma) ∪ psi(sigma)``, the map using ``H`` on the faces of
    dimension ``>= d`` and ``phi`` below is monotone on face chains, hence
    simplicial; lowering ``d`` one step changes it on an antichain, which a
    chain meets at most once, so consecutive maps are contiguous.  The chain
    climbs from ``sd phi`` to ``H`` and back down to ``sd psi``.
    """
    src = barycentric_subdivision(phi.domain, max_vertices)
    dst = barycentric_subdivision(phi.codomain, max_vertices)
    top = max(f.bit_count() for f in src.faces)

    def mixed(other, size):
        return SimplicialMap(src.underlying, dst.underlying, [
            dst.vertex_of(other.image(face) | (phi.image(face) | psi.image(face) if face.bit_count() >= size else 0))
            for face in src.faces])

    up = [mixed(phi, size) for size in range(top + 1, 0, -1)]
    down = [mixed(psi, size) for size in range(1, top + 2)]
    return up + down[1:]


def subdivide_subcomplex(omega: Subcomplex, max_vertices: int = MAX_VERTICES) -> Subcomplex:
    """``sd`` of a subcomplex, as a subcomplex of ``sd`` of the parent."""
    sd = barycentric_subdivision(omega.parent, max_vertices)
    chains = []
    for facet in omega.facets:
        for order in permutations(bits(facet)):
            m = 0
            acc = 0
            for v in order:
                acc |= 1 << v
                m |= 1 << sd.vertex_of(acc)
            chains.append(m)
    return Subcomplex(sd.underlying, chains)
