"""Simplicial maps stored as dense vertex arrays."""

from __future__ import annotations

import random
from typing import Iterator, Mapping

from .complex import Complex, Subcomplex, bits, maximal, submasks
from .errors import DomainMismatch, MissingVertex, NotASubcomplex, NotSimplicial, UnknownVertex


def image_mask(images, mask: int) -> int:
    out = 0
    for v in bits(mask):
        out |= 1 << images[v]
    return out


class SimplicialMap:
    """A vertex map ``domain -> codomain`` carrying simplices to simplices.

    ``images[i]`` is the codomain index of domain vertex ``i``.  Two maps are
    equal when they share domain, codomain and array.
    """

    __slots__ = ("domain", "codomain", "images", "_hash")

    def __init__(self, domain: Complex, codomain: Complex, images, *, check: bool = True):
        self.domain = domain
        self.codomain = codomain
        self.images = tuple(images)
        self._hash = None
        if check:
            if len(self.images) != domain.n:
                raise MissingVertex("map must assign every domain vertex")
            for w in self.images:
                if not 0 <= w < codomain.n:
                    raise UnknownVertex("image index %r outside the codomain" % (w,))
            bad = first_non_simplicial(domain, codomain, self.images)
            if bad is not None:
                raise NotSimplicial(domain.simplex_labels(bad), codomain.simplex_labels(image_mask(self.images, bad)))

    def __call__(self, v: int) -> int:
        return self.images[v]

    def image(self, mask: int) -> int:
        return image_mask(self.images, mask)

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.images == other.images
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.images, self.domain, self.codomain))
        return self._hash

    def __repr__(self):
        return "SimplicialMap(%s)" % ", ".join("%s->%s" % kv for kv in self.label_table().items())

    def label_table(self) -> dict[str, str]:
        return {self.domain.labels[i]: self.codomain.labels[w] for i, w in enumerate(self.images)}


def first_non_simplicial(domain: Complex, codomain: Complex, images) -> int | None:
    """First domain facet whose image is not a codomain face, else ``None``."""
    for f in domain.facets:
        if not codomain.is_face(image_mask(images, f)):
            return f
    return None


def build_map(domain: Complex, codomain: Complex, assignment: Mapping[str, str]) -> SimplicialMap:
    images = []
    for lab in domain.labels:
        if lab not in assignment:
            raise MissingVertex("no image given for vertex %r" % lab)
        target = assignment[lab]
        if target not in codomain.index:
            raise UnknownVertex("image %r of %r is not a codomain vertex" % (target, lab))
        images.append(codomain.index[target])
    extra = set(assignment) - set(domain.labels)
    if extra:
        raise UnknownVertex("assignment names non-domain vertices %s" % sorted(extra))
    return SimplicialMap(domain, codomain, images)


def identity(K: Complex) -> SimplicialMap:
    return SimplicialMap(K, K, range(K.n), check=False)


def constant_map(domain: Complex, codomain: Complex, v0: str) -> SimplicialMap:
    if v0 not in codomain.index:
        raise UnknownVertex("unknown basepoint %r" % (v0,))
    return SimplicialMap(domain, codomain, [codomain.index[v0]] * domain.n, check=False)


def _check_sub(phi: SimplicialMap, omega: Subcomplex):
    if omega.parent != phi.domain:
        raise NotASubcomplex("subcomplex does not live in the map's domain")


def inclusion(omega: Subcomplex) -> SimplicialMap:
    sub = omega.as_complex()
    return SimplicialMap(sub, omega.parent, omega.vertex_indices, check=False)


def restrict_map(phi: SimplicialMap, omega: Subcomplex) -> SimplicialMap:
    _check_sub(phi, omega)
    return SimplicialMap(omega.as_complex(), phi.codomain, [phi.images[v] for v in omega.vertex_indices], check=False)


def compose(psi: SimplicialMap, phi: SimplicialMap) -> SimplicialMap:
    """``psi ∘ phi``."""
    if phi.codomain != psi.domain:
        raise DomainMismatch("codomain of the inner map is not the domain of the outer map")
    return SimplicialMap(phi.domain, psi.codomain, [psi.images[w] for w in phi.images], check=False)


def preimage_subcomplex(phi: SimplicialMap, omega: Subcomplex) -> Subcomplex | None:
    """Faces of the domain whose image lies in ``omega``; ``None`` if there are none."""
    if omega.parent != phi.codomain:
        raise NotASubcomplex("subcomplex does not live in the map's codomain")
    keep = []
    for f in phi.domain.facets:
        img = phi.image(f)
        if omega.fs.is_face(img):
            keep.append(f)
            continue
        keep.extend(s for s in submasks(f) if omega.fs.is_face(phi.image(s)))
    if not keep:
        return None
    return Subcomplex(phi.domain, maximal(keep))


def iter_simplicial_maps(K: Complex, L: Complex, limit: int | None = None) -> Iterator[SimplicialMap]:
    """All simplicial maps ``K -> L`` in lexicographic order of image arrays."""
    count = 0
    for images in _iter_arrays(K, L):
        yield SimplicialMap(K, L, images, check=False)
        count += 1
        if limit is not None and count >= limit:
            return


def _iter_arrays(K: Complex, L: Complex) -> Iterator[tuple[int, ...]]:
    n = K.n
    # facets that become fully assigned once vertex i is set
    closing: list[list[int]] = [[] for _ in range(n)]
    for f in K.facets:
        closing[max(bits(f))].append(f)
    images = [0] * n

    def rec(i):
        if i == n:
            yield tuple(images)
            return
        for w in range(L.n):
            images[i] = w
            if all(L.is_face(image_mask(images, f)) for f in closing[i]):
                yield from rec(i + 1)

    yield from rec(0)


def random_simplicial_map(K: Complex, L: Complex, rng: random.Random) -> SimplicialMap:
    """A random simplicial map, drawn by randomised backtracking.

    Every simplicial map has positive probability; the distribution is not
    uniform.  A constant map always exists, so this never fails.
    """
    n = K.n
    closing: list[list[int]] = [[] for _ in range(n)]
    for f in K.facets:
        closing[max(bits(f))].append(f)
    images = [0] * n

    def rec(i):
        if i == n:
            return True
        order = list(range(L.n))
        rng.shuffle(order)
        for w in order:
            images[i] = w
            if all(L.is_face(image_mask(images, f)) for f in closing[i]) and rec(i + 1):
                return True
        return False

    rec(0)
    return SimplicialMap(K, L, images, check=False)
