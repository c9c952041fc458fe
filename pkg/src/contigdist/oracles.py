"""Slow, definition-level reference implementations.

Nothing here shares code with the decision engine: no cores, no product
split, no caches, no backtracking neighbour generator.  Each computation
enumerates *every* vertex function of a (small) domain, keeps the simplicial
ones and searches the full contiguity graph for the classes it needs.  The
test-suite compares the engine with these.
"""

from __future__ import annotations

from itertools import combinations, product

import numpy as np

from .complex import Complex, bits

MAX_FUNCTIONS = 200_000  # vertex functions enumerated per space
MAX_MAPS = 40_000  # simplicial maps kept per space
BLOCK = 512  # frontier rows compared against all maps at once


def _closure(facets) -> frozenset[frozenset[int]]:
    out = set()
    for vs in facets:
        vs = sorted(vs)
        for r in range(1, len(vs) + 1):
            out.update(frozenset(c) for c in combinations(vs, r))
    return frozenset(out)


def all_faces(K: Complex) -> frozenset[frozenset[int]]:
    return _closure(bits(f) for f in K.facets)


def is_simplicial(dom_faces, cod_faces, h) -> bool:
    """Simplicial condition checked on every listed domain face."""
    return all(frozenset(h[v] for v in s) in cod_faces for s in dom_faces)


def contiguous(dom_faces, cod_faces, f, g) -> bool:
    """Contiguity checked on every listed domain face."""
    return all(frozenset([f[v] for v in s] + [g[v] for v in s]) in cod_faces for s in dom_faces)


def _face_table(faces, n: int) -> np.ndarray:
    """Boolean lookup ``table[mask]`` for vertex masks over ``n`` vertices."""
    table = np.zeros(1 << n, dtype=bool)
    for s in faces:
        table[sum(1 << w for w in s)] = True
    return table


class MapSpace:
    """All simplicial maps from the complex generated by ``facets`` into a target.

    ``facets`` are vertex tuples (any integer labels); the target is given by
    its face set and vertex count.  Classes are found by breadth-first search
    over the full contiguity graph, one frontier block against every map at a
    time, and labelled on demand.
    """

    def __init__(self, facets, target_faces, target_n: int):
        self.verts = sorted({v for f in facets for v in f})
        local = {v: i for i, v in enumerate(self.verts)}
        self.facets = sorted({tuple(sorted(local[v] for v in f)) for f in facets})
        k = len(self.verts)
        if target_n ** k > MAX_FUNCTIONS:
            raise ValueError("%d^%d vertex functions exceed the oracle limit" % (target_n, k))
        self._table = _face_table(target_faces, target_n)
        grid = np.array(list(product(range(target_n), repeat=k)), dtype=np.int64).reshape(-1, k)
        one = np.int64(1)
        fmasks = [np.bitwise_or.reduce(one << grid[:, list(f)], axis=1) for f in self.facets]
        ok = np.ones(len(grid), dtype=bool)
        for m in fmasks:
            ok &= self._table[m]
        self.maps = grid[ok]
        if len(self.maps) > MAX_MAPS:
            raise ValueError("%d simplicial maps exceed the oracle limit" % len(self.maps))
        self._fmasks = [m[ok] for m in fmasks]
        self._labels = np.full(len(self.maps), -1, dtype=np.int64)
        self._next = 0
        self._row = {tuple(int(x) for x in r): i for i, r in enumerate(self.maps)}

    def __len__(self):
        return len(self.maps)

    def _neighbours(self, rows: np.ndarray) -> np.ndarray:
        """Maps contiguous to some map in ``rows``: the union of the two images of each facet is a face."""
        hit = np.zeros(len(self.maps), dtype=bool)
        for lo in range(0, len(rows), BLOCK):
            block = rows[lo:lo + BLOCK]
            adj = np.ones((len(block), len(self.maps)), dtype=bool)
            for m in self._fmasks:
                adj &= self._table[m[block][:, None] | m[None, :]]
            hit |= adj.any(axis=0)
        return hit

    def _label_from(self, start: int) -> int:
        if self._labels[start] < 0:
            c = self._next
            self._next += 1
            self._labels[start] = c
            frontier = np.array([start])
            while len(frontier):
                fresh = self._neighbours(frontier) & (self._labels < 0)
                self._labels[fresh] = c
                frontier = np.flatnonzero(fresh)
        return int(self._labels[start])

    @property
    def classes(self) -> np.ndarray:
        for i in range(len(self.maps)):
            self._label_from(i)
        return self._labels

    def class_of(self, assignment: dict) -> int:
        return self._label_from(self._row[tuple(assignment[v] for v in self.verts)])

    def class_members(self, assignment: dict) -> np.ndarray:
        return self.maps[self._labels == self.class_of(assignment)]


def class_partition(K: Complex, L: Complex) -> dict[tuple[int, ...], int]:
    """Contiguity class label of every simplicial map ``K -> L``."""
    space = MapSpace([bits(f) for f in K.facets], all_faces(L), L.n)
    return {tuple(int(x) for x in r): int(c) for r, c in zip(space.maps, space.classes)}


def _min_cover(m: int, good) -> float:
    """Least ``k`` with ``k+1`` good facet groups covering all ``m`` facets.

    ``good`` is called on sorted tuples of facet indices.  Goodness passes to
    subcomplexes, so any cover by good subcomplexes yields one by good facet
    groups (each facet goes to one piece containing it), and a group with a bad
    sub-group is skipped without evaluation.
    """
    known: set[frozenset] = set()
    for r in range(1, m + 1):
        for c in combinations(range(m), r):
            fc = frozenset(c)
            if r > 1 and any(fc - {i} not in known for i in c):
                continue
            if good(c):
                known.add(fc)
    if any(frozenset([i]) not in known for i in range(m)):
        return float("inf")
    maximal = [g for g in known if not any(g < h for h in known)]
    everything = frozenset(range(m))
    for k in range(1, m + 1):
        for combo in combinations(maximal, k):
            if frozenset().union(*combo) == everything:
                return k - 1
    return float("inf")  # unreachable: singletons cover


def power_facets(K: Complex, n: int):
    """``K^n`` as vertex tuples and facet vertex-index tuples (products of facets)."""
    verts = list(product(range(K.n), repeat=n))
    index = {t: i for i, t in enumerate(verts)}
    kfacets = [bits(f) for f in K.facets]
    facets = [tuple(sorted(index[t] for t in product(*choice))) for choice in product(kfacets, repeat=n)]
    return verts, facets


def tc_oracle(K: Complex, n: int = 2) -> float:
    """``TC_n(K)`` from the Farber-subcomplex definition.

    ``Omega`` is ``n``-Farber when some ``s: Omega -> K`` has ``diagonal ∘ s``
    class-equivalent to the inclusion.  A vertex set of ``K^n`` is a simplex
    exactly when each coordinate set is, so maps into ``K^n`` are contiguous
    iff all coordinates are, and chains pad by repeating their last map.
    Hence ``s`` works iff it is equivalent to every restricted projection, and
    such ``s`` exists iff the restricted projections share one class of
    ``Maps(Omega, K)``.  :func:`farber_by_sections` checks the unreduced
    statement directly where the map space is small enough.
    """
    verts, facets = power_facets(K, n)
    kfaces = all_faces(K)

    def good(group):
        space = MapSpace([facets[i] for i in group], kfaces, K.n)
        proj = [{v: verts[v][i] for v in space.verts} for i in range(n)]
        c = space.class_of(proj[0])
        return all(space.class_of(p) == c for p in proj[1:])

    return _min_cover(len(facets), good)


def farber_by_sections(K: Complex, group_facets, n: int = 2) -> bool:
    """Literal Farber test: does the inclusion's class in ``Maps(Omega, K^n)`` hold a diagonal map?

    A map with diagonal values is ``diagonal ∘ s`` for ``s`` its first
    coordinate, so this is exactly the defining condition.
    """
    verts, facets = power_facets(K, n)
    space = MapSpace(group_facets, _closure(facets), len(verts))
    index = {t: i for i, t in enumerate(verts)}
    diag = np.array(sorted(index[(w,) * n] for w in range(K.n)))
    members = space.class_members({v: v for v in space.verts})
    return bool(np.isin(members, diag).all(axis=1).any())


def scat_oracle(K: Complex) -> float:
    """``scat(K)`` from the definition: pieces whose inclusion is equivalent to a constant."""
    kfaces = all_faces(K)
    facets = [tuple(bits(f)) for f in K.facets]

    def good(group):
        space = MapSpace([facets[i] for i in group], kfaces, K.n)
        members = space.class_members({v: v for v in space.verts})
        return bool((members == members[:, :1]).all(axis=1).any())

    return _min_cover(len(facets), good)


def sd_oracle(arrays, K: Complex, L: Complex) -> float:
    """``SD`` of image arrays ``K -> L`` by full enumeration on every facet group."""
    lfaces = all_faces(L)
    facets = [tuple(bits(f)) for f in K.facets]

    def good(group):
        space = MapSpace([facets[i] for i in group], lfaces, L.n)
        return len({space.class_of({v: a[v] for v in space.verts}) for a in arrays}) == 1

    return _min_cover(len(facets), good)


def count_subcomplexes(K: Complex) -> int:
    """Nonempty downward-closed face families, by brute force over face subsets."""
    faces = sorted(all_faces(K), key=lambda s: (len(s), sorted(s)))
    count = 0
    for r in range(1, len(faces) + 1):
        for fam in combinations(faces, r):
            fs = set(fam)
            if all(frozenset(c) in fs for s in fam for k in range(1, len(s)) for c in combinations(s, k)):
                count += 1
    return count
