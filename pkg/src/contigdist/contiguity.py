"""Contiguity of simplicial maps and exact contiguity-class decisions.

Two maps are in the same class when a chain of pairwise contiguous maps links
them.  The decision explores the contiguity graph breadth-first, so a
``NotEquivalent`` verdict is only ever issued after the start map's whole
connected component has been exhausted (or from a component argument on the
codomain, see below), and ``Equivalent`` verdicts carry a replayable chain.
With ``reduce=False`` that chain is a shortest one; the reductions below
trade minimality for a much smaller search space.

Three reductions keep the map space small; each preserves the relation and
each lifts certificates back to the original maps:

* domain core: if ``v`` is dominated by ``w`` in the domain, the retraction
  ``v -> w`` is contiguous to the identity, so ``f ~ g`` iff their
  restrictions to the domain minus ``v`` are related;
* codomain core: dually, ``f ~ g`` iff ``r∘f ~ r∘g`` for the retraction ``r``
  deleting a dominated codomain vertex;
* products: contiguity into a categorical product holds coordinatewise, so a
  decision into ``K1 x ... x Kn`` splits into one decision per factor.

Internally a map is a tuple over the domain's index space with ``-1`` at
indices outside the domain's support; this lets subcomplexes of a fixed
parent share one indexing.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from .complex import Complex, FacetSet, bits
from .collapse import core_steps
from .errors import DomainMismatch, NeighborBudgetExceeded
from .maps import SimplicialMap
from .product import decode

EQUIVALENT = "Equivalent"
NOT_EQUIVALENT = "NotEquivalent"
UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Budget:
    max_visits: int = 1_000_000
    max_chain: int | None = None
    max_neighbors: int = 1_000_000

    def to_dict(self):
        return {"max_visits": self.max_visits, "max_chain": self.max_chain, "max_neighbors": self.max_neighbors}


@dataclass(frozen=True)
class ContiguityCertificate:
    chain: tuple[SimplicialMap, ...]

    def __len__(self):
        return len(self.chain)

    def replays(self) -> bool:
        return all(is_contiguous(a, b) for a, b in zip(self.chain, self.chain[1:]))


@dataclass
class ClassDecision:
    verdict: str
    certificate: ContiguityCertificate | None
    explored: int
    budget: Budget
    reason: str = ""

    @property
    def equivalent(self) -> bool:
        return self.verdict == EQUIVALENT


# ---------------------------------------------------------------- primitives

def image(h: Sequence[int], verts: Sequence[int]) -> int:
    m = 0
    for v in verts:
        m |= 1 << h[v]
    return m


def arrays_contiguous(dom: FacetSet, cod: FacetSet, f, g) -> bool:
    for verts in dom.facet_vertices:
        m = 0
        for v in verts:
            m |= (1 << f[v]) | (1 << g[v])
        if not cod.is_face(m):
            return False
    return True


def arrays_simplicial(dom: FacetSet, cod: FacetSet, f) -> bool:
    return all(cod.is_face(image(f, verts)) for verts in dom.facet_vertices)


def neighbour_arrays(dom: FacetSet, cod: FacetSet, f, limit: int | None = None) -> list[tuple[int, ...]]:
    """All maps contiguous to ``f`` (``f`` included), in lexicographic order.

    Each vertex gets a candidate list first (its image must keep every facet
    through it a face when joined with ``f``'s image), then a backtracking pass
    checks the joint condition facet by facet.
    """
    verts = dom.vertices
    facet_index = {fa: i for i, fa in enumerate(dom.facets)}
    star = {v: [facet_index[fa] for fa in dom.star[v]] for v in verts}
    base = [image(f, fv) for fv in dom.facet_vertices]
    cand = {}
    for v in verts:
        cand[v] = [w for w in cod.vertices if all(cod.is_face(base[i] | (1 << w)) for i in star[v])]
    acc = list(base)
    h = list(f)
    out: list[tuple[int, ...]] = []

    def rec(k):
        if k == len(verts):
            out.append(tuple(h))
            if limit is not None and len(out) > limit:
                raise NeighborBudgetExceeded("more than %d contiguous neighbours" % limit)
            return
        v = verts[k]
        saved = [acc[i] for i in star[v]]
        for w in cand[v]:
            b = 1 << w
            ok = True
            for i in star[v]:
                m = acc[i] | b
                if not cod.is_face(m):
                    ok = False
                    break
            if not ok:
                continue
            for i in star[v]:
                acc[i] |= b
            h[v] = w
            rec(k + 1)
            for i, s in zip(star[v], saved):
                acc[i] = s
        h[v] = f[v]

    rec(0)
    return out


# ------------------------------------------------------------------- engine

@dataclass
class _Outcome:
    verdict: str
    chain: list | None
    explored: int
    reason: str = ""


def _dedupe(chain):
    out = []
    for c in chain:
        if not out or out[-1] != c:
            out.append(c)
    return out


@dataclass
class Decider:
    """Class-decision engine with caches shared across many queries.

    One instance should be reused for all goodness checks of a distance
    computation: cores and exhausted components are cached per domain piece.
    """

    budget: Budget = field(default_factory=Budget)
    reduce: bool = True
    _dom_cores: dict = field(default_factory=dict)
    _cod_cores: dict = field(default_factory=dict)
    _memo: dict = field(default_factory=dict)
    _components: dict = field(default_factory=dict)
    visits: int = 0

    # -- public-ish entry point over raw arrays
    def decide(self, dom: FacetSet, cod: FacetSet, f, g, factors=None) -> _Outcome:
        f = tuple(f)
        g = tuple(g)
        if f == g:
            return _Outcome(EQUIVALENT, [f], 0, "identical")
        if factors:
            return self._split(dom, factors, f, g)
        comp = cod.component_of
        for v in dom.vertices:
            if comp[f[v]] != comp[g[v]]:
                return _Outcome(NOT_EQUIVALENT, None, 0, "codomain components differ")
        key = (dom, cod, f, g)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if self.reduce:
            out = self._reduced(dom, cod, f, g)
        else:
            out = self._bfs(dom, cod, f, g)
        self._memo[key] = out
        return out

    def _split(self, dom, factors, f, g) -> _Outcome:
        radices = [F.n for F in factors]
        fc = {v: decode(f[v], radices) for v in dom.vertices}
        gc = {v: decode(g[v], radices) for v in dom.vertices}
        n = len(f)
        chains = []
        explored = 0
        verdict = EQUIVALENT
        for i, F in enumerate(factors):
            fi = [-1] * n
            gi = [-1] * n
            for v in dom.vertices:
                fi[v] = fc[v][i]
                gi[v] = gc[v][i]
            r = self.decide(dom, F.fs, fi, gi, F.factors)
            explored += r.explored
            if r.verdict == NOT_EQUIVALENT:
                return _Outcome(NOT_EQUIVALENT, None, explored, "coordinate %d: %s" % (i + 1, r.reason))
            if r.verdict == UNKNOWN:
                verdict = UNKNOWN
            else:
                chains.append(r.chain)
        if verdict == UNKNOWN:
            return _Outcome(UNKNOWN, None, explored, "budget exhausted in a coordinate")
        length = max(len(c) for c in chains)
        combined = []
        for t in range(length):
            h = [-1] * n
            for v in dom.vertices:
                idx = 0
                for c, r in zip(chains, radices):
                    idx = idx * r + c[min(t, len(c) - 1)][v]
                h[v] = idx
            combined.append(tuple(h))
        return _Outcome(EQUIVALENT, _dedupe(combined), explored, "coordinatewise")

    def _dom_core(self, dom: FacetSet):
        hit = self._dom_cores.get(dom)
        if hit is None:
            steps, core = core_steps(dom)
            hit = self._dom_cores[dom] = (steps, core)
        return hit

    def _cod_core(self, cod: FacetSet):
        hit = self._cod_cores.get(cod)
        if hit is None:
            steps, core = core_steps(cod)
            # rho_t as a dict for each prefix of the collapse sequence
            rhos = []
            cur = {v: v for v in cod.vertices}
            for x, y in steps:
                cur = {v: (y if w == x else w) for v, w in cur.items()}
                rhos.append(dict(cur))
            hit = self._cod_cores[cod] = (steps, core, rhos)
        return hit

    def _reduced(self, dom, cod, f, g) -> _Outcome:
        dsteps, dcore = self._dom_core(dom)
        csteps, ccore, rhos = self._cod_core(cod)
        if not dsteps and not csteps:
            return self._bfs(dom, cod, f, g)
        # partial retractions of the domain: R_t(u) for each prefix t
        retractions = []
        cur = {v: v for v in dom.vertices}
        for x, y in dsteps:
            cur = {v: (y if w == x else w) for v, w in cur.items()}
            retractions.append(dict(cur))

        def pre(h, R):
            out = list(h)
            for v, w in R.items():
                out[v] = h[w]
            return tuple(out)

        def post(h, rho):
            return tuple(rho[w] if w >= 0 else -1 for w in h)

        def on_core(h):
            keep = dcore.support
            return tuple(w if keep >> v & 1 else -1 for v, w in enumerate(h))

        last_rho = rhos[-1] if rhos else None
        cf = on_core(f)
        cg = on_core(g)
        if last_rho is not None:
            cf = post(cf, last_rho)
            cg = post(cg, last_rho)
        key = (dcore, ccore, cf, cg)
        inner = self._memo.get(key)
        if inner is None:
            inner = self._bfs(dcore, ccore, cf, cg)
            self._memo[key] = inner
        if inner.verdict != EQUIVALENT:
            return _Outcome(inner.verdict, None, inner.explored, inner.reason)
        R = retractions[-1] if retractions else None
        head = [f] + [pre(f, Rt) for Rt in retractions]
        fr = head[-1]
        head += [post(fr, rho) for rho in rhos]
        tail = [g] + [pre(g, Rt) for Rt in retractions]
        gr = tail[-1]
        tail += [post(gr, rho) for rho in rhos]
        middle = [pre(c, R) if R is not None else c for c in inner.chain]
        return _Outcome(EQUIVALENT, _dedupe(head + middle + tail[::-1]), inner.explored, "reduced")

    def _bfs(self, dom: FacetSet, cod: FacetSet, f, g) -> _Outcome:
        if f == g:
            return _Outcome(EQUIVALENT, [f], 0, "identical")
        ckey = (dom, cod)
        for comp in self._components.get(ckey, ()):
            if f in comp:
                if g not in comp:
                    return _Outcome(NOT_EQUIVALENT, None, 0, "component exhausted (cached)")
                break
        parent = {f: None}
        depth = {f: 0}
        queue = deque([f])
        explored = 0
        truncated = False
        max_chain = self.budget.max_chain
        while queue:
            h = queue.popleft()
            explored += 1
            self.visits += 1
            if max_chain is not None and depth[h] + 2 > max_chain:
                truncated = True
                continue
            try:
                nbs = neighbour_arrays(dom, cod, h, self.budget.max_neighbors)
            except NeighborBudgetExceeded:
                return _Outcome(UNKNOWN, None, explored, "neighbour budget exhausted")
            for nb in nbs:
                if nb in parent:
                    continue
                parent[nb] = h
                depth[nb] = depth[h] + 1
                if nb == g:
                    chain = [nb]
                    while parent[chain[-1]] is not None:
                        chain.append(parent[chain[-1]])
                    return _Outcome(EQUIVALENT, chain[::-1], explored, "bfs")
                queue.append(nb)
            if len(parent) > self.budget.max_visits:
                return _Outcome(UNKNOWN, None, explored, "visit budget exhausted")
        if truncated:
            return _Outcome(UNKNOWN, None, explored, "chain-length budget exhausted")
        self._components.setdefault(ckey, []).append(frozenset(parent))
        return _Outcome(NOT_EQUIVALENT, None, explored, "component exhausted")


# ---------------------------------------------------------------- public API

def _same_spaces(phi: SimplicialMap, psi: SimplicialMap):
    if phi.domain != psi.domain or phi.codomain != psi.codomain:
        raise DomainMismatch("maps must share domain and codomain")


def is_contiguous(phi: SimplicialMap, psi: SimplicialMap) -> bool:
    _same_spaces(phi, psi)
    return arrays_contiguous(phi.domain.fs, phi.codomain.fs, phi.images, psi.images)


def contiguous_neighbors(phi: SimplicialMap, max_count: int | None = 1_000_000) -> list[SimplicialMap]:
    arrays = neighbour_arrays(phi.domain.fs, phi.codomain.fs, phi.images, max_count)
    return [SimplicialMap(phi.domain, phi.codomain, a, check=False) for a in arrays]


def chain_to_maps(chain, domain: Complex, codomain: Complex) -> ContiguityCertificate:
    return ContiguityCertificate(tuple(SimplicialMap(domain, codomain, c, check=False) for c in chain))


def same_contiguity_class(
    phi: SimplicialMap,
    psi: SimplicialMap,
    budget: Budget | None = None,
    *,
    reduce: bool = False,
    decider: Decider | None = None,
) -> ClassDecision:
    """Decide ``phi ~ psi``.

    With the default ``reduce=False`` the certificate is a shortest chain
    (ties broken by lexicographic map order).  ``reduce=True`` collapses
    domain and codomain to their cores first: much faster on large inputs,
    but the lifted chain need not be shortest.  A shared ``decider`` keeps its
    own setting and caches.
    """
    _same_spaces(phi, psi)
    if decider is None:
        decider = Decider(budget or Budget(), reduce=reduce)
    out = decider.decide(phi.domain.fs, phi.codomain.fs, phi.images, psi.images, phi.codomain.factors)
    cert = None
    if out.verdict == EQUIVALENT:
        cert = chain_to_maps(out.chain, phi.domain, phi.codomain)
    return ClassDecision(out.verdict, cert, out.explored, decider.budget, out.reason)
