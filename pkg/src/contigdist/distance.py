"""Higher contiguity distance, simplicial LS category and higher discrete TC.

``SD(f1, ..., fn)`` is one less than the least number of subcomplexes covering
the domain such that on every piece the restrictions of consecutive maps are
in one contiguity class.  A piece with that property is called *good*.

Goodness passes to subcomplexes (restrict the certificate chains), which gives
two exact search strategies:

``partition``
    Assign the facets of the domain to pieces by depth-first search, keeping
    each piece good, for an increasing number of pieces.  A cover by good
    subcomplexes yields such an assignment (put each facet in any piece that
    contains it) and vice versa, so the first feasible count is the answer.
``cover``
    Enumerate the maximal good subcomplexes by descending from the whole
    domain (removing one top face or one vertex at a time), then solve exact
    minimum set cover over the domain's facets by branch and bound.

Both respect the candidate pool: ``mode="all"`` allows every subcomplex,
``mode="induced"`` only full subcomplexes on a vertex subset.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Sequence

from .complex import Complex, FacetSet, Subcomplex, bits, maximal, simplex_key
from .contiguity import (
    EQUIVALENT,
    NOT_EQUIVALENT,
    UNKNOWN,
    Budget,
    ContiguityCertificate,
    Decider,
    chain_to_maps,
)
from .errors import DomainMismatch, EnumerationBudgetExceeded
from .maps import SimplicialMap, constant_map, identity
from .product import categorical_power, projection

EXACT = "exact"
INFINITE = "infinite"
UNKNOWN_VALUE = "unknown"


@dataclass(frozen=True)
class SearchBudget:
    max_visits: int = 1_000_000
    max_chain: int | None = None
    max_pieces: int = 200_000  # goodness evaluations
    max_subcomplexes: int = 200_000  # descent nodes of the cover strategy
    max_nodes: int = 5_000_000  # branch-and-bound nodes

    def class_budget(self) -> Budget:
        return Budget(max_visits=self.max_visits, max_chain=self.max_chain)

    def to_dict(self):
        return {
            "max_visits": self.max_visits,
            "max_chain": self.max_chain,
            "max_pieces": self.max_pieces,
            "max_subcomplexes": self.max_subcomplexes,
            "max_nodes": self.max_nodes,
        }


class _BudgetHit(Exception):
    pass


@dataclass
class PieceVerdict:
    verdict: str
    certificates: list[ContiguityCertificate] | None
    explored: int = 0

    @property
    def good(self) -> bool:
        return self.verdict == EQUIVALENT


@dataclass
class CoverSolution:
    domain: Complex
    pieces: list[Subcomplex]
    certificates: list[list[ContiguityCertificate]]

    @property
    def value(self) -> int:
        return len(self.pieces) - 1

    def covers(self) -> bool:
        return all(any(p.fs.is_face(f) for p in self.pieces) for f in self.domain.facets)

    def validate(self, maps: Sequence[SimplicialMap]) -> bool:
        """Coverage plus replay of every stored chain with correct endpoints."""
        from .maps import restrict_map

        if not self.covers() or len(self.certificates) != len(self.pieces):
            return False
        for piece, certs in zip(self.pieces, self.certificates):
            if len(certs) != len(maps) - 1:
                return False
            for i, cert in enumerate(certs):
                if cert.chain[0] != restrict_map(maps[i], piece) or cert.chain[-1] != restrict_map(maps[i + 1], piece):
                    return False
                if not cert.replays():
                    return False
        return True


@dataclass
class DistanceReport:
    status: str
    value: int | float | None
    lower: int | None
    upper: int | float | None
    mode: str
    strategy: str
    solution: CoverSolution | None = None
    stats: dict = field(default_factory=dict)
    budget: SearchBudget | None = None
    extra: dict = field(default_factory=dict)

    @property
    def definite(self) -> bool:
        return self.status in (EXACT, INFINITE)


# ------------------------------------------------------------------ pieces

class PieceJudge:
    """Memoised goodness test for subcomplexes of a shared domain."""

    def __init__(self, maps: Sequence[SimplicialMap], budget: SearchBudget, decider: Decider | None = None):
        if len(maps) < 1:
            raise ValueError("need at least one map")
        dom, cod = maps[0].domain, maps[0].codomain
        for m in maps:
            if m.domain != dom or m.codomain != cod:
                raise DomainMismatch("all maps must share domain and codomain")
        self.maps = list(maps)
        self.domain = dom
        self.codomain = cod
        self.budget = budget
        self.decider = decider or Decider(budget.class_budget())
        self.evaluations = 0
        self._memo: dict[FacetSet, tuple[str, list | None]] = {}
        # consecutive pairs that are literally equal need no decision
        self._pairs = [i for i in range(len(maps) - 1) if maps[i].images != maps[i + 1].images]

    def judge(self, fs: FacetSet) -> tuple[str, list | None]:
        hit = self._memo.get(fs)
        if hit is not None:
            return hit
        self.evaluations += 1
        if self.evaluations > self.budget.max_pieces:
            raise _BudgetHit("piece budget exhausted")
        keep = fs.support
        n = self.domain.n
        restricted = [tuple(w if keep >> v & 1 else -1 for v, w in enumerate(m.images)) for m in self.maps]
        chains: list = []
        verdict = EQUIVALENT
        cod = self.codomain
        for i in range(len(self.maps) - 1):
            if i not in self._pairs:
                if chains is not None:
                    chains.append([restricted[i]])
                continue
            out = self.decider.decide(fs, cod.fs, restricted[i], restricted[i + 1], cod.factors)
            if out.verdict == NOT_EQUIVALENT:
                verdict, chains = NOT_EQUIVALENT, None
                break
            if out.verdict == UNKNOWN:
                verdict, chains = UNKNOWN, None
            elif chains is not None:
                chains.append(out.chain)
        res = (verdict, chains)
        self._memo[fs] = res
        return res

    def good(self, fs: FacetSet) -> str:
        return self.judge(fs)[0]

    def certificates(self, piece: Subcomplex) -> list[ContiguityCertificate]:
        verdict, chains = self.judge(piece.fs)
        if verdict != EQUIVALENT:
            raise ValueError("piece is not good")
        sub = piece.as_complex()
        verts = piece.vertex_indices
        out = []
        for chain in chains:
            arrays = [[c[v] for v in verts] for c in chain]
            out.append(chain_to_maps(arrays, sub, self.codomain))
        return out


def is_good_piece(omega: Subcomplex, maps: Sequence[SimplicialMap], budget: SearchBudget | None = None) -> PieceVerdict:
    """Whether all consecutive restrictions to ``omega`` share a contiguity class."""
    budget = budget or SearchBudget()
    for m in maps:
        if m.domain != omega.parent:
            raise DomainMismatch("piece is not a subcomplex of the maps' domain")
    judge = PieceJudge(maps, budget)
    verdict, _ = judge.judge(omega.fs)
    certs = judge.certificates(omega) if verdict == EQUIVALENT else None
    return PieceVerdict(verdict, certs, judge.decider.visits)


# ----------------------------------------------------------------- search

def _facet_order(K: Complex) -> list[int]:
    """Facets in breadth-first order of the shares-a-vertex graph."""
    facets = list(K.facets)
    left = list(facets)
    order = []
    while left:
        queue = [left.pop(0)]
        while queue:
            f = queue.pop(0)
            order.append(f)
            touching = [g for g in left if g & f]
            for g in touching:
                left.remove(g)
            queue.extend(touching)
    return order


class _Search:
    def __init__(self, judge: PieceJudge, mode: str, budget: SearchBudget):
        self.judge = judge
        self.mode = mode
        self.budget = budget
        self.K = judge.domain
        self.nodes = 0
        self.uncertain = False

    def piece(self, facet_list) -> FacetSet:
        if self.mode == "induced":
            m = 0
            for f in facet_list:
                m |= f
            return self.K.fs.induced(m)
        return FacetSet(tuple(sorted(facet_list, key=simplex_key)))

    def is_good(self, facet_list) -> bool:
        v = self.judge.good(self.piece(facet_list))
        if v == UNKNOWN:
            self.uncertain = True
        return v == EQUIVALENT

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetHit("branch-and-bound node budget exhausted")


class _PartitionSearch(_Search):
    def greedy(self, order):
        blocks: list[list[int]] = []
        for f in order:
            for b in blocks:
                if self.is_good(b + [f]):
                    b.append(f)
                    break
            else:
                blocks.append([f])
        return blocks

    def feasible(self, order, m):
        blocks: list[list[int]] = []

        def dfs(i):
            self._tick()
            if i == len(order):
                return True
            f = order[i]
            for b in blocks:
                b.append(f)
                if self.is_good(b) and dfs(i + 1):
                    return True
                b.pop()
            if len(blocks) < m:
                blocks.append([f])
                if dfs(i + 1):
                    return True
                blocks.pop()
            return False

        return [list(b) for b in blocks] if dfs(0) else None


class _CoverSearch(_Search):
    def maximal_good(self) -> list[FacetSet]:
        """Maximal good pieces by pruned descent from the whole domain."""
        K = self.K
        goods: list[FacetSet] = []
        seen = set()
        if self.mode == "induced":
            full = K.fs.support
            stack = [full]
            while stack:
                S = stack.pop()
                if S in seen:
                    continue
                seen.add(S)
                if len(seen) > self.budget.max_subcomplexes:
                    raise _BudgetHit("subcomplex enumeration budget exhausted")
                fs = K.fs.induced(S)
                if self.is_good_fs(fs):
                    goods.append(fs)
                    continue
                for v in reversed(bits(S)):
                    child = S & ~(1 << v)
                    if child and child not in seen:
                        stack.append(child)
        else:
            stack = [K.fs]
            while stack:
                fs = stack.pop()
                if fs in seen:
                    continue
                seen.add(fs)
                if len(seen) > self.budget.max_subcomplexes:
                    raise _BudgetHit("subcomplex enumeration budget exhausted")
                if self.is_good_fs(fs):
                    goods.append(fs)
                    continue
                for f in reversed(fs.facets):
                    rest = [g for g in fs.facets if g != f]
                    boundary = [f & ~(1 << v) for v in bits(f)] if f.bit_count() > 1 else []
                    child = maximal(rest + [b for b in boundary if b])
                    if child:
                        cfs = FacetSet(child)
                        if cfs not in seen:
                            stack.append(cfs)
        goods = list(dict.fromkeys(goods))
        goods.sort(key=lambda fs: (-len(fs.faces), fs.facets))
        kept: list[FacetSet] = []
        for g in goods:
            if not any(k.contains(g) for k in kept):
                kept.append(g)
        return kept

    def is_good_fs(self, fs: FacetSet) -> bool:
        v = self.judge.good(fs)
        if v == UNKNOWN:
            self.uncertain = True
        return v == EQUIVALENT

    def set_cover(self, candidates: list[FacetSet]):
        """Exact minimum cover of the domain's facets; returns candidate indices."""
        elements = list(self.K.facets)
        contains = [frozenset(j for j, c in enumerate(candidates) if c.is_face(e)) for e in elements]
        covers = [frozenset(i for i, e in enumerate(elements) if candidates[j].is_face(e)) for j in range(len(candidates))]

        # greedy incumbent
        uncovered = set(range(len(elements)))
        best: list[int] = []
        while uncovered:
            j = min(range(len(candidates)), key=lambda j: (-len(covers[j] & uncovered), j))
            best.append(j)
            uncovered -= covers[j]
        best_sol = sorted(best)

        def packing_bound(unc):
            # elements pairwise sharing no candidate each need their own piece
            chosen_sets: set[int] = set()
            count = 0
            for e in sorted(unc):
                if not (contains[e] & chosen_sets):
                    chosen_sets |= contains[e]
                    count += 1
            return count

        def rec(unc: frozenset, chosen: list[int]):
            nonlocal best_sol
            self._tick()
            if not unc:
                if len(chosen) < len(best_sol):
                    best_sol = sorted(chosen)
                return
            if len(chosen) + packing_bound(unc) >= len(best_sol):
                return
            e = min(unc, key=lambda e: (len(contains[e]), e))
            for j in sorted(contains[e], key=lambda j: (-len(covers[j] & unc), j)):
                chosen.append(j)
                rec(unc - covers[j], chosen)
                chosen.pop()

        rec(frozenset(range(len(elements))), [])
        return best_sol


def _infinite_witness(search: _Search) -> tuple[int | None, bool]:
    """First facet whose closure is not good (``None`` if all are good)."""
    uncertain = False
    for f in search.K.facets:
        v = search.judge.good(search.piece([f]))
        if v == NOT_EQUIVALENT:
            return f, uncertain
        if v == UNKNOWN:
            uncertain = True
    return None, uncertain


def _solution(judge: PieceJudge, pieces: list[FacetSet]) -> CoverSolution:
    subs = [Subcomplex(judge.domain, p.facets) for p in pieces]
    return CoverSolution(judge.domain, subs, [judge.certificates(s) for s in subs])


def contiguity_distance(
    maps: Sequence[SimplicialMap],
    mode: str = "all",
    budget: SearchBudget | None = None,
    strategy: str = "partition",
    *,
    decider: Decider | None = None,
) -> DistanceReport:
    """Exact ``SD(maps)`` over the ``mode`` candidate pool.

    Budget exhaustion yields ``status="unknown"`` with bracketing bounds, never
    a wrong integer.
    """
    if len(maps) < 2:
        raise ValueError("SD needs at least two maps")
    if mode not in ("all", "induced"):
        raise ValueError("mode must be 'all' or 'induced'")
    budget = budget or SearchBudget()
    judge = PieceJudge(maps, budget, decider)
    cls = _CoverSearch if strategy == "cover" else _PartitionSearch
    if strategy not in ("partition", "cover"):
        raise ValueError("strategy must be 'partition' or 'cover'")
    search = cls(judge, mode, budget)
    t0 = time.perf_counter()

    def report(status, value, lower, upper, pieces=None, **extra):
        stats = {
            "piece_evaluations": judge.evaluations,
            "maps_visited": judge.decider.visits,
            "search_nodes": search.nodes,
            "seconds": round(time.perf_counter() - t0, 4),
        }
        stats.update(extra)
        sol = _solution(judge, pieces) if pieces is not None else None
        return DistanceReport(status, value, lower, upper, mode, strategy, sol, stats, budget)

    try:
        bad, uncertain = _infinite_witness(search)
        if bad is not None:
            return report(INFINITE, math.inf, None, math.inf,
                          infinite_witness=list(judge.domain.simplex_labels(bad)))
        if uncertain:
            return report(UNKNOWN_VALUE, None, 0, None, None, reason="class budget on a single facet")
        whole = judge.good(judge.domain.fs)
        if whole == EQUIVALENT:
            return report(EXACT, 0, 0, 0, [judge.domain.fs])
        if whole == UNKNOWN:
            uncertain = True
        lower = 0 if whole == UNKNOWN else 1  # least number of pieces minus one, proven
        if strategy == "partition":
            order = _facet_order(judge.domain)
            blocks = search.greedy(order)
            best = [search.piece(b) for b in blocks]
            for m in range(2, len(blocks)):
                search.uncertain = False
                try:
                    found = search.feasible(order, m)
                except _BudgetHit:
                    return report(UNKNOWN_VALUE, None, lower, len(best) - 1, None, reason="node budget")
                if found is not None:
                    best = [search.piece(b) for b in found]
                    break
                if search.uncertain:
                    uncertain = True
                if not uncertain:
                    lower = m
            value = len(best) - 1
            if uncertain and lower < value:
                return report(UNKNOWN_VALUE, None, lower, value, best, reason="class budget")
            return report(EXACT, value, value, value, best)
        else:
            candidates = search.maximal_good()
            chosen = search.set_cover(candidates)
            pieces = [candidates[j] for j in chosen]
            value = len(pieces) - 1
            if search.uncertain or uncertain:
                return report(UNKNOWN_VALUE, None, lower, value, pieces,
                              reason="class budget", maximal_pieces=len(candidates))
            return report(EXACT, value, value, value, pieces, maximal_pieces=len(candidates))
    except _BudgetHit as e:
        return report(UNKNOWN_VALUE, None, 0, None, None, reason=str(e))


# ------------------------------------------------------- derived invariants

def scat(
    K: Complex,
    mode: str = "all",
    budget: SearchBudget | None = None,
    strategy: str = "partition",
    basepoint: str | None = None,
) -> DistanceReport:
    """Simplicial LS category as ``SD(id, c_v0)``.

    On a disconnected complex every piece lies in one component and is
    compared with a basepoint of that component, so the value is the sum of
    the per-component piece counts, minus one.
    """
    comps = K.fs.components
    if len(comps) == 1:
        v0 = basepoint if basepoint is not None else K.labels[0]
        rep = contiguity_distance([identity(K), constant_map(K, K, v0)], mode, budget, strategy)
        rep.extra["basepoint"] = v0
        return rep
    parts = []
    for comp in comps:
        sub = Subcomplex(K, K.fs.induced(comp).facets)
        C = sub.as_complex()
        parts.append((sub, C, scat(C, mode, budget, strategy)))
    statuses = {r.status for _, _, r in parts}
    stats = {"components": len(parts)}
    if INFINITE in statuses:
        return DistanceReport(INFINITE, math.inf, None, math.inf, mode, strategy, None, stats, budget)
    if UNKNOWN_VALUE in statuses:
        lo = sum((r.lower or 0) + 1 for _, _, r in parts) - 1
        ups = [r.upper for _, _, r in parts]
        hi = None if any(u is None for u in ups) else sum(u + 1 for u in ups) - 1
        return DistanceReport(UNKNOWN_VALUE, None, lo, hi, mode, strategy, None, stats, budget)
    value = sum(r.value + 1 for _, _, r in parts) - 1
    pieces, certs = [], []
    for sub, C, r in parts:
        back = sub.vertex_indices
        for p, cs in zip(r.solution.pieces, r.solution.certificates):
            lifted = Subcomplex(K, [sum(1 << back[v] for v in bits(f)) for f in p.facets])
            pieces.append(lifted)
            dom = lifted.as_complex()
            certs.append([chain_to_maps([[back[w] for w in m.images] for m in c.chain], dom, K) for c in cs])
    rep = DistanceReport(EXACT, value, value, value, mode, strategy, CoverSolution(K, pieces, certs), stats, budget)
    rep.extra["basepoint"] = "per component"
    return rep


def discrete_tc(
    K: Complex,
    n: int = 2,
    mode: str = "all",
    budget: SearchBudget | None = None,
    strategy: str = "partition",
    max_vertices: int = 64,
) -> DistanceReport:
    """``TC_n(K)`` as the distance between the ``n`` projections of ``K^n``.

    Each returned piece is re-checked against both characterisations of
    ``n``-Farber subcomplexes: pairwise equivalent projections, and some
    projection being a section of the diagonal up to contiguity.
    """
    P = categorical_power(K, n, max_vertices)
    projections = [projection(P, i) for i in range(1, n + 1)]
    if n == 1:
        return DistanceReport(EXACT, 0, 0, 0, mode, strategy,
                              CoverSolution(P.underlying, [P.underlying.whole()], [[]]), {}, budget)
    rep = contiguity_distance(projections, mode, budget, strategy)
    if rep.solution is not None:
        rep.extra["farber"] = [farber_clauses(P, piece, budget) for piece in rep.solution.pieces]
    return rep


def farber_clauses(P, piece: Subcomplex, budget: SearchBudget | None = None) -> dict:
    """Check clauses (pairwise projections) and (section of the diagonal)."""
    budget = budget or SearchBudget()
    decider = Decider(budget.class_budget())
    n = P.arity
    keep = piece.support
    N = P.underlying.n
    K = P.factors[0]
    proj = []
    for i in range(n):
        proj.append(tuple(P.decode(v)[i] if keep >> v & 1 else -1 for v in range(N)))
    pairwise = all(
        decider.decide(piece.fs, K.fs, proj[i], proj[j], K.factors).verdict == EQUIVALENT
        for i in range(n) for j in range(i + 1, n)
    )
    incl = tuple(v if keep >> v & 1 else -1 for v in range(N))
    sections = []
    for i in range(n):
        diag = tuple(P.encode([proj[i][v]] * n) if keep >> v & 1 else -1 for v in range(N))
        sections.append(decider.decide(piece.fs, P.underlying.fs, diag, incl, P.underlying.factors).verdict == EQUIVALENT)
    return {"pairwise_projections": pairwise, "section_of_diagonal": any(sections)}
