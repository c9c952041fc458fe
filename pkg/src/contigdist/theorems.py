"""Check the identities and inequalities satisfied by SD on sampled inputs.

Every property is evaluated on :class:`Case` objects (a domain, a codomain and
a tuple of image arrays).  A violated property is shrunk greedily -- drop a
map, drop a facet of the domain -- while it keeps failing, and the smallest
failing case is reported.  Results are plain data: nothing here raises on a
failed check.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .collapse import is_strongly_collapsible
from .complex import Complex, Subcomplex, bits, boundary_of_simplex, build_complex, full_simplex, is_edge_path_connected, point
from .contiguity import EQUIVALENT, Decider, contiguous_neighbors, same_contiguity_class
from .distance import EXACT, INFINITE, UNKNOWN_VALUE as UNKNOWN_STATUS, SearchBudget, contiguity_distance, scat
from .maps import SimplicialMap, compose, random_simplicial_map
from .maps import restrict_map
from .contiguity import is_contiguous
from .subdivision import barycentric_subdivision, subdivide_map, subdivide_subcomplex, subdivision_staircase


SUBDIVISION_FACE_LIMIT = 12  # faces of domain plus codomain for the exact subdivision comparison


@dataclass(frozen=True)
class Case:
    domain: Complex
    codomain: Complex
    arrays: tuple[tuple[int, ...], ...]
    seed: int = 0

    def maps(self) -> list[SimplicialMap]:
        return [SimplicialMap(self.domain, self.codomain, a, check=False) for a in self.arrays]

    def describe(self) -> dict:
        return {
            "domain": [list(f) for f in self.domain.facet_label_sets()],
            "codomain": [list(f) for f in self.codomain.facet_label_sets()],
            "maps": [m.label_table() for m in self.maps()],
        }


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    violations: int = 0
    inconclusive: int = 0
    counterexample: dict | None = None

    @property
    def passed(self) -> bool:
        return self.violations == 0

    def to_dict(self):
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
            "counterexample": self.counterexample,
        }


class Inconclusive(Exception):
    """A budget ran out; the case neither passes nor fails."""


@dataclass
class Context:
    corpus: list[Complex]
    budget: SearchBudget = field(default_factory=SearchBudget)
    mode: str = "all"

    def __post_init__(self):
        self.decider = Decider(self.budget.class_budget())
        self._sd: dict = {}
        self._scat: dict = {}

    def sd(self, maps: Sequence[SimplicialMap], mode: str | None = None):
        mode = mode or self.mode
        key = (mode, maps[0].domain, maps[0].codomain, tuple(m.images for m in maps))
        hit = self._sd.get(key)
        if hit is None:
            rep = contiguity_distance(maps, mode, self.budget, decider=self.decider)
            if rep.status not in (EXACT, INFINITE):
                raise Inconclusive("budget")
            hit = self._sd[key] = rep.value
        return hit

    def report(self, maps: Sequence[SimplicialMap], mode: str | None = None):
        """Full definite report (with the optimal cover) for ``maps``."""
        rep = contiguity_distance(maps, mode or self.mode, self.budget, decider=self.decider)
        if rep.status not in (EXACT, INFINITE):
            raise Inconclusive("budget")
        return rep

    def scat(self, K: Complex):
        hit = self._scat.get(K)
        if hit is None:
            rep = scat(K, self.mode, self.budget)
            if rep.status not in (EXACT, INFINITE):
                raise Inconclusive("budget")
            hit = self._scat[K] = rep.value
        return hit

    def equivalent(self, f: SimplicialMap, g: SimplicialMap) -> bool:
        d = same_contiguity_class(f, g, decider=self.decider)
        if d.verdict not in (EQUIVALENT, "NotEquivalent"):
            raise Inconclusive("budget")
        return d.verdict == EQUIVALENT


def _rng(case: Case, salt: str) -> random.Random:
    return random.Random("%d/%s" % (case.seed, salt))


def _walk(phi: SimplicialMap, rng: random.Random, steps: int = 3) -> SimplicialMap:
    """A random walk in the contiguity graph: the result is class-equivalent to ``phi``."""
    for _ in range(steps):
        nbs = contiguous_neighbors(phi, 5000)
        phi = rng.choice(nbs)
    return phi


# ------------------------------------------------------------------ properties

def prop_permutation(ctx: Context, case: Case) -> bool:
    maps = case.maps()
    perm = list(maps)
    _rng(case, "perm").shuffle(perm)
    return ctx.sd(maps) == ctx.sd(perm)


def prop_zero_characterisation(ctx: Context, case: Case) -> bool:
    maps = case.maps()
    chain = all(ctx.equivalent(a, b) for a, b in zip(maps, maps[1:]))
    return (ctx.sd(maps) == 0) == chain


def prop_monotone_in_n(ctx: Context, case: Case) -> bool:
    maps = case.maps()
    return all(ctx.sd(maps[:m]) <= ctx.sd(maps) for m in range(2, len(maps)))


def prop_class_replacement(ctx: Context, case: Case) -> bool:
    rng = _rng(case, "replace")
    maps = case.maps()
    return ctx.sd([_walk(m, rng) for m in maps]) == ctx.sd(maps)


def _source(ctx: Context, rng: random.Random) -> Complex:
    return rng.choice([M for M in ctx.corpus if M.n <= 5])


def prop_precomposition(ctx: Context, case: Case) -> bool:
    rng = _rng(case, "pre")
    maps = case.maps()
    M = _source(ctx, rng)
    mu = random_simplicial_map(M, case.domain, rng)
    if ctx.sd([compose(m, mu) for m in maps]) > ctx.sd(maps):
        return False
    # pairwise equivalent mu_i
    mus = [mu]
    for _ in maps[1:]:
        mus.append(_walk(mus[-1], rng, 2))
    return ctx.sd([compose(m, u) for m, u in zip(maps, mus)]) <= ctx.sd(maps)


def prop_postcomposition(ctx: Context, case: Case) -> bool:
    rng = _rng(case, "post")
    maps = case.maps()
    M = _source(ctx, rng)
    mu = random_simplicial_map(case.codomain, M, rng)
    mus = [mu]
    for _ in maps[1:]:
        mus.append(_walk(mus[-1], rng, 2))
    return ctx.sd([compose(u, m) for u, m in zip(mus, maps)]) <= ctx.sd(maps)


def prop_below_scat(ctx: Context, case: Case) -> bool:
    # constants into different components are never equivalent, so the bound
    # needs both complexes edge-path connected
    if not (is_edge_path_connected(case.domain) and is_edge_path_connected(case.codomain)):
        return True
    return ctx.sd(case.maps()) <= ctx.scat(case.domain)


def prop_factor_through(ctx: Context, case: Case) -> bool:
    """``SD(f_i∘eta) <= SD(eta, eta')`` whenever the ``f_i∘eta'`` are pairwise equivalent."""
    rng = _rng(case, "eta")
    maps = case.maps()
    M = _source(ctx, rng)
    eta = random_simplicial_map(M, case.domain, rng)
    eta2 = random_simplicial_map(M, case.domain, rng)
    after = [compose(m, eta2) for m in maps]
    if not all(ctx.equivalent(a, b) for a, b in zip(after, after[1:])):
        eta2 = _walk(eta, rng, 1)  # try an equivalent partner instead
        after = [compose(m, eta2) for m in maps]
        if not all(ctx.equivalent(a, b) for a, b in zip(after, after[1:])):
            return True  # precondition fails; vacuous
    return ctx.sd([compose(m, eta) for m in maps]) <= ctx.sd([eta, eta2])


def _subdivided_cover_is_good(maps: Sequence[SimplicialMap], solution) -> bool:
    """Subdivide an optimal cover of ``maps`` and its chains; check it witnesses the bound.

    The subdivided pieces must cover ``sd K``, every subdivided chain must
    start and end at the restricted subdivided maps, and consecutive maps
    must be linked by the contiguity staircase between their subdivisions.
    Success shows ``SD(sd maps) <= len(pieces) - 1``.
    """
    sd_maps = [subdivide_map(m) for m in maps]
    pieces = [subdivide_subcomplex(p) for p in solution.pieces]
    sd_domain = sd_maps[0].domain
    if not all(any(p.fs.is_face(f) for p in pieces) for f in sd_domain.facets):
        return False
    for piece, certs in zip(pieces, solution.certificates):
        for i, cert in enumerate(certs):
            chain = [subdivide_map(cert.chain[0])]
            for a, b in zip(cert.chain, cert.chain[1:]):
                chain += subdivision_staircase(a, b)[1:]
            if chain[0] != restrict_map(sd_maps[i], piece) or chain[-1] != restrict_map(sd_maps[i + 1], piece):
                return False
            if not all(is_contiguous(a, b) for a, b in zip(chain, chain[1:])):
                return False
    return True


def prop_subdivision(ctx: Context, case: Case) -> bool:
    maps = case.maps()
    rep = ctx.report(maps)
    if rep.status == INFINITE:
        return True
    if not _subdivided_cover_is_good(maps, rep.solution):
        return False
    # sd turns faces into vertices; the exact comparison is kept to small cases
    if len(case.domain.faces) + len(case.codomain.faces) > SUBDIVISION_FACE_LIMIT:
        return True
    return ctx.sd([subdivide_map(m) for m in maps]) <= rep.value


def prop_strong_collapse(ctx: Context, case: Case) -> bool:
    # a collapsible domain forces SD 0 only when the constants it reduces to
    # can be joined, i.e. in an edge-path connected codomain
    if is_strongly_collapsible(case.codomain) or (
        is_strongly_collapsible(case.domain) and is_edge_path_connected(case.codomain)
    ):
        return ctx.sd(case.maps()) == 0
    return True


def prop_mode_dominance(ctx: Context, case: Case) -> bool:
    maps = case.maps()
    return ctx.sd(maps, "all") <= ctx.sd(maps, "induced")


PROPERTIES: dict[str, Callable[[Context, Case], bool]] = {
    "permutation_invariance": prop_permutation,
    "sd_zero_characterisation": prop_zero_characterisation,
    "monotone_in_n": prop_monotone_in_n,
    "class_replacement_invariance": prop_class_replacement,
    "precomposition": prop_precomposition,
    "postcomposition": prop_postcomposition,
    "sd_at_most_scat": prop_below_scat,
    "factor_through_bound": prop_factor_through,
    "subdivision_monotone": prop_subdivision,
    "strong_collapsibility_zero": prop_strong_collapse,
    "mode_dominance": prop_mode_dominance,
}


# ------------------------------------------- subdivided axis inclusions

@dataclass
class SubdividedAxisResult:
    """``SD(sd i_1, ..., sd i_n)`` for the axis inclusions ``K -> K^n``."""

    status: str
    value: int | None
    lower: int
    upper: int | None
    scat_sd: int | None
    witness_verified: bool
    pieces: list = field(default_factory=list)


def axis_witness_ok(K: Complex, sdK, n: int, b: int, solution) -> bool:
    """Replay a scat cover of ``sd K`` (constant at vertex ``b``) through every ``sd i_j``."""
    kfaces = K.faces

    def lift(j: int, w: int) -> frozenset:
        sigma = bits(sdK.faces[w])
        return frozenset(tuple(u if i == j else b for i in range(n)) for u in sigma)

    def is_product_face(face: frozenset) -> bool:
        return all(sum(1 << t[i] for t in face) in kfaces for i in range(n))

    def is_chain(faces) -> bool:
        fs = sorted(set(faces), key=len)
        return all(is_product_face(f) for f in fs) and all(a <= c for a, c in zip(fs, fs[1:]))

    if not solution.covers():
        return False
    for piece, certs in zip(solution.pieces, solution.certificates):
        chain = certs[0].chain
        if list(chain[0].images) != list(piece.vertex_indices):  # must start at the inclusion
            return False
        if set(chain[-1].images) != {sdK.vertex_of(1 << b)}:  # and end at the common constant
            return False
        facets = chain[0].domain.facets
        for j in range(n):
            for alpha, beta in zip(chain, chain[1:]):
                for facet in facets:
                    vs = bits(facet)
                    if not is_chain([lift(j, alpha.images[v]) for v in vs] + [lift(j, beta.images[v]) for v in vs]):
                        return False
    return True


def subdivided_axis_distance(
    K: Complex, n: int = 3, basepoint: str | None = None, budget: SearchBudget | None = None
) -> SubdividedAxisResult:
    """Bound ``SD(sd i_1, ..., sd i_n)`` without building ``sd(K^n)``.

    A vertex of ``sd(K^n)`` is a face of ``K^n``; a set of them is a simplex
    iff the faces form a chain under inclusion.  ``sd i_j`` sends the
    barycentre of ``sigma`` to the face ``v0 x ... x sigma x ... x v0``.

    Upper bound: for a scat cover of ``sd K`` whose constant sits at the
    barycentre of ``v0``, composing each chain ``incl ~ ... ~ const`` with
    ``sd i_j`` joins ``sd i_j`` to the constant at ``(v0, ..., v0)``, the same
    for every ``j``; each link is replayed against the chain criterion.

    Lower bound: if all ``sd i_j`` were equivalent on ``sd K``, composing with
    ``sd p_1`` would make the identity of ``sd K`` equivalent to a constant,
    i.e. ``scat(sd K) = 0``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    v0 = basepoint if basepoint is not None else K.labels[0]
    b = K.index[v0]
    sdK = barycentric_subdivision(K)
    S = sdK.underlying
    base_label = S.labels[sdK.vertex_of(1 << b)]
    rep = scat(S, budget=budget, basepoint=base_label)
    if rep.status != EXACT:
        return SubdividedAxisResult(UNKNOWN_STATUS, None, 0, None, None, False)
    lower = min(rep.value, 1)
    ok = axis_witness_ok(K, sdK, n, b, rep.solution)
    upper = rep.value if ok else None
    if upper is not None and upper == lower:
        return SubdividedAxisResult(EXACT, upper, lower, upper, rep.value, ok, rep.solution.pieces)
    return SubdividedAxisResult(UNKNOWN_STATUS, None, lower, upper, rep.value, ok, rep.solution.pieces)


# ------------------------------------------------------------------ shrinking

def _shrinks(case: Case):
    if len(case.arrays) > 2:
        for i in range(len(case.arrays)):
            yield Case(case.domain, case.codomain, case.arrays[:i] + case.arrays[i + 1:], case.seed)
    K = case.domain
    if len(K.facets) > 1:
        for f in K.facets:
            sub = Subcomplex(K, [g for g in K.facets if g != f])
            verts = sub.vertex_indices
            yield Case(sub.as_complex(), case.codomain, tuple(tuple(a[v] for v in verts) for a in case.arrays), case.seed)


def _fails(ctx: Context, prop, case: Case) -> bool:
    try:
        return not prop(ctx, case)
    except Inconclusive:
        return False


def shrink(ctx: Context, prop, case: Case, max_steps: int = 50) -> Case:
    for _ in range(max_steps):
        for smaller in _shrinks(case):
            if _fails(ctx, prop, smaller):
                case = smaller
                break
        else:
            return case
    return case


# ------------------------------------------------------------------ sampling

def default_corpus() -> list[Complex]:
    """Small complexes (at most six vertices) used for sampling."""
    return [
        point(),
        full_simplex(2),
        full_simplex(3),
        boundary_of_simplex(3),
        build_complex([["0", "1"], ["1", "2"]]),
        build_complex([["0", "1"], ["1", "2"], ["2", "3"], ["0", "3"]]),
        build_complex([["0", "1", "2"], ["2", "3"]]),
        build_complex([["0", "1"], ["2"]]),
        build_complex([["0", "1", "2"], ["0", "2", "3"], ["3", "4"]]),
        boundary_of_simplex(4),
        build_complex([["0", "1"], ["1", "2"], ["2", "3"], ["3", "4"], ["0", "4"]]),
        build_complex([[a, b] for a, b in [("0", "1"), ("0", "2"), ("0", "3"), ("1", "2"), ("1", "3"), ("2", "3")]]),
        build_complex([["0", "1", "3"], ["0", "2", "4"], ["0", "3", "4"], ["1", "2", "5"],
                       ["1", "3", "5"], ["2", "4", "5"], ["3", "4", "5"]]),
    ]


def sample_cases(corpus: Sequence[Complex], count: int, seed: int = 0, max_maps: int = 3) -> list[Case]:
    rng = random.Random(seed)
    cases = []
    for i in range(count):
        K = rng.choice(corpus)
        L = rng.choice(corpus)
        n = rng.randint(2, max_maps)
        arrays = tuple(random_simplicial_map(K, L, rng).images for _ in range(n))
        cases.append(Case(K, L, arrays, seed=seed * 1_000_003 + i))
    return cases


def verify_theorem_suite(
    corpus: Sequence[Complex] | None = None,
    budget: SearchBudget | None = None,
    samples: int = 200,
    seed: int = 0,
    properties: Sequence[str] | None = None,
    cases: Sequence[Case] | None = None,
) -> dict:
    """Evaluate every property on sampled cases; failures are returned as data."""
    corpus = list(corpus) if corpus else default_corpus()
    ctx = Context(corpus, budget or SearchBudget(max_visits=200_000, max_pieces=50_000, max_nodes=500_000))
    if cases is None:
        cases = sample_cases(corpus, samples, seed)
    names = list(properties) if properties else list(PROPERTIES)
    results = {name: CheckResult(name) for name in names}
    for case in cases:
        for name in names:
            prop = PROPERTIES[name]
            res = results[name]
            res.cases += 1
            try:
                ok = prop(ctx, case)
            except Inconclusive:
                res.inconclusive += 1
                continue
            if not ok:
                res.violations += 1
                if res.counterexample is None:
                    res.counterexample = shrink(ctx, prop, case).describe()
    checks = [r.to_dict() for r in results.values()]
    return {
        "passed": all(c["passed"] for c in checks),
        "cases": len(cases),
        "checks": checks,
    }


def infinity_safe(x):
    """JSON-friendly value: ``inf`` becomes the string ``"Infinite"``."""
    return "Infinite" if isinstance(x, float) and math.isinf(x) else x
