
import pytest

from contigdist import SearchBudget, boundary_of_simplex, build_complex, full_simplex, point
from contigdist.contiguity import ContiguityCertificate
from contigdist.distance import CoverSolution, scat
from contigdist.subdivision import barycentric_subdivision
from contigdist.theorems import (
    PROPERTIES,
    Case,
    Context,
    axis_witness_ok,
    default_corpus,
    sample_cases,
    shrink,
    subdivided_axis_distance,
    verify_theorem_suite,
)


def test_default_corpus_is_small_and_varied():
    corpus = default_corpus()
    assert all(K.n <= 6 for K in corpus)
    assert any(len(K.fs.components) > 1 for K in corpus)


def test_sampling_is_deterministic():
    corpus = default_corpus()
    assert sample_cases(corpus, 20, seed=4) == sample_cases(corpus, 20, seed=4)
    assert sample_cases(corpus, 20, seed=4) != sample_cases(corpus, 20, seed=5)


def test_suite_passes_on_sample():
    result = verify_theorem_suite(samples=60, seed=11)
    assert result["passed"], [c for c in result["checks"] if not c["passed"]]
    assert {c["name"] for c in result["checks"]} == set(PROPERTIES)
    assert all(c["cases"] == 60 for c in result["checks"])


def test_suite_reports_a_shrunk_counterexample():
    """A deliberately false property is caught and shrunk rather than raising."""
    PROPERTIES["always_zero"] = lambda ctx, case: ctx.sd(case.maps()) == 0
    try:
        result = verify_theorem_suite(samples=30, seed=2, properties=["always_zero"])
    finally:
        del PROPERTIES["always_zero"]
    check = result["checks"][0]
    assert not result["passed"] and check["violations"] > 0
    cex = check["counterexample"]
    assert len(cex["maps"]) == 2


def test_shrink_drops_maps_and_facets(fig32, fig32_maps):
    ctx = Context(default_corpus())
    case = Case(fig32, fig32, (fig32_maps["id"].images, fig32_maps["c0"].images, fig32_maps["c0"].images), 0)
    small = shrink(ctx, lambda c, k: c.sd(k.maps()) == 0, case)
    assert len(small.arrays) == 2
    assert len(small.domain.facets) == 3  # dropping any edge makes the pair equivalent


def test_tiny_budget_is_inconclusive_not_violation():
    result = verify_theorem_suite(samples=10, seed=1, budget=SearchBudget(max_visits=1, max_nodes=1, max_pieces=1))
    assert result["passed"]
    assert sum(c["inconclusive"] for c in result["checks"]) > 0


def test_subdivided_axis_distance_figure31(fig31):
    r = subdivided_axis_distance(fig31, 3)
    assert (r.status, r.value, r.witness_verified) == ("exact", 1, True)
    assert len(r.pieces) == 2


@pytest.mark.parametrize("K, expected", [(full_simplex(3), 0), (boundary_of_simplex(3), 1), (point(), 0)])
def test_subdivided_axis_distance_small(K, expected):
    r = subdivided_axis_distance(K, 2)
    assert (r.status, r.value) == ("exact", expected)


def test_axis_witness_rejects_tampering(fig31):
    sdK = barycentric_subdivision(fig31)
    b = 0
    rep = scat(sdK.underlying, basepoint=sdK.underlying.labels[sdK.vertex_of(1 << b)])
    sol = rep.solution
    assert axis_witness_ok(fig31, sdK, 3, b, sol)
    # drop a piece: no longer a cover
    assert not axis_witness_ok(fig31, sdK, 3, b, CoverSolution(sol.domain, sol.pieces[:1], sol.certificates[:1]))
    # skip the middle of a chain: consecutive maps stop being contiguous
    chain = sol.certificates[0][0].chain
    if len(chain) > 2:
        short = ContiguityCertificate((chain[0], chain[-1]))
        certs = [[short]] + sol.certificates[1:]
        assert not axis_witness_ok(fig31, sdK, 3, b, CoverSolution(sol.domain, sol.pieces, certs))
