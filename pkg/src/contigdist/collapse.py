"""Strong collapses: dominated vertices, cores, strong collapsibility."""

from __future__ import annotations

from dataclasses import dataclass

from .complex import Complex, FacetSet, Subcomplex


@dataclass(frozen=True)
class CollapseTrace:
    steps: tuple[tuple[str, str], ...]  # (removed, dominator) labels
    result: Complex

    @property
    def is_point(self) -> bool:
        return self.result.n == 1


def core_steps(fs: FacetSet) -> tuple[list[tuple[int, int]], FacetSet]:
    """Greedy canonical collapse: lowest dominated vertex, lowest dominator."""
    steps = []
    while True:
        pair = fs.first_dominated()
        if pair is None:
            return steps, fs
        steps.append(pair)
        fs = fs.delete_vertex(pair[0])


def dominated_vertices(K: Complex) -> list[tuple[str, str]]:
    return [(K.labels[v], K.labels[w]) for v, w in K.fs.dominated_pairs()]


def core(K: Complex) -> CollapseTrace:
    steps, fs = core_steps(K.fs)
    result = Subcomplex(K, fs.facets).as_complex()
    return CollapseTrace(tuple((K.labels[v], K.labels[w]) for v, w in steps), result)


def is_strongly_collapsible(K: Complex) -> bool:
    _, fs = core_steps(K.fs)
    return len(fs.vertices) == 1
