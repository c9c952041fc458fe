"""Command-line front end.

Every command writes exactly one JSON document to standard output and a short
human-readable summary to standard error.  Exit status: 0 for a definite
answer, 1 for an error (the JSON then carries a structured ``error`` object)
or a failed verification, 2 when a budget ran out and the answer is Unknown.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .collapse import core, is_strongly_collapsible
from .complex import MAX_VERTICES, Complex, is_edge_path_connected
from .contiguity import EQUIVALENT, UNKNOWN, is_contiguous, same_contiguity_class
from .distance import EXACT, INFINITE, DistanceReport, SearchBudget, contiguity_distance, discrete_tc, scat
from .errors import ContigError
from .io import bundled_data_dir, emit_complex, parse_complex_file, parse_map_file, write_text
from .product import categorical_power
from .subdivision import barycentric_subdivision

COMMANDS = ("validate", "contiguous", "class", "sd", "scat", "tc", "subdivide", "power", "core", "verify")

# flag -> (environment variable, SearchBudget field)
BUDGET_ENV = {
    "max_visits": "CONTIGDIST_MAX_VISITS",
    "max_pieces": "CONTIGDIST_MAX_PIECES",
    "max_subcomplexes": "CONTIGDIST_MAX_SUBCOMPLEXES",
    "threads": "CONTIGDIST_THREADS",
}


@dataclass
class JobSpec:
    command: str
    complex: str | None = None
    codomain: str | None = None
    maps: list[str] = field(default_factory=list)
    mode: str = "all"
    strategy: str = "partition"
    n: int = 2
    basepoint: str | None = None
    corpus: str | None = None
    out: str | None = None
    samples: int = 200
    seed: int = 0
    max_vertices: int = MAX_VERTICES
    max_visits: int = 1_000_000
    max_pieces: int = 200_000
    max_subcomplexes: int = 200_000
    threads: int = 1
    reduce: bool = False

    def budget(self) -> SearchBudget:
        return SearchBudget(
            max_visits=self.max_visits, max_pieces=self.max_pieces, max_subcomplexes=self.max_subcomplexes
        )


class JobFailed(Exception):
    """Non-error outcome that still maps to exit status 1 (failed verification)."""


def _num(x):
    if isinstance(x, float) and math.isinf(x):
        return "Infinite"
    return x


def complex_json(K: Complex) -> dict:
    return {
        "vertices": list(K.labels),
        "facets": [list(f) for f in K.facet_label_sets()],
        "dimension": K.dimension,
        "connected": is_edge_path_connected(K),
    }


def distance_json(rep: DistanceReport) -> dict:
    out = {
        "status": rep.status,
        "value": _num(rep.value) if rep.status != "unknown" else None,
        "bounds": {"lower": rep.lower, "upper": _num(rep.upper)},
        "mode": rep.mode,
        "strategy": rep.strategy,
        "pieces": [],
        "certificates": [],
        "stats": rep.stats,
        "budget": rep.budget.to_dict() if rep.budget else None,
    }
    if rep.solution is not None:
        out["pieces"] = [[list(f) for f in p.facet_label_sets()] for p in rep.solution.pieces]
        out["certificates"] = [
            [[m.label_table() for m in cert.chain] for cert in certs] for certs in rep.solution.certificates
        ]
    extra = {k: v for k, v in rep.extra.items()}
    if extra:
        out["extra"] = extra
    return out


def _load(job: JobSpec):
    if not job.complex:
        raise ContigError("--complex is required for '%s'" % job.command)
    K = parse_complex_file(job.complex)
    L = parse_complex_file(job.codomain) if job.codomain else K
    maps = [parse_map_file(p, K, L) for p in job.maps]
    return K, L, maps


def _need_maps(job: JobSpec, maps, exactly=None, at_least=None):
    if exactly is not None and len(maps) != exactly:
        raise ContigError("'%s' needs exactly %d maps" % (job.command, exactly))
    if at_least is not None and len(maps) < at_least:
        raise ContigError("'%s' needs at least %d maps" % (job.command, at_least))


def run(job: JobSpec) -> tuple[dict, int]:
    """Execute ``job``; returns the JSON report and the exit status."""
    report: dict = {"command": job.command}
    try:
        body, code = _dispatch(job)
        report.update(body)
        return report, code
    except ContigError as e:
        report.update(status="error", error=e.to_dict())
        return report, 1
    except (OSError, ValueError) as e:
        report.update(status="error", error={"kind": type(e).__name__, "message": str(e)})
        return report, 1


def _dispatch(job: JobSpec) -> tuple[dict, int]:
    cmd = job.command
    if cmd == "verify":
        return _verify(job)
    K, L, maps = _load(job)
    if cmd == "validate":
        body = {"status": "ok", "complex": complex_json(K)}
        if job.codomain:
            body["codomain"] = complex_json(L)
        body["maps"] = [m.label_table() for m in maps]
        return body, 0
    if cmd == "contiguous":
        _need_maps(job, maps, exactly=2)
        return {"status": EXACT, "contiguous": is_contiguous(maps[0], maps[1])}, 0
    if cmd == "class":
        _need_maps(job, maps, exactly=2)
        d = same_contiguity_class(maps[0], maps[1], job.budget().class_budget(), reduce=job.reduce)
        body = {
            "status": "unknown" if d.verdict == UNKNOWN else EXACT,
            "verdict": d.verdict,
            "certificate": [m.label_table() for m in d.certificate.chain] if d.certificate else None,
            "stats": {"explored": d.explored, "reason": d.reason},
            "budget": d.budget.to_dict(),
        }
        return body, 2 if d.verdict == UNKNOWN else 0
    if cmd == "sd":
        _need_maps(job, maps, at_least=2)
        rep = contiguity_distance(maps, job.mode, job.budget(), job.strategy)
        return distance_json(rep), 0 if rep.definite else 2
    if cmd == "scat":
        rep = scat(K, job.mode, job.budget(), job.strategy, job.basepoint)
        return distance_json(rep), 0 if rep.definite else 2
    if cmd == "tc":
        rep = discrete_tc(K, job.n, job.mode, job.budget(), job.strategy, job.max_vertices)
        return distance_json(rep), 0 if rep.definite else 2
    if cmd == "subdivide":
        sd = barycentric_subdivision(K, job.max_vertices).underlying
        if job.out:
            write_text(job.out, emit_complex(sd))
        return {"status": "ok", "complex": complex_json(sd)}, 0
    if cmd == "power":
        P = categorical_power(K, job.n, job.max_vertices).underlying
        if job.out:
            write_text(job.out, emit_complex(P))
        return {"status": "ok", "complex": complex_json(P)}, 0
    if cmd == "core":
        tr = core(K)
        return {
            "status": "ok",
            "steps": [list(s) for s in tr.steps],
            "core": complex_json(tr.result),
            "strongly_collapsible": is_strongly_collapsible(K),
        }, 0
    raise ContigError("unknown command %r" % cmd)


def _verify(job: JobSpec) -> tuple[dict, int]:
    from .theorems import verify_theorem_suite

    root = Path(job.corpus) if job.corpus else bundled_data_dir()
    files = sorted(root.glob("*.cx"))
    if not files:
        raise ContigError("no .cx files in %s" % root)
    corpus = [parse_complex_file(p) for p in files]
    small = [K for K in corpus if K.n <= 6]
    result = verify_theorem_suite(small or corpus, job.budget(), samples=job.samples, seed=job.seed)
    body = {"status": "ok" if result["passed"] else "failed", "corpus": [str(p) for p in files]}
    body.update(result)
    return body, 0 if result["passed"] else 1


def _summary(report: dict) -> str:
    cmd = report["command"]
    st = report.get("status")
    if st == "error":
        e = report["error"]
        return "%s: error %s: %s" % (cmd, e.get("kind"), e.get("message"))
    if "value" in report:
        if st == "unknown":
            b = report["bounds"]
            return "%s: Unknown, between %s and %s (%s mode)" % (cmd, b["lower"], b["upper"], report["mode"])
        return "%s = %s (%s mode, %d pieces)" % (cmd, report["value"], report["mode"], len(report["pieces"]))
    if cmd == "verify":
        bad = [c["name"] for c in report["checks"] if not c["passed"]]
        return "verify: %d cases, %s" % (report["cases"], "all checks pass" if not bad else "FAILED: " + ", ".join(bad))
    if cmd == "class":
        return "class: %s" % report["verdict"]
    if cmd == "contiguous":
        return "contiguous: %s" % report["contiguous"]
    if cmd == "core":
        c = report["core"]
        return "core: %d vertices after %d deletions%s" % (
            len(c["vertices"]), len(report["steps"]), " (strongly collapsible)" if report["strongly_collapsible"] else "")
    if "complex" in report:
        c = report["complex"]
        return "%s: %d vertices, %d facets" % (cmd, len(c["vertices"]), len(c["facets"]))
    return "%s: %s" % (cmd, st)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="contigdist", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--complex", help="complex file (.cx)")
    p.add_argument("--codomain", help="codomain complex file; defaults to --complex")
    p.add_argument("--maps", default="", help="comma-separated map files")
    p.add_argument("--mode", choices=("all", "induced"), default="all")
    p.add_argument("--strategy", choices=("partition", "cover"), default="partition")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--basepoint")
    p.add_argument("--corpus", help="directory of .cx files for 'verify'")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the resulting complex here (subdivide, power)")
    p.add_argument("--max-vertices", type=int, default=MAX_VERTICES)
    p.add_argument("--max-visits", type=int)
    p.add_argument("--max-pieces", type=int)
    p.add_argument("--max-subcomplexes", type=int)
    p.add_argument("--threads", type=int, help="worker cap (computation is single-threaded)")
    p.add_argument("--reduce", action="store_true",
                   help="class: decide on strong-collapse cores (faster; chain may not be shortest)")
    return p


def job_from_args(args: argparse.Namespace, environ=os.environ) -> JobSpec:
    job = JobSpec(
        command=args.command,
        complex=args.complex,
        codomain=args.codomain,
        maps=[m for m in args.maps.split(",") if m],
        mode=args.mode,
        strategy=args.strategy,
        n=args.n,
        basepoint=args.basepoint,
        corpus=args.corpus,
        out=args.out,
        samples=args.samples,
        seed=args.seed,
        max_vertices=args.max_vertices,
        reduce=args.reduce,
    )
    for name, env in BUDGET_ENV.items():
        flag = getattr(args, name)
        if flag is not None:
            setattr(job, name, flag)
        elif env in environ:
            setattr(job, name, int(environ[env]))
    return job


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        job = job_from_args(args)
    except ValueError as e:
        report, code = {"command": args.command, "status": "error",
                        "error": {"kind": "ValueError", "message": str(e)}}, 1
    else:
        report, code = run(job)
    json.dump(report, sys.stdout, indent=2, sort_keys=True)
    sys.stdout.write("\n")
    print(_summary(report), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
