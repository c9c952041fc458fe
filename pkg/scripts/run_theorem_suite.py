"""Run the sampled property suite and print a per-property summary.

    python3 scripts/run_theorem_suite.py --samples 1000 --seed 0 [--json out.json]
"""

from __future__ import annotations

import argparse
import json
import time

from contigdist.theorems import verify_theorem_suite


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", help="also write the full result here")
    args = ap.parse_args()
    t = time.perf_counter()
    result = verify_theorem_suite(samples=args.samples, seed=args.seed)
    dt = time.perf_counter() - t
    for c in result["checks"]:
        print("%-30s %s  cases=%d violations=%d inconclusive=%d" % (
            c["name"], "pass" if c["passed"] else "FAIL", c["cases"], c["violations"], c["inconclusive"]))
        if c["counterexample"]:
            print("    counterexample:", json.dumps(c["counterexample"]))
    print("%d tuples in %.1fs: %s" % (result["cases"], dt, "all pass" if result["passed"] else "FAILURES"))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(result, fh, indent=2)
    return 0 if result["passed"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
