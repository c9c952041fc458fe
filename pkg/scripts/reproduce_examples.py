"""Recompute the worked-example values from the bundled complexes and maps.

    python3 scripts/reproduce_examples.py
"""

from __future__ import annotations

import time

from contigdist import axis_inclusion, barycentric_subdivision, contiguity_distance, scat
from contigdist.io import bundled_data_dir, parse_complex_file, parse_map_file
from contigdist.theorems import subdivided_axis_distance


def timed(label, fn, expected):
    t = time.perf_counter()
    value = fn()
    dt = time.perf_counter() - t
    flag = "ok " if value == expected else "BAD"
    print("%s %-52s %-6s (expected %s)  %.2fs" % (flag, label, value, expected, dt))
    return value == expected


def main() -> int:
    d = bundled_data_dir()
    k31 = parse_complex_file(d / "fig31.cx")
    k32 = parse_complex_file(d / "fig32.cx")
    k33 = parse_complex_file(d / "fig33.cx")
    phis = [parse_map_file(d / ("fig31_phi%d.map" % i), k31, k31) for i in (1, 2, 3)]
    m32 = {n: parse_map_file(d / ("fig32_%s.map" % n), k32, k32) for n in ("id", "c0", "phi")}
    sd31 = barycentric_subdivision(k31).underlying
    v0 = k31.labels[0]
    checks = [
        ("SD(phi1, phi2, phi3) on the complete graph K5", lambda: contiguity_distance(phis).value, 0),
        ("SD(id, c0, phi) on the triangle boundary", lambda: contiguity_distance(list(m32.values())).value, 1),
        ("SD(id, c0) on the triangle boundary, induced mode",
         lambda: contiguity_distance([m32["id"], m32["c0"]], mode="induced").value, 2),
        ("scat(K5)", lambda: scat(k31).value, 2),
        ("scat(sd K5)", lambda: scat(sd31).value, 1),
        ("scat(triangulated disk)", lambda: scat(k33).value, 1),
        ("SD(i1, i2, i3), axis inclusions K5 -> K5^3",
         lambda: contiguity_distance([axis_inclusion(k31, 3, j, v0, max_vertices=125) for j in (1, 2, 3)]).value, 2),
        ("SD(sd i1, sd i2, sd i3) into sd(K5^3)", lambda: subdivided_axis_distance(k31, 3).value, 1),
    ]
    ok = all([timed(*c) for c in checks])
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
