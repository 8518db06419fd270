"""Measure the empirical constants pinned in the package.

Prints the worst observed ratio for each constant so the pinned values
can be checked against fresh data:

  separator size / (n/l + 4 l h^2 log n)   over the fuzz corpus
  family size * sigma^2                      greedy interval families through 0
  density_lb * sigma^6                       planar sigma-exposed segment families
"""

from __future__ import annotations

import argparse
import time

from sepkit import exposure as ex
from sepkit.fuzz import fuzz_corpus
from sepkit.separators import C_IMPL, SeparatorCertificate, prs_separate


def separator_ratio(seed: int, count: int) -> None:
    worst, worst_case, t0, kinds = 0.0, None, time.time(), {"separator": 0, "minor": 0}
    for case in fuzz_corpus(seed, count):
        cert = prs_separate(case.graph, case.l, case.h)
        if isinstance(cert, SeparatorCertificate):
            kinds["separator"] += 1
            if cert.metadata["ratio"] > worst:
                worst, worst_case = cert.metadata["ratio"], case.name + f" l={case.l} h={case.h}"
        else:
            kinds["minor"] += 1
    print(f"separator: worst ratio {worst:.4f} on {worst_case}; pinned C_IMPL={C_IMPL}; {kinds}; {time.time() - t0:.1f}s")


def point_cover(seeds: int) -> None:
    worst = 0.0
    for sigma in (0.5, 0.2, 0.1):
        sizes = [len(ex.point_cover_family(sigma, s)) for s in range(seeds)]
        worst = max(worst, max(sizes) * sigma**2)
        print(f"point cover sigma={sigma}: max {max(sizes)}, max*sigma^2={max(sizes) * sigma**2:.3f}")
    print(f"point cover: worst {worst:.3f}; pinned C_PT={ex.C_PT}")


def density(seeds: int, n: int) -> None:
    worst = 0.0
    for sigma in (0.5, 0.25):
        vals = [ex.density_lower_bound(ex.generate_exposed(n, sigma, 2, s)).density_lb for s in range(seeds)]
        worst = max(worst, max(vals) * sigma**6)
        print(f"density sigma={sigma}: max {max(vals)}, max*sigma^6={max(vals) * sigma**6:.5f}")
    print(f"density: worst {worst:.5f}; pinned C_DENS={ex.C_DENS}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seeds", type=int, default=100)
    ap.add_argument("--segments", type=int, default=60)
    args = ap.parse_args()
    separator_ratio(args.seed, args.count)
    point_cover(args.seeds)
    density(args.seeds, args.segments)
