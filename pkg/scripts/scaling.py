"""Run the three scaling benchmarks and print their tables and fits.

  grid                      root separator of the division pipeline vs n
  random-exposed-intervals  largest saturated family through 0 vs 1/sigma
  random-exposed-segments   largest density_lb of planar families vs 1/sigma
"""

from __future__ import annotations

import argparse
import io
import json
from contextlib import redirect_stdout

from sepkit.cli import main


def bench(*argv: str) -> dict:
    buf = io.StringIO()
    with redirect_stdout(buf):
        main(["bench", *argv])
    return json.loads(buf.getvalue())


def show(report: dict) -> None:
    print(f"== {report['family']}: {report['measured']}")
    rows = report["rows"]
    keys = list(rows[0])
    print("  " + "  ".join(f"{k:>10}" for k in keys))
    for r in rows:
        print("  " + "  ".join(f"{r[k]:>10.4g}" for k in keys))
    fit = report["fit"]
    if fit["status"] == "ok":
        print(f"  fitted exponent {fit['exponent']:.3f}, residual {fit['residual']:.3g}")
    else:
        print(f"  {fit['status']}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()
    common = ["--seed", str(args.seed), "--threads", str(args.threads)]
    show(bench("--family", "grid", "--sizes", "16,32,64,128", *common))
    show(bench("--family", "random-exposed-intervals", "--sigmas", "0.5,0.2,0.1,0.05", "--trials", str(args.trials), *common))
    show(bench("--family", "random-exposed-segments", "--sigmas", "0.5,0.35,0.25", "--trials", str(max(1, args.trials // 4)), *common))
