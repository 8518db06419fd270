"""Command-line entry point.

Exit codes: 0 ok, 1 parse error, 2 usage error, 3 expansion violation,
4 oracle breach, 5 certificate failed validation.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import exposure as ex
from .divisions import (
    Division,
    DivisionParams,
    OracleBreach,
    divide_with_profile,
    make_oracle,
    validate_division,
    weakly_hyperfinite_check,
)
from .graph import Graph, GraphError, grid_graph, load_graph
from .separators import (
    ExpansionParams,
    ExpansionViolation,
    SeparatorCertificate,
    certificate_from_json,
    expansion_separate,
    prs_separate,
    validate_certificate,
)

EXIT_OK, EXIT_PARSE, EXIT_USAGE, EXIT_EXPANSION, EXIT_BREACH, EXIT_INVALID = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _grid_spec(text: str) -> tuple[int, int]:
    try:
        r, c = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like RxC, got {text!r}") from None
    if r < 1 or c < 1:
        raise argparse.ArgumentTypeError("grid dimensions must be >= 1")
    return r, c


def _float_list(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x]


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x]


def _expansion_spec(text: str) -> ExpansionParams:
    try:
        kv = dict(part.split("=", 1) for part in text.split(","))
        return ExpansionParams(k=int(kv["k"]), c=float(kv["c"]))
    except (KeyError, ValueError) as exc:
        raise argparse.ArgumentTypeError(f"expected c=<float>,k=<int>: {exc}") from None


def _graph(args) -> Graph:
    if args.grid is not None:
        return grid_graph(*args.grid)
    return load_graph(args.graph)


def _with_labels(g: Graph, payload: dict) -> dict:
    if g.labels is not None:
        payload["labels"] = list(g.labels)
    return payload


def _fit(xs, ys) -> dict:
    pts = [(x, y) for x, y in zip(xs, ys) if x > 0 and y > 0]
    if len({x for x, _ in pts}) < 2:
        return {"status": "insufficient points"}
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return {
        "status": "ok",
        "exponent": float(slope),
        "intercept": float(intercept),
        "residual": float(np.sqrt(np.mean(resid**2))),
    }


# -- commands ----------------------------------------------------------------


def cmd_separate(args) -> tuple[dict, int]:
    g = _graph(args)
    if g.n == 0:
        raise UsageError("graph is empty")
    code = EXIT_OK
    out: dict
    if args.expansion is not None:
        if args.l is not None or args.h is not None:
            raise UsageError("--expansion excludes --l/--h")
        try:
            sch, cert = expansion_separate(g, args.expansion)
            out = cert.to_json()
        except ExpansionViolation as exc:
            sch, cert = exc.schedule, exc.certificate
            out = cert.to_json()
            out["error"] = "expansion-violation"
            code = EXIT_EXPANSION
        out["schedule"] = sch.to_json()
    else:
        if args.l is None or args.h is None:
            raise UsageError("give --l and --h, or --expansion")
        cert = prs_separate(g, args.l, args.h)
        out = cert.to_json()
    if args.self_check:
        rep = validate_certificate(g, cert)
        out["validation"] = rep.to_json()
        if not rep.ok:
            code = EXIT_INVALID
    return _with_labels(g, out), code


def _division_json(g: Graph, params: DivisionParams, oracle: str, self_check: bool) -> tuple[dict, int]:
    sched, div, levels, seps = divide_with_profile(g, params, make_oracle(oracle))
    out = {
        "b": sched.b,
        "eps": params.eps,
        "oracle": oracle,
        **div.to_json(),
        "levels": [list(r) for r in levels],
        "separator_sizes": seps,
    }
    code = EXIT_OK
    if self_check:
        rep = validate_division(g, div, sched.b)
        wh = weakly_hyperfinite_check(g, div, sched.b)
        out["validation"] = rep.to_json()
        out["weakly_hyperfinite"] = wh.to_json()
        if not (rep.ok and wh.ok):
            code = EXIT_INVALID
    return out, code


def cmd_divide(args) -> tuple[dict, int]:
    g = _graph(args)
    params = DivisionParams(
        eps=args.eps, alpha=args.alpha, beta=args.beta, c_sep=args.c_sep, c_dd=args.c_dd, b_override=args.b
    )
    try:
        out, code = _division_json(g, params, args.oracle, args.self_check)
    except OracleBreach as exc:
        cert = exc.certificate
        return {
            "error": "oracle-breach",
            "reason": exc.reason,
            "piece": list(exc.piece) if exc.piece is not None else None,
            "certificate": cert.to_json() if hasattr(cert, "to_json") else None,
        }, EXIT_BREACH
    return _with_labels(g, out), code


def _read_segments(path) -> list[ex.Segment]:
    return ex.parse_segments(Path(path).read_text(encoding="utf-8"))


def cmd_expose(args) -> tuple[dict, int]:
    segs = _read_segments(args.segments)
    chk = ex.is_exposed(segs, args.sigma)
    k = args.k if args.k is not None else 0
    kchk = ex.is_k_exposed(segs, args.sigma, k)
    out = {
        "sigma": args.sigma,
        "n": len(segs),
        "exposed": chk.exposed,
        "offender": list(chk.offender) if chk.offender else None,
        "k": k,
        "k_exposed": kchk.exposed,
        "shadow_counts": kchk.counts,
    }
    if args.partition:
        sg = ex.shadow_graph(segs, args.sigma)
        parts = ex.degeneracy_partition(sg)
        out["degeneracy"] = sg.degeneracy
        out["parts"] = parts
        out["parts_exposed"] = [ex.is_exposed([segs[i] for i in p], args.sigma).exposed for p in parts]
    return out, EXIT_OK


def cmd_density(args) -> tuple[dict, int]:
    segs = _read_segments(args.segments)
    cert = ex.density_lower_bound(segs)
    out = cert.to_json(segs)
    code = EXIT_OK
    if args.self_check:
        rep = ex.validate_density(segs, cert)
        out["validation"] = rep.to_json()
        if not rep.ok:
            code = EXIT_INVALID
    return out, code


GENERATORS = ("exposed-segments", "exposed-intervals", "point-intervals", "pencil")


def cmd_generate(args) -> tuple[str, int]:
    fam = args.family
    if fam == "exposed-segments":
        segs = ex.generate_exposed(args.n, args.sigma, args.d, args.seed, k=args.k)
    elif fam == "exposed-intervals":
        segs = ex.generate_exposed(args.n, args.sigma, 1, args.seed, k=args.k)
    elif fam == "point-intervals":
        segs = ex.generate_exposed(args.n, args.sigma, 1, args.seed, kind="point", k=args.k)
    else:
        segs = ex.generate_pencil(args.n, args.sigma, args.d, args.seed)
    return ex.format_segments(segs), EXIT_OK


def _bench_trial(family: str, x, seed: int, args) -> float:
    if family == "grid":
        g = grid_graph(x, x)
        params = DivisionParams(eps=args.eps, b_override=args.b)
        _, _, _, seps = divide_with_profile(g, params, make_oracle(args.oracle))
        return float(seps[0]) if seps else 0.0
    if family == "random-exposed-intervals":
        return float(len(ex.point_cover_family(x, seed, tries=args.tries)))
    segs = ex.generate_exposed(args.n, x, 2, seed)
    return float(ex.density_lower_bound(segs).density_lb)


def cmd_bench(args) -> tuple[dict, int]:
    fam = args.family
    if fam == "grid":
        xs = args.sizes or [16, 32, 64, 128]
    else:
        xs = args.sigmas or [0.5, 0.2, 0.1]
    jobs = [(x, args.seed + t) for x in xs for t in range(args.trials)]
    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        vals = list(pool.map(lambda job: _bench_trial(fam, job[0], job[1], args), jobs))
    rows = []
    for i, x in enumerate(xs):
        chunk = vals[i * args.trials : (i + 1) * args.trials]
        if fam == "grid":
            rows.append({"side": x, "n": x * x, "separator": max(chunk)})
        else:
            rows.append({"sigma": x, "inv_sigma": 1.0 / x, "max": max(chunk), "mean": float(np.mean(chunk))})
    if fam == "grid":
        fit = _fit([r["n"] for r in rows], [r["separator"] for r in rows])
        measured = "root separator size of the division pipeline vs n"
    else:
        fit = _fit([r["inv_sigma"] for r in rows], [r["max"] for r in rows])
        measured = "max family size vs 1/sigma" if fam == "random-exposed-intervals" else "max density_lb vs 1/sigma"
    return {"family": fam, "trials": args.trials, "seed": args.seed, "measured": measured, "rows": rows, "fit": fit}, EXIT_OK


def cmd_validate(args) -> tuple[dict, int]:
    data = json.loads(Path(args.cert).read_text(encoding="utf-8"))
    kind = data.get("type")
    if kind == "density" or "radius" in data:
        if args.segments is None:
            raise UsageError("density certificates need --segments")
        segs = _read_segments(args.segments)
        cert = ex.DensityCertificate(tuple(data["center"]), float(data["radius"]), tuple(data["hits"]))
        rep = ex.validate_density(segs, cert)
    else:
        if args.graph is None and args.grid is None:
            raise UsageError("give --graph or --grid")
        g = _graph(args)
        if "clusters" in data:
            div = Division.from_clusters(g.n, data["clusters"])
            if div.total_excess != data.get("total_excess", div.total_excess):
                div = Division(div.n, div.clusters, div.multiplicity, div.boundary, div.interior, data["total_excess"])
            rep = validate_division(g, div, data["b"])
        else:
            rep = validate_certificate(g, certificate_from_json(data))
    return rep.to_json(), EXIT_OK if rep.ok else EXIT_INVALID


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--threads", type=int, default=1)

    graph_src = argparse.ArgumentParser(add_help=False)
    grp = graph_src.add_mutually_exclusive_group()
    grp.add_argument("--graph", help="edge-list file")
    grp.add_argument("--grid", type=_grid_spec, help="in-process RxC grid")

    checked = argparse.ArgumentParser(add_help=False)
    checked.add_argument("--no-self-check", dest="self_check", action="store_false")

    ap = argparse.ArgumentParser(prog="sepkit", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("separate", parents=[common, graph_src, checked], help="separator or shallow-minor certificate")
    p.add_argument("--l", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--expansion", type=_expansion_spec, help="c=<float>,k=<int>")
    p.set_defaults(func=cmd_separate, needs_graph=True)

    p = sub.add_parser("divide", parents=[common, graph_src, checked], help="small-excess division")
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--c-sep", type=float, default=1.0)
    p.add_argument("--c-dd", type=float, default=4.0)
    p.add_argument("--b", type=int, default=None, help="override the piece-size threshold")
    p.add_argument("--oracle", default="grid-median", help="grid-median | bfs-level | prs:L,H | module:function")
    p.set_defaults(func=cmd_divide, needs_graph=True)

    p = sub.add_parser("expose", parents=[common], help="exposure report for a segment file")
    p.add_argument("--segments", required=True)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--partition", action="store_true")
    p.set_defaults(func=cmd_expose)

    p = sub.add_parser("density", parents=[common, checked], help="density lower-bound certificate")
    p.add_argument("--segments", required=True)
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("generate", parents=[common], help="random exposed families as CSV")
    p.add_argument("--family", choices=GENERATORS, default="exposed-segments")
    p.add_argument("--n", type=int, default=50)
    p.add_argument("--sigma", type=float, required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--k", type=int, default=0)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("bench", parents=[common], help="scaling table with a log-log fit")
    p.add_argument("--family", choices=("grid", "random-exposed-intervals", "random-exposed-segments"), required=True)
    p.add_argument("--sizes", type=_int_list, default=None, help="grid sides, e.g. 16,32,64,128")
    p.add_argument("--sigmas", type=_float_list, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--eps", type=float, default=0.5, help="grid family: b = 128 at the default, so every size splits")
    p.add_argument("--b", type=int, default=None)
    p.add_argument("--oracle", default="grid-median")
    p.add_argument("--n", type=int, default=60, help="segments per family")
    p.add_argument("--tries", type=int, default=3000, help="candidates per interval family")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("validate", parents=[common, graph_src], help="re-check a certificate file")
    p.add_argument("--cert", required=True)
    p.add_argument("--segments", default=None)
    p.set_defaults(func=cmd_validate)
    return ap


def _text(payload) -> str:
    if isinstance(payload, str):
        return payload
    if "checks" in payload:
        lines = [f"{payload['subject']}: {'PASS' if payload['ok'] else 'FAIL'}"]
        for c in payload["checks"]:
            lines.append(f"  [{'ok' if c['passed'] else 'FAIL'}] {c['name']} {c.get('detail', '')}".rstrip())
        return "\n".join(lines) + "\n"
    lines = []
    for key, val in payload.items():
        if isinstance(val, list) and len(val) > 12:
            val = f"[{len(val)} items]"
        elif isinstance(val, dict) and "checks" in val:
            val = "PASS" if val["ok"] else "FAIL: " + ", ".join(c["name"] for c in val["checks"] if not c["passed"])
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "needs_graph", False) and args.graph is None and args.grid is None:
        ap.error("one of --graph or --grid is required")
    try:
        payload, code = args.func(args)
    except (GraphError, ex.SegmentFormatError, json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"sepkit: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, ValueError) as exc:
        print(f"sepkit: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(payload, str):
        text = payload
    elif args.format == "text":
        text = _text(payload)
    else:
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
