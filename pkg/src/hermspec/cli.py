"""Command-line front end emitting machine-readable JSON run reports.

Exit codes: 0 success / all checks pass, 1 verification failure, 2 usage or
parse error, 3 resource cap exceeded. The "results" object in a report is a
pure function of the input file and recorded parameters: floats are rounded
to 9 significant digits at serialization, and repeated runs (any worker
count) produce byte-identical results.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction

from . import __version__
from .cover import certify_gap, cover_radius_lower
from .errors import CapExceededError, EdgeListError
from .graphs import (
    Graph,
    Orientation,
    components,
    induced_subgraph,
    is_connected,
    parse_edge_list,
)
from .matchings import matching_counts, matching_polynomial, matching_radius
from .orientations import (
    BRUTE_CAP_EDGES,
    FAMILY_CAP_EDGES,
    TREE_CAP_EDGES,
    brute_force_extremes,
    conditional_tree,
    expected_charpoly_brute,
    expected_charpoly_fast,
    greedy_orient_max,
    greedy_orient_min,
    verify_interlacing_family,
    witness_check,
)
from .spectral import eigenvalues, hermitian_matrix, spectral_radius

WITNESS_LAMBDAS = (Fraction(0), Fraction(3, 10), Fraction(1, 2), Fraction(7, 10), Fraction(1))


def _round9(obj):
    """Recursively round floats to 9 significant digits for stable output."""
    if isinstance(obj, float):
        return float(f"{obj:.9g}")
    if isinstance(obj, dict):
        return {k: _round9(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round9(v) for v in obj]
    return obj


def _emit(report: dict, path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if path is None or path == "-":
        print(text)
    else:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def _load_graph(path: str) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def _base_report(command: str, args, g: Graph, results: dict, t0: float) -> dict:
    params = {
        "tol": args.tol,
        "seed": args.seed,
        "cap_edges": args.cap_edges,
    }
    if hasattr(args, "depth"):
        params["depth"] = args.depth
    if getattr(args, "mode", None):
        params["mode"] = args.mode
    if getattr(args, "method", None):
        params["method"] = args.method
    if getattr(args, "check", None):
        params["check"] = args.check
    if getattr(args, "workers", None):
        params["workers"] = args.workers
    if getattr(args, "per_component", False):
        params["per_component"] = True
    return {
        "command": command,
        "input": {
            "path": args.input,
            "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
        },
        "parameters": _round9(params),
        "results": _round9(results),
        "timings": {"total_s": round(time.time() - t0, 3)},
    }


def cmd_analyze(args) -> int:
    t0 = time.time()
    g = _load_graph(args.input)
    mu = matching_polynomial(g)
    results = {
        "n": g.n,
        "m": g.m,
        "components": components(g),
        "matching_counts": matching_counts(g),
        "mu": {"coeffs": [int(c) for c in mu.coeffs], "pretty": mu.pretty()},
        "rho_mu": matching_radius(g, args.tol) if g.n else 0.0,
    }
    _emit(_base_report("analyze", args, g, results, t0), args.json)
    return 0


def cmd_orient(args) -> int:
    t0 = time.time()
    g = _load_graph(args.input)
    rho_mu = matching_radius(g, args.tol) if g.n else 0.0
    results: dict = {"mode": args.mode, "method": args.method, "rho_mu": rho_mu}
    if args.method == "greedy":
        if args.mode == "min":
            o, val = greedy_orient_min(g, args.tol)
        else:
            o, val = greedy_orient_max(g, args.tol)
    else:
        ext = brute_force_extremes(g, args.tol, cap=args.cap_edges, workers=args.workers)
        if args.mode == "min":
            o, val = ext.min_orientation, ext.min_lambda1
        else:
            o, val = ext.max_orientation, ext.max_rho
        results["histogram"] = [[v, c] for v, c in ext.histogram.items()]
    results["orientation"] = {"signs": list(o.signs)}
    if args.mode == "min":
        results["lambda1"] = val
        results["bound_satisfied"] = bool(val <= rho_mu + args.tol)
    else:
        results["rho"] = val
        results["bound_satisfied"] = bool(val >= rho_mu - args.tol)
    _emit(_base_report("orient", args, g, results, t0), args.json)
    return 0


def _sample_orientations(g: Graph, seed: int, full_limit: int = 4096,
                         sample: int = 100) -> list[tuple[int, ...]]:
    total = 1 << g.m
    if total <= full_limit:
        return [tuple(1 - 2 * ((idx >> (g.m - 1 - i)) & 1) for i in range(g.m))
                for idx in range(total)]
    rng = random.Random(seed)
    return [tuple(rng.choice((1, -1)) for _ in range(g.m)) for _ in range(sample)]


def _check_matchpol(g: Graph, args) -> tuple[bool, dict]:
    if g.m > min(args.cap_edges, BRUTE_CAP_EDGES):
        raise CapExceededError(f"matchpol check needs m <= {args.cap_edges}")
    avg = expected_charpoly_brute(g, (), cap=args.cap_edges)
    mu = matching_polynomial(g)
    ok = avg == mu
    return ok, {
        "average_coeffs": [str(c) for c in avg.coeffs],
        "mu_coeffs": [int(c) for c in mu.coeffs],
        "exact_equality": ok,
    }


def _check_family(g: Graph, args) -> tuple[bool, dict]:
    cap = min(args.cap_edges, FAMILY_CAP_EDGES)
    rep = verify_interlacing_family(g, tol=args.tol, cap=cap, seed=args.seed)
    return rep.passed, {
        "tree_checks": {
            "nodes": rep.nodes,
            "internal_pairs": rep.internal_pairs,
            "failures": rep.failures,
            "escalations": rep.escalations,
        }
    }


def _check_symmetry(g: Graph, args) -> tuple[bool, dict]:
    failures = []
    sampled = _sample_orientations(g, args.seed)
    for signs in sampled:
        vals = eigenvalues(hermitian_matrix(g, Orientation(signs)), args.tol)
        scale = 1.0 + (abs(vals[0]) if vals else 0.0)
        sym = all(abs(vals[i] + vals[-1 - i]) <= args.tol * scale for i in range(len(vals)))
        rho_eq = (not vals) or abs(max(vals[0], abs(vals[-1])) - vals[0]) <= args.tol * scale
        if not (sym and rho_eq):
            failures.append(list(signs))
    return not failures, {"orientations_checked": len(sampled), "failures": failures}


def _check_fastexp(g: Graph, args) -> tuple[bool, dict]:
    rng = random.Random(args.seed)
    prefixes: list[tuple[int, ...]] = []
    if g.m <= 8:
        for k in range(g.m + 1):
            for idx in range(1 << k):
                prefixes.append(tuple(1 - 2 * ((idx >> (k - 1 - i)) & 1) for i in range(k)))
    else:
        for _ in range(100):
            k = rng.randint(0, g.m)
            prefixes.append(tuple(rng.choice((1, -1)) for _ in range(k)))
    bad = []
    for pa in prefixes:
        fast = expected_charpoly_fast(g, pa)
        brute = expected_charpoly_brute(g, pa, cap=args.cap_edges)
        if fast != brute:
            bad.append(list(pa))
    return not bad, {"prefixes_checked": len(prefixes), "failures": bad}


def _check_witness(g: Graph, args) -> tuple[bool, dict]:
    if g.m > TREE_CAP_EDGES:
        raise CapExceededError(f"witness check needs m <= {TREE_CAP_EDGES}")
    o, _ = greedy_orient_min(g, args.tol)
    failures = []
    checked = 0
    for k in range(g.m):
        prefix = o.signs[:k]
        for lam in WITNESS_LAMBDAS:
            rep = witness_check(g, prefix, lam, tol=args.tol)
            checked += 1
            if not rep.passed:
                failures.append({"k": k, "lam": str(lam),
                                 "max_coeff_diff": rep.max_coeff_diff})
    return not failures, {"cases_checked": checked, "failures": failures}


_CHECKS = {
    "matchpol": _check_matchpol,
    "family": _check_family,
    "symmetry": _check_symmetry,
    "fastexp": _check_fastexp,
    "witness": _check_witness,
}


def cmd_verify(args) -> int:
    t0 = time.time()
    g = _load_graph(args.input)
    ok, details = _CHECKS[args.check](g, args)
    results = {"check": args.check, "passed": ok, "details": details}
    _emit(_base_report("verify", args, g, results, t0), args.json)
    return 0 if ok else 1


def cmd_ucover(args) -> int:
    t0 = time.time()
    g = _load_graph(args.input)
    comps = components(g)
    if len(comps) > 1 and not args.per_component:
        print("error: input is disconnected; pass --per-component", file=sys.stderr)
        return 2
    per = []
    for comp in comps:
        sub = induced_subgraph(g, comp) if len(comps) > 1 else g
        values = [cover_radius_lower(sub, d, tol=args.tol) for d in range(args.depth + 1)]
        cert = certify_gap(sub, tol=args.tol, max_depth=args.depth)
        per.append({"vertices": comp, "values": values, "certificate": cert.to_dict()})
    results = per[0] if len(per) == 1 else {"components": per}
    _emit(_base_report("ucover", args, g, results, t0), args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermspec",
        description="Orientations of graphs with extremal Hermitian adjacency spectra",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", required=True, help="edge-list file")
        p.add_argument("--tol", type=float, default=1e-10)
        p.add_argument("--cap-edges", type=int, default=BRUTE_CAP_EDGES)
        p.add_argument("--seed", type=int, default=1729)
        p.add_argument("--json", default=None, help="report path (default: stdout)")

    p = sub.add_parser("analyze", help="counts, matching polynomial, rho_mu")
    common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("orient", help="search for an extremal orientation")
    common(p)
    p.add_argument("--mode", choices=("min", "max"), default="min")
    p.add_argument("--method", choices=("greedy", "brute"), default="greedy")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_orient)

    p = sub.add_parser("verify", help="run one verification check")
    common(p)
    p.add_argument("--check", choices=sorted(_CHECKS), required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ucover", help="walk-tree lower bounds and gap certificate")
    common(p)
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--per-component", action="store_true")
    p.set_defaults(func=cmd_ucover)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EdgeListError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
