"""Command-line interface.

Exit codes: 0 on success/verified, 1 on a falsified claim, 2 on usage or
budget errors (argparse uses 2 for usage already).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import graph6
from .bounds import BoundContext, union_lower_bound
from .enumeration import ClassFilter, DEFAULT_BUDGET, enumerate_class, stratify
from .graph import Graph, build_named, connectivity_census, structural_census
from .spectrum import (BudgetExceededError, CutsetSpectrum, compare, cutset_spectrum,
                       monte_carlo_unreliability, unreliability)
from .verify import (Universe, verify_all, verify_biconnected_reduction, verify_k44,
                     verify_k44_uniqueness, verify_lemma, verify_regular,
                     verify_tables, verify_consistency)


def _add_graph_inputs(p: argparse.ArgumentParser):
    p.add_argument("--builder", help="family spec, e.g. complete_bipartite:4,4")
    p.add_argument("--graph6", help="inline graph6 string")
    p.add_argument("--file", help="newline-delimited graph6 file (first entry used)")


def _load_graph(args) -> Graph:
    if args.builder:
        return build_named(args.builder)
    if args.graph6:
        return graph6.decode(args.graph6)
    if args.file:
        with open(args.file) as fh:
            graphs = graph6.read_graph6_lines(fh)
        if not graphs:
            raise ValueError(f"no graphs in {args.file}")
        return graphs[0]
    raise ValueError("provide one of --builder, --graph6, --file")


def _graph_arg(spec: str) -> Graph:
    if ":" in spec or spec in ("petersen",):
        try:
            return build_named(spec)
        except ValueError:
            pass
    return graph6.decode(spec)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="umrg",
                                     description="cutset spectra, reliability bounds, "
                                                 "and exhaustive (8,16) verification")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="exact cutset spectrum")
    _add_graph_inputs(p)
    p.add_argument("--method", choices=["complement", "graycode"], default="complement")
    p.add_argument("--out", choices=["json", "csv"], default="csv")
    p.add_argument("--rho", type=float, action="append",
                   help="also evaluate the unreliability polynomial here (repeatable)")

    p = sub.add_parser("census", help="structural and connectivity censuses")
    _add_graph_inputs(p)
    p.add_argument("--out", choices=["json"], default="json")

    p = sub.add_parser("bounds", help="trivial-cut union lower bound")
    _add_graph_inputs(p)
    p.add_argument("--degrees", help="degrees-only context, e.g. 2,3,4")
    p.add_argument("--nodes", help="node selection for exact mode, e.g. 0,1,2")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--e", type=int, default=16, help="edge count for degrees-only mode")
    p.add_argument("--mode", choices=["exact-graph", "degrees-only", "refined"])

    p = sub.add_parser("enumerate", help="isomorphism-free class enumeration")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--connected", action="store_true")
    p.add_argument("--biconnected", action="store_true")
    p.add_argument("--regular", action="store_true")
    p.add_argument("--min-degree", type=int)
    p.add_argument("--backend", choices=["degree_sequence", "augmentation"],
                   default="degree_sequence")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--stratify", action="store_true",
                   help="print a JSON stratification summary instead of graphs")

    p = sub.add_parser("compare", help="coefficient dominance of two spectra")
    p.add_argument("--a", required=True, help="graph6 or builder spec")
    p.add_argument("--b", required=True, help="graph6 or builder spec")

    p = sub.add_parser("mc", help="Monte Carlo unreliability cross-check")
    _add_graph_inputs(p)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="machine-checked claim verification")
    p.add_argument("claim", choices=["k44", "uniqueness", "regular", "lemma2",
                                     "lemma3", "biconnected", "tables",
                                     "consistency", "all"])
    p.add_argument("--out", choices=["json", "text"], default="text")
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--deep", action="store_true",
                   help="run the Gray-code cross-check on every class, not a sample")

    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except BudgetExceededError as exc:
        print(f"budget error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def _dispatch(args) -> int:
    if args.command == "spectrum":
        g = _load_graph(args)
        spec = cutset_spectrum(g, method=args.method)
        if args.out == "csv":
            sys.stdout.write(spec.to_csv())
        else:
            payload = json.loads(spec.to_json())
            if args.rho:
                payload["unreliability"] = {str(r): unreliability(spec, r)
                                            for r in args.rho}
            print(json.dumps(payload, sort_keys=True))
        if args.out == "csv" and args.rho:
            for r in args.rho:
                print(f"U({r}) = {unreliability(spec, r)}")
        return 0

    if args.command == "census":
        g = _load_graph(args)
        sc = structural_census(g)
        cc = connectivity_census(g)
        print(json.dumps({
            "n": g.node_count, "e": g.edge_count,
            "degree_sequence": list(sc.degree_sequence),
            "min_degree": sc.min_degree, "regular": sc.is_regular,
            "girth": sc.girth, "triangles": sc.triangle_count,
            "squares": sc.square_count,
            "connected": cc.connected, "biconnected": cc.biconnected,
            "bridges": cc.bridges, "cut_points": cc.cut_points,
        }, sort_keys=True))
        return 0

    if args.command == "bounds":
        if args.degrees:
            degs = [int(x) for x in args.degrees.split(",")]
            ctx = BoundContext.from_degrees(degs, args.k, e=args.e)
        else:
            g = _load_graph(args)
            nodes = [int(x) for x in args.nodes.split(",")]
            ctx = BoundContext.from_graph(g, nodes, args.k)
        report = union_lower_bound(ctx, mode=args.mode)
        print(report.to_json())
        return 0

    if args.command == "enumerate":
        flt = ClassFilter(n=args.n, e=args.e,
                          connected=args.connected or None,
                          biconnected=args.biconnected or None,
                          regular=args.regular or None,
                          min_degree=args.min_degree)
        if args.stratify:
            s = stratify(flt, budget=args.budget)
            print(json.dumps({"delta_counts": {str(k): v for k, v in
                                               sorted(s.delta_counts.items())},
                              "regular_count": s.regular_count,
                              "biconnected_count": s.biconnected_count,
                              "total": s.total}, sort_keys=True))
        else:
            for g in enumerate_class(flt, budget=args.budget, backend=args.backend):
                print(graph6.encode(g))
        return 0

    if args.command == "compare":
        sa = cutset_spectrum(_graph_arg(args.a))
        sb = cutset_spectrum(_graph_arg(args.b))
        res = compare(sa, sb)
        print(json.dumps({
            "dominates": res.dominates,
            "first_divergence": res.first_divergence,
            "last_divergence": res.last_divergence,
            "near_zero_winner": res.near_zero_winner,
            "near_one_winner": res.near_one_winner,
        }, sort_keys=True))
        return 0

    if args.command == "mc":
        g = _load_graph(args)
        res = monte_carlo_unreliability(g, args.rho, args.trials, args.seed)
        exact = None
        if g.edge_count <= 20:
            exact = unreliability(cutset_spectrum(g), args.rho)
        print(json.dumps({"estimate": res.estimate, "std_error": res.std_error,
                          "trials": res.trials, "exact": exact}, sort_keys=True))
        return 0

    if args.command == "verify":
        return _run_verify(args)

    raise ValueError(f"unhandled command {args.command}")


def _run_verify(args) -> int:
    if args.claim == "all":
        agg = verify_all(jobs=args.jobs, deep=args.deep, budget=args.budget)
        if args.out == "json":
            print(json.dumps(agg, sort_keys=True))
        else:
            for rep in agg["reports"]:
                _print_report_line(rep)
            print(f"aggregate: {'PASS' if agg['pass'] else 'FAIL'}")
        return 0 if agg["pass"] else 1

    universe = Universe(jobs=args.jobs, budget=args.budget)
    fn = {
        "k44": verify_k44,
        "uniqueness": verify_k44_uniqueness,
        "regular": verify_regular,
        "lemma2": lambda u: verify_lemma(2, u),
        "lemma3": lambda u: verify_lemma(3, u),
        "biconnected": verify_biconnected_reduction,
        "tables": verify_tables,
        "consistency": lambda u: verify_consistency(u, deep=args.deep),
    }[args.claim]
    report = fn(universe)
    if args.out == "json":
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        _print_report_line(report.to_dict())
    return 0 if report.passed else 1


def _print_report_line(rep: dict):
    status = "PASS" if rep["pass"] else "FAIL"
    extras = []
    if rep["discrepancies"]:
        extras.append(f"{len(rep['discrepancies'])} discrepancies")
    if rep["witnesses"]:
        extras.append(f"{len(rep['witnesses'])} witnesses")
    suffix = f" ({', '.join(extras)})" if extras else ""
    print(f"{rep['claim_id']}: {status} [{rep['graphs_checked']} graphs]{suffix}")


if __name__ == "__main__":
    sys.exit(main())
