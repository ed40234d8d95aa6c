"""Command line interface.

Exit codes: 0 success, 2 bad input or configuration, 3 a size cap tripped,
4 a spanner check failed under --require-feasible, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .errors import (
    BadSpec,
    DirspanError,
    ExplosionCap,
    GraphError,
    GraphSyntaxError,
    NumericalFailure,
    PathExplosion,
    TooLarge,
)
from .generate import generate_instance, parse_gen_spec
from .io import dumps_report, serialize_graph
from .lp import LpSolution, build_lp, export_lp_text, solve_lp
from .pipeline import Caps, RunConfig, caps_from_env, load_input, run_claims, run_oracle, run_solve
from .verify import demand_distance_rows, is_k_spanner

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_CAP = 3
EXIT_INFEASIBLE = 4
EXIT_NUMERICAL = 5


def _add_common(p, with_trials=True):
    p.add_argument("input", help="graph file path, or gen:family:key=value,... to generate")
    p.add_argument("-k", type=int, required=True, help="stretch factor (integer >= 1)")
    p.add_argument("--mode", choices=["auto", "unit", "general"], default="auto")
    p.add_argument("--alpha", type=float, default=None, help="override the sampling constant")
    p.add_argument("--seed", type=int, default=0)
    if with_trials:
        p.add_argument("--trials", type=int, default=1)
        p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    p.add_argument("--require-feasible", action="store_true")
    p.add_argument("--max-paths", type=int, default=None)
    p.add_argument("--max-hops", type=int, default=None)
    p.add_argument("--max-free-edges", type=int, default=None)
    p.add_argument("--max-trees", type=int, default=None)


def _caps(args):
    caps = caps_from_env()
    updates = {}
    if getattr(args, "max_paths", None) is not None:
        updates["max_paths"] = args.max_paths
    if getattr(args, "max_hops", None) is not None:
        updates["max_hops"] = args.max_hops
    if getattr(args, "max_free_edges", None) is not None:
        updates["max_free_edges"] = args.max_free_edges
    if getattr(args, "max_trees", None) is not None:
        updates["max_trees"] = args.max_trees
    if updates:
        from dataclasses import replace

        caps = replace(caps, **updates)
    return caps


def _config(args):
    if args.k < 1:
        raise BadSpec(f"stretch factor must be >= 1, got {args.k}")
    return RunConfig(
        k=args.k,
        input=args.input,
        mode=args.mode,
        alpha_override=args.alpha,
        seed=args.seed,
        trials=getattr(args, "trials", 1),
        caps=_caps(args),
        jobs=getattr(args, "jobs", 1),
        require_feasible=args.require_feasible,
        output=args.out,
    )


def _write_report(report, args):
    text = dumps_report(report) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args):
    config = _config(args)
    g, _ = load_input(config.input)
    opt = None
    if args.oracle:
        opt = run_oracle(config, g=g)["opt"]
    report = run_solve(config, g=g, opt=opt)
    _write_report(report, args)
    frac = report["aggregate"]["feasible_fraction"]
    print(
        f"n={g.n} m={g.m} k={config.k} lp={report['lp']['value']:.6g} "
        f"alpha={report['alpha']:.6g} trials={config.trials} feasible={frac}",
        file=sys.stderr,
    )
    if config.require_feasible and frac is not None and frac < 1.0:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_lp(args):
    config = _config(args)
    g, _ = load_input(config.input)
    model = build_lp(g, config.k, caps=config.caps.path_caps())
    sol = solve_lp(model)
    if args.export_lp:
        with open(args.export_lp, "w", encoding="utf-8") as fh:
            fh.write(export_lp_text(model))
    report = {
        "n": g.n,
        "m": g.m,
        "k": config.k,
        "status": sol.status,
        "objective": sol.objective_value,
        "x": list(sol.x) if sol.x is not None else None,
    }
    _write_report(report, args)
    print(f"lp objective {sol.objective_value:.10g} ({sol.status})", file=sys.stderr)
    return EXIT_OK


def _cmd_round(args):
    config = _config(args)
    g, _ = load_input(config.input)
    with open(args.lp, "r", encoding="utf-8") as fh:
        dump = json.load(fh)
    if dump.get("m") != g.m or dump.get("n") != g.n:
        raise BadSpec(f"LP dump is for n={dump.get('n')}, m={dump.get('m')}; graph has n={g.n}, m={g.m}")
    sol = LpSolution(
        status=dump.get("status", "optimal"),
        x=tuple(float(v) for v in dump["x"]),
        f={},
        objective_value=float(dump["objective"]),
    )
    report = run_solve(config, g=g, sol=sol)
    _write_report(report, args)
    frac = report["aggregate"]["feasible_fraction"]
    print(f"rounded {config.trials} trials, feasible fraction {frac}", file=sys.stderr)
    if config.require_feasible and frac is not None and frac < 1.0:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _read_subgraph_edges(g, path):
    chosen = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphSyntaxError(f"subgraph line must be 'tail head', got {line!r}", line=lineno)
            try:
                tail, head = int(parts[0]), int(parts[1])
            except ValueError:
                raise GraphSyntaxError(f"endpoints must be integers, got {line!r}", line=lineno) from None
            if (tail, head) not in g.edge_index:
                raise BadSpec(f"subgraph edge ({tail}, {head}) is not an edge of the graph")
            chosen.append(g.edge_index[(tail, head)])
    return frozenset(chosen)


def _cmd_verify(args):
    config = _config(args)
    g, _ = load_input(config.input)
    h_edges = _read_subgraph_edges(g, args.subgraph)
    check = is_k_spanner(g, h_edges, config.k, g_dist=demand_distance_rows(g))
    violation = None
    if check.violation is not None:
        d, dist_g, dist_h = check.violation
        tail, head, _ = g.edges[d]
        # JSON has no infinity; an unreachable head is reported as null
        violation = {
            "edge": d,
            "tail": tail,
            "head": head,
            "dist_g": dist_g,
            "dist_h": dist_h if math.isfinite(dist_h) else None,
        }
    report = {"n": g.n, "m": g.m, "k": config.k, "h_size": len(h_edges), "feasible": check.feasible, "violation": violation}
    _write_report(report, args)
    print(f"subgraph of {len(h_edges)} edges: feasible={check.feasible}", file=sys.stderr)
    if config.require_feasible and not check.feasible:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_oracle(args):
    config = _config(args)
    report = run_oracle(config)
    _write_report(report, args)
    print(f"opt {report['opt']} (witness of {len(report['witness'])} edges)", file=sys.stderr)
    return EXIT_OK


def _cmd_claims(args):
    config = _config(args)
    report = run_claims(config)
    _write_report(report, args)
    c1 = report["claim1"]
    c2 = report["claim2"]
    print(
        f"demands={report['demands_checked']} trees={report['trees_enumerated']} "
        f"claim1 {c1['disagreements']}/{c1['checks']} disagreements, "
        f"claim2 {c2['violations']} violations (min mass {c2['min_cut_mass']})",
        file=sys.stderr,
    )
    if c1["disagreements"] or c2["violations"]:
        return EXIT_INFEASIBLE
    return EXIT_OK


def _cmd_gen(args):
    g = generate_instance(parse_gen_spec(args.spec))
    text = serialize_graph(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    print(f"generated n={g.n} m={g.m}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="dirspan", description="Directed k-spanner approximation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="LP, rounding trials, and feasibility checks")
    _add_common(p)
    p.add_argument("--oracle", action="store_true", help="also compute the exact optimum")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("lp", help="solve the LP relaxation and dump x values")
    _add_common(p, with_trials=False)
    p.add_argument("--export-lp", default=None, help="also write the model in LP text format")
    p.set_defaults(func=_cmd_lp)

    p = sub.add_parser("round", help="rounding trials from an existing LP dump")
    _add_common(p)
    p.add_argument("--lp", required=True, help="JSON dump produced by the lp subcommand")
    p.set_defaults(func=_cmd_round)

    p = sub.add_parser("verify", help="check a candidate subgraph")
    _add_common(p, with_trials=False)
    p.add_argument("--subgraph", required=True, help="file of 'tail head' lines selecting edges")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("oracle", help="exact minimum spanner by branch and bound")
    _add_common(p, with_trials=False)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("claims", help="cut-structure checks on every demand")
    _add_common(p)
    p.set_defaults(func=_cmd_claims)

    p = sub.add_parser("gen", help="write a generated instance as graph text")
    p.add_argument("--spec", required=True, help="family:key=value,... e.g. er:n=10,p=0.3,seed=1")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GraphSyntaxError, GraphError, BadSpec, FileNotFoundError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (PathExplosion, TooLarge, ExplosionCap) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except DirspanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
