"""Command-line surface: verify, solve, exists, construct, reduce, tables.

Exit codes: 0 pass/solved, 1 property failure or infeasible or reference
mismatch, 2 usage or I/O trouble.  ``--json`` emits one report object with
the stable field order {command, input_digest, outcome, k, witness,
bounds, stats}.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import constructions, reduction, tables
from .detection import CodeKind, verify
from .existence import exists_red_ic
from .graphs import Graph, named_builder, parse_edge_list, parse_graph6, write_graph6
from .solver import Budget, feasible_at, lower_bound, solve_min


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("graph input (choose one)")
    src.add_argument("--graph6", metavar="STR", help="graph6 value, e.g. 'Cl'")
    src.add_argument("--graph6-file", metavar="PATH", help="file with one graph6 value")
    src.add_argument("--edgelist-file", metavar="PATH", help="file with 'n m' header then 'u v' lines")
    src.add_argument("--family", metavar="NAME", help="named builder, e.g. cycle, ladder, torus")
    src.add_argument("--params", metavar="A,B", default="", help="comma-separated family parameters")


def _load_graph(args) -> Graph:
    given = [x for x in (args.graph6, args.graph6_file, args.edgelist_file, args.family) if x]
    if len(given) != 1:
        raise SystemExit2("choose exactly one graph input option")
    if args.graph6:
        return parse_graph6(args.graph6)
    if args.graph6_file:
        with open(args.graph6_file, "rb") as fh:
            return parse_graph6(fh.read())
    if args.edgelist_file:
        with open(args.edgelist_file) as fh:
            return parse_edge_list(fh.read())
    params = [int(x) for x in args.params.split(",") if x.strip() != ""]
    return named_builder(args.family, *params)


class SystemExit2(Exception):
    """Usage or I/O error; maps to exit code 2."""


def _kind(args) -> CodeKind:
    return CodeKind.RED_IC if args.kind == "red-ic" else CodeKind.IC


def _budget(args) -> Budget | None:
    if getattr(args, "budget_nodes", None) or getattr(args, "budget_seconds", None):
        return Budget(max_nodes=args.budget_nodes, max_seconds=args.budget_seconds)
    return None


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(p if isinstance(p, bytes) else str(p).encode())
        h.update(b"\x00")
    return h.hexdigest()[:16]


def _report(command, digest, outcome, k=None, witness=None, bounds=None, stats=None) -> dict:
    return {
        "command": command,
        "input_digest": digest,
        "outcome": outcome,
        "k": k,
        "witness": list(witness) if witness is not None else None,
        "bounds": bounds,
        "stats": stats,
    }


def _emit(args, report: dict, human: str) -> None:
    if args.json:
        print(json.dumps(report))
    else:
        print(human)


# -- subcommands --------------------------------------------------------------


def cmd_verify(args) -> int:
    g = _load_graph(args)
    detectors = [int(x) for x in args.detectors.split(",") if x.strip() != ""]
    kind = _kind(args)
    v = verify(g, detectors, kind)
    digest = _digest(write_graph6(g), kind.value, sorted(detectors))
    if v is None:
        _emit(args, _report("verify", digest, "pass", k=len(detectors), witness=sorted(detectors)),
              f"pass: {len(detectors)} detectors form a valid {kind.value} code")
        return 0
    _emit(args, _report("verify", digest, f"fail: {v}"), f"fail: {v}")
    return 1


def cmd_solve(args) -> int:
    g = _load_graph(args)
    kind = _kind(args)
    out = solve_min(g, kind, budget=_budget(args), deterministic=args.deterministic)
    digest = _digest(write_graph6(g), kind.value)
    bounds = {"lower": out.lower, "upper": out.upper}
    stats = {"nodes": out.stats.nodes, "seconds": round(out.stats.elapsed, 4)}
    if out.status == "infeasible":
        _emit(args, _report("solve", digest, f"infeasible: {out.reason}", stats=stats),
              f"no {kind.value} code exists: {out.reason}")
        return 1
    human = (
        f"{out.status}: k={out.k} of n={g.n} (density {out.k}/{g.n})"
        f" witness={','.join(map(str, out.witness))} nodes={out.stats.nodes}"
    )
    _emit(args, _report("solve", digest, out.status, k=out.k, witness=out.witness,
                        bounds=bounds, stats=stats), human)
    return 0


def cmd_exists(args) -> int:
    g = _load_graph(args)
    reason = exists_red_ic(g)
    digest = _digest(write_graph6(g), "red-ic")
    if reason is None:
        _emit(args, _report("exists", digest, "yes"), "yes: a fault-tolerant code exists")
        return 0
    _emit(args, _report("exists", digest, f"no: {reason}"), f"no: {reason}")
    return 1


def cmd_feasible(args) -> int:
    g = _load_graph(args)
    kind = _kind(args)
    res = feasible_at(g, kind, args.k, budget=_budget(args), deterministic=args.deterministic)
    digest = _digest(write_graph6(g), kind.value, args.k)
    stats = {"nodes": res.stats.nodes, "seconds": round(res.stats.elapsed, 4)}
    if res.witness is not None:
        _emit(args, _report("feasible", digest, "witness", k=len(res.witness),
                            witness=res.witness, stats=stats),
              f"witness of size {len(res.witness)}: {','.join(map(str, res.witness))}")
        return 0
    outcome = "none" if res.exhaustive else "unknown (budget exhausted)"
    _emit(args, _report("feasible", digest, outcome, stats=stats), outcome)
    return 1


def cmd_construct(args) -> int:
    fam = args.what
    if fam == "star-even":
        inst = constructions.star_extremal_even(args.k)
    elif fam == "star-odd":
        inst = constructions.star_extremal_odd(args.k)
    elif fam == "cycle-odd":
        inst = constructions.cycle_extremal_odd(args.k)
    elif fam == "multipartite":
        inst = constructions.multipartite_exact(args.n)
    elif fam == "tree":
        inst = constructions.extremal_tree(args.n)
    elif fam == "g6-ring":
        inst = constructions.g6_ring(args.t)
    elif fam == "g14-ring":
        gadget = constructions.g14_gadget_search(budget_seconds=args.budget_seconds or 120.0)
        if gadget is None:
            print("gadget search exhausted its budget", file=sys.stderr)
            return 1
        inst = constructions.g14_ring(gadget, args.t)
    elif fam == "q5":
        inst = constructions.q5_code_search()
    else:  # pragma: no cover - argparse restricts choices
        raise SystemExit2(f"unknown construction {fam}")
    g6 = write_graph6(inst.graph).decode("ascii")
    digest = _digest(g6, inst.claimed_k)
    report = _report("construct", digest, inst.certificate, k=inst.claimed_k,
                     witness=inst.witness)
    report["graph6"] = g6
    if args.json:
        print(json.dumps(report))
    else:
        print(g6)
        print("witness:", " ".join(map(str, inst.witness)))
        print(f"k={inst.claimed_k} n={inst.graph.n} certificate={inst.certificate}")
    return 0


def cmd_reduce(args) -> int:
    with open(args.cnf) as fh:
        phi = reduction.parse_dimacs(fh.read())
    g, threshold = reduction.build_reduction(phi)
    g6 = write_graph6(g).decode("ascii")
    roles = {g.label(v): v for v in range(g.n)}
    sidecar = {
        "command": "reduce",
        "input_digest": _digest(args.cnf, phi),
        "n_vars": phi.n_vars,
        "n_clauses": len(phi.clauses),
        "vertices": g.n,
        "edges": g.num_edges(),
        "threshold": threshold,
        "roles": roles,
        "graph6": g6,
    }
    if args.json:
        print(json.dumps(sidecar))
    else:
        print(g6)
        print(f"K={threshold} vertices={g.n} edges={g.num_edges()}")
    return 0


def _print_table(rows, kind: str, as_json: bool) -> int:
    ok_all = True
    payload = []
    for row in rows:
        diffs = tables.diff_row(row)
        if row.partial:
            status = "partial"
            ok_all = False
        elif not diffs:
            status = "no-reference"
        elif all(d[3] for d in diffs):
            status = "PASS"
        else:
            status = "FAIL"
            ok_all = False
        payload.append({"n": row.n, "values": row.values(), "status": status,
                        "diffs": [d for d in diffs if not d[3]]})
        if not as_json:
            cells = "\t".join(str(v) for v in row.values())
            print(f"{row.n}\t{cells}\t{status}")
    if as_json:
        print(json.dumps({"command": f"table-{kind}", "rows": payload, "all_match": ok_all}))
    return 0 if ok_all else 1


def cmd_table1(args) -> int:
    if not args.json:
        print("n\ttrees\twith_code\tmin=n-2\tmin=n-1\tmin=n\tstatus")
    rows = (tables.tree_row(n, threads=args.threads, budget_nodes=args.budget_nodes)
            for n in range(4, args.max_n + 1))
    return _print_table(rows, "trees", args.json)


def cmd_table2(args) -> int:
    if not args.json:
        print("n\tcubic\twith_code\tlowest\thighest\tstatus")
    rows = (tables.cubic_row(n, threads=args.threads, budget_nodes=args.budget_nodes)
            for n in range(6, args.max_n + 1, 2))
    return _print_table(rows, "cubic", args.json)


def cmd_bounds(args) -> int:
    g = _load_graph(args)
    rep = lower_bound(g, _kind(args))
    digest = _digest(write_graph6(g), args.kind)
    bounds = {
        "log": rep.log_bound,
        "tree": rep.tree_bound,
        "cubic": rep.cubic_bound,
        "torus": rep.torus_bound,
        "value": rep.value,
    }
    _emit(args, _report("bounds", digest, "ok", bounds=bounds),
          f"lower bound {rep.value} ({'; '.join(rep.notes)})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="redic", description=__doc__)
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(p, kind=True, budget=True):
        p.add_argument("--json", action="store_true")
        if kind:
            p.add_argument("--kind", choices=["ic", "red-ic"], default="red-ic")
        if budget:
            p.add_argument("--budget-nodes", type=int, default=None)
            p.add_argument("--budget-seconds", type=float, default=None)
            p.add_argument("--deterministic", action=argparse.BooleanOptionalAction,
                           default=True,
                           help="reproducible search; disable to enforce wall-clock budgets")

    p = sub.add_parser("verify", help="check a detector set")
    _add_graph_args(p)
    p.add_argument("--detectors", required=True, metavar="V,V,...")
    common(p, budget=False)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("solve", help="minimum code size")
    _add_graph_args(p)
    common(p)
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("exists", help="does any fault-tolerant code exist")
    _add_graph_args(p)
    common(p, kind=False, budget=False)
    p.set_defaults(fn=cmd_exists)

    p = sub.add_parser("feasible", help="is there a code of size at most K")
    _add_graph_args(p)
    p.add_argument("--k", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_feasible)

    p = sub.add_parser("construct", help="build an extremal family instance")
    p.add_argument("what", choices=["star-even", "star-odd", "cycle-odd", "multipartite",
                                    "tree", "g6-ring", "g14-ring", "q5"])
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--t", type=int, default=2)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_construct)

    p = sub.add_parser("reduce", help="3-SAT to code-size-K instance")
    p.add_argument("cnf", help="DIMACS CNF file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("table1", help="tree summary vs reference values")
    p.add_argument("--max-n", type=int, default=13)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_table1)

    p = sub.add_parser("table2", help="cubic summary vs reference values")
    p.add_argument("--max-n", type=int, default=14)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget-nodes", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_table2)

    p = sub.add_parser("bounds", help="structural lower bounds")
    _add_graph_args(p)
    common(p, budget=False)
    p.set_defaults(fn=cmd_bounds)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SystemExit2, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
