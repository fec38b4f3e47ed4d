"""Command-line entry point: ``solvagraph analyze|verify|graph|sol``.

Exit codes: 0 success, 1 bad input, 2 order cap exceeded, 3 a law check
failed on the given group.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from .catalog import build, catalog, parse_element
from .errors import CapExceeded, SolvagraphError
from .group_core import FiniteGroup, conjugacy_classes, is_nilpotent, is_solvable, max_order_cap
from .nsgraph import build_graph, export_graph, verify_graph_laws
from .report import CheckList
from .sol_checks import verify_solvabilizer_laws
from .solvabilizer import RelationMode, engine, is_s_group, sol_of_element, solvable_radical

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_FALSIFIED = 0, 1, 2, 3


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)


def analyze(G: FiniteGroup, mode: RelationMode = RelationMode.SOLVABLE, threads: int | None = None,
            timings: bool = False) -> dict:
    """Full pipeline report for one group (the ``analyze`` subcommand)."""
    clock: dict[str, float] = {}
    t0 = time.perf_counter()
    eng = engine(G, mode, threads=threads)
    ct = conjugacy_classes(G)
    radical = solvable_radical(G, mode)
    clock["radical"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    rows = []
    for c, r in enumerate(ct.representatives):
        res = sol_of_element(G, r, mode)
        rows.append({
            "rep": r,
            "rep_label": G.render(r),
            "rep_order": int(G.orders[r]),
            "class_size": ct.class_sizes[c],
            "sol_size": res.size,
            "is_subgroup": res.is_subgroup,
            "centralizer_order": ct.centralizer_orders[c],
            "degree": G.order - res.size,
        })
    sg = is_s_group(G, mode)
    clock["solvabilizers"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    checks, stats = verify_graph_laws(G)
    clock["graph"] = time.perf_counter() - t0

    report = {
        "group": {
            "label": G.label,
            "order": G.order,
            "is_solvable": is_solvable(G.full_set()),
            "is_nilpotent": is_nilpotent(G.full_set()),
            "radical_size": radical.size,
            "class_count": len(ct),
        },
        "mode": eng.mode.value,
        "solvabilizers": rows,
        "s_group": {
            "is_s_group": sg.is_s_group,
            "witness": list(sg.witness) if sg.witness else None,
            "witness_labels": [G.render(i) for i in sg.witness] if sg.witness else None,
            "witness_verified": sg.verify(G, mode),
        },
        "graph": {"summary": stats, "checks": [r.to_dict() for r in checks.results]},
    }
    if timings:
        report["timings"] = {k: round(v * 1000, 3) for k, v in clock.items()}
    return report


def _text_analysis(rep: dict) -> str:
    g = rep["group"]
    out = [f"{g['label']}: order {g['order']}, {g['class_count']} classes, "
           f"solvable={g['is_solvable']}, nilpotent={g['is_nilpotent']}, radical size {g['radical_size']}",
           f"{'rep':>24} {'ord':>4} {'class':>6} {'|sol|':>6} {'sub':>4} {'|C|':>6} {'deg':>6}"]
    for r in rep["solvabilizers"]:
        out.append(f"{r['rep_label']:>24} {r['rep_order']:>4} {r['class_size']:>6} {r['sol_size']:>6} "
                   f"{'yes' if r['is_subgroup'] else 'no':>4} {r['centralizer_order']:>6} {r['degree']:>6}")
    s = rep["s_group"]
    out.append(f"S-group: {s['is_s_group']}" + (f", witness (a, b, x) = {s['witness_labels']}" if s["witness"] else ""))
    out.append("graph: " + ", ".join(f"{k}={v}" for k, v in rep["graph"]["summary"].items() if k != "k44"))
    for c in rep["graph"]["checks"]:
        out.append(f"  {c['status']}  {c['name']}" + (f"  ({c['detail']})" if c.get("detail") else ""))
    return "\n".join(out)


def _verify_group(G: FiniteGroup, seed: int) -> CheckList:
    checks = verify_solvabilizer_laws(G, seed=seed)
    graph_checks, _ = verify_graph_laws(G)
    checks.results.extend(graph_checks.results)
    return checks


def cmd_analyze(args) -> int:
    G = build(args.spec, cap=args.cap)
    rep = analyze(G, RelationMode(args.mode), threads=args.threads, timings=args.timings)
    print(_dump(rep) if args.json else _text_analysis(rep))
    failed = any(c["status"] == "FAIL" for c in rep["graph"]["checks"]) or not rep["s_group"]["witness_verified"]
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_verify(args) -> int:
    if args.catalog_all:
        specs = [e.spec for e in catalog(args.max_order)]
    elif args.spec:
        specs = [args.spec]
    else:
        print("verify: give a group spec or --catalog-all", file=sys.stderr)
        return EXIT_INPUT
    rows = []
    for spec in specs:
        G = build(spec, cap=args.cap)
        engine(G, threads=args.threads)
        t0 = time.perf_counter()
        checks = _verify_group(G, args.seed)
        elapsed = time.perf_counter() - t0
        for r in checks.results:
            rows.append({"group": G.label, "order": G.order, **r.to_dict()})
        if not args.json:
            for r in checks.results:
                line = f"{'PASS' if r.passed else 'FAIL'}  {G.label:<10} {r.name}"
                if not r.passed:
                    line += f"  {r.detail} {json.dumps(r.witness)}"
                print(line)
            print(f"# {G.label}: {len(checks.results)} checks, {len(checks.failures())} failed, {elapsed:.2f}s")
    if args.json:
        print(_dump({"rows": rows}))
    return EXIT_FALSIFIED if any(r["status"] == "FAIL" for r in rows) else EXIT_OK


def cmd_graph(args) -> int:
    G = build(args.spec, cap=args.cap)
    engine(G, args.mode, threads=args.threads)
    graph = build_graph(G, RelationMode(args.mode), induced=not args.full)
    report = None
    failed = False
    if args.report:
        checks, stats = verify_graph_laws(G)
        report = {"summary": stats, "checks": [r.to_dict() for r in checks.results]}
        failed = not checks.ok
    data = export_graph(graph, args.format, report)
    if args.output:
        with open(args.output, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_sol(args) -> int:
    G = build(args.spec, cap=args.cap)
    x = parse_element(G, args.element)
    res = sol_of_element(G, x, RelationMode(args.mode))
    members = [int(i) for i in res.set.indices()]
    if args.json:
        out = {"group": G.label, "element": G.render(x), "index": x, "mode": res.mode.value,
               "size": res.size, "is_subgroup": res.is_subgroup}
        if args.list:
            out["members"] = [{"index": i, "label": G.render(i)} for i in members]
        print(_dump(out))
    else:
        print(f"size: {res.size}")
        print(f"subgroup: {'yes' if res.is_subgroup else 'no'}")
        if args.list:
            for i in members:
                print(f"  {i}\t{G.render(i)}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors share the bad-input exit code; 2 is reserved for the cap
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="solvagraph", description="Solvabilizers and non-solvable graphs of finite groups.")
    p.add_argument("--cap", type=int, default=None,
                   help=f"order cap for closures (default: $SOLVAGRAPH_MAX_ORDER or {max_order_cap()})")
    p.add_argument("--threads", type=int, default=os.cpu_count(), help="worker threads for solvabilizer sweeps")
    p.add_argument("--seed", type=int, default=0, help="RNG seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="full report for one group")
    a.add_argument("spec")
    a.add_argument("--json", action="store_true")
    a.add_argument("--mode", choices=[m.value for m in RelationMode], default="solvable")
    a.add_argument("--timings", action="store_true", help="include per-phase timings (breaks byte-determinism)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run every law check and print a pass/fail table")
    v.add_argument("spec", nargs="?")
    v.add_argument("--catalog-all", action="store_true")
    v.add_argument("--max-order", type=int, default=720)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("graph", help="export the non-solvable (non-nilpotent) graph")
    g.add_argument("spec")
    g.add_argument("--format", choices=["dot", "json"], default="json")
    sel = g.add_mutually_exclusive_group()
    sel.add_argument("--induced", action="store_true", default=True, help="drop the radical (default)")
    sel.add_argument("--full", action="store_true", help="keep every group element")
    g.add_argument("--mode", choices=[m.value for m in RelationMode], default="solvable")
    g.add_argument("--report", action="store_true", help="attach the graph law report (json)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_graph)

    s = sub.add_parser("sol", help="solvabilizer of one element")
    s.add_argument("spec")
    s.add_argument("element", help='e.g. "(1,2,3)", "[[1,1],[0,1]]" or "#5"')
    s.add_argument("--mode", choices=[m.value for m in RelationMode], default="solvable")
    s.add_argument("--list", action="store_true", help="list the members in index order")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_sol)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (SolvagraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
