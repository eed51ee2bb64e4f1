"""Command-line entry point ``tfl``."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import harness
from .budget import DEFAULT_BUDGET, Budget
from .enumeration import all_graphs, connected_graphs
from .errors import BudgetExceeded, TflError
from .families import alpha_sharpness_graph, build_g_family, is_in_family_g, sharpness_graph
from .graph import from_graph6, is_connected, to_graph6
from .invariants import independence_number, vertex_connectivity
from .proof import extract_witness
from .twofactor import find_two_factor


def _graphs(arg: str):
    """The graph6 argument itself, or every non-empty stdin line for ``-``."""
    if arg != "-":
        yield from_graph6(arg.strip())
        return
    for lineno, line in enumerate(sys.stdin, 1):
        if line.strip():
            yield from_graph6(line.strip(), line=lineno)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(", ", ": ")) + "\n")


def cmd_invariants(args) -> int:
    for g in _graphs(args.graph):
        ind = independence_number(g)
        con = vertex_connectivity(g)
        _emit(
            {
                "graph": to_graph6(g),
                "n": g.n,
                "m": g.m,
                "connected": is_connected(g),
                "min_degree": g.min_degree(),
                "alpha": ind.size,
                "independent_set": ind.vertices,
                "kappa": con.kappa,
                "cut": con.vertices,
            }
        )
    return 0


def cmd_two_factor(args) -> int:
    for g in _graphs(args.graph):
        cert = find_two_factor(g, args.max_components, Budget(args.budget))
        _emit(
            {
                "graph": to_graph6(g),
                "max_components": args.max_components,
                "found": cert is not None,
                "components": cert.components if cert else None,
                "cycles": cert.lines() if cert else [],
            }
        )
    return 0


def cmd_extract(args) -> int:
    code = 0
    for g in _graphs(args.graph):
        out = extract_witness(g, Budget(args.budget))
        _emit({"graph": to_graph6(g), **out.as_dict()})
        if out.kind == "anomaly":
            logging.error("anomaly on %s: %s", to_graph6(g), out.reason)
            code = harness.EXIT_COUNTEREXAMPLE
    return code


def cmd_family(args) -> int:
    if args.kind == "g-family":
        g = build_g_family(args.n, args.t)
        desc = is_in_family_g(g).name
    elif args.kind == "sharpness":
        g = sharpness_graph(args.k)
        desc = f"sharpness({args.k})"
    else:
        g = alpha_sharpness_graph(args.k)
        desc = f"alpha-sharpness({args.k})"
    print(to_graph6(g))
    print(f"{desc}: n={g.n} m={g.m}", file=sys.stderr)
    return 0


def cmd_enumerate(args) -> int:
    stream = all_graphs(args.n) if args.all else connected_graphs(args.n)
    count = 0
    out = sys.stdout
    for g in stream:
        out.write(to_graph6(g) + "\n")
        count += 1
    print(f"{count} graphs on {args.n} vertices", file=sys.stderr)
    return 0


def _open_out(path):
    return open(path, "w") if path else sys.stdout


def cmd_verify(args) -> int:
    if args.n_max is None and args.source is None:
        raise TflError("verify needs --n-max or --source")
    summary, lines = harness.run_campaign(
        args.campaign,
        n_max=args.n_max,
        source=args.source,
        workers=args.workers,
        budget=args.budget,
        checkpoint=args.checkpoint,
        verbose=args.verbose,
    )
    out = _open_out(args.out)
    try:
        for line in lines:
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    for line in summary.lines():
        print(line, file=sys.stderr)
    if args.figures:
        from .plotting import plot_campaign

        print(f"figure: {plot_campaign(summary, args.figures)}", file=sys.stderr)
    return summary.exit_code


def cmd_check_sharpness(args) -> int:
    rows = harness.check_sharpness(args.k_max, args.budget)
    out = _open_out(args.out)
    try:
        for r in rows:
            out.write(r.to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    for r in rows:
        state = {True: "ok", False: "FAILED", None: "inconclusive"}[r.ok]
        print(f"{r.kind} k={r.k}: n={r.n} alpha={r.alpha} kappa={r.kappa} {state}", file=sys.stderr)
    if args.figures:
        from .plotting import plot_sharpness

        print(f"figure: {plot_sharpness(rows, args.figures)}", file=sys.stderr)
    return harness.sharpness_exit_code(rows)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tfl", description="Exact graph invariants, 2-factors and verification campaigns.")
    p.add_argument("--log-level", default="WARNING", help="logging level for diagnostics on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_arg(sp):
        sp.add_argument("graph", help="graph6 string, or - to read one graph per stdin line")

    def budget_arg(sp):
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search-node budget per graph")

    sp = sub.add_parser("invariants", help="independence number and connectivity with witnesses")
    graph_arg(sp)
    sp.set_defaults(func=cmd_invariants)

    sp = sub.add_parser("two-factor", help="2-factor with a bounded number of cycles")
    sp.add_argument("--max-components", type=int, required=True)
    budget_arg(sp)
    graph_arg(sp)
    sp.set_defaults(func=cmd_two_factor)

    sp = sub.add_parser("extract", help="run the exchange procedure and print its outcome and trace")
    budget_arg(sp)
    graph_arg(sp)
    sp.set_defaults(func=cmd_extract)

    sp = sub.add_parser("family", help="build an exceptional or sharpness graph")
    fam = sp.add_subparsers(dest="kind", required=True)
    f = fam.add_parser("g-family")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--t", type=int, required=True)
    for name in ("sharpness", "alpha-sharpness"):
        f = fam.add_parser(name)
        f.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("enumerate", help="graph6 lines of graphs up to isomorphism")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--all", action="store_true", help="include disconnected graphs")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("verify", help="exhaustive verification campaign")
    sp.add_argument("campaign", choices=sorted(harness.CAMPAIGNS))
    sp.add_argument("--n-max", type=int)
    sp.add_argument("--source", help="graph6 file instead of enumeration")
    sp.add_argument("--workers", type=int, help="worker processes (default $TFL_WORKERS or 1)")
    budget_arg(sp)
    sp.add_argument("--checkpoint", help="cursor file for resuming")
    sp.add_argument("--verbose", action="store_true", help="emit a record for every graph")
    sp.add_argument("--out", help="write JSONL here instead of stdout")
    sp.add_argument("--figures", help="directory for a status chart")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("check-sharpness", help="check both sharpness joins for k = 1..K")
    sp.add_argument("--k-max", type=int, required=True)
    budget_arg(sp)
    sp.add_argument("--out", help="write JSONL here instead of stdout")
    sp.add_argument("--figures", help="directory for the order/connectivity chart")
    sp.set_defaults(func=cmd_check_sharpness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; the exit-code contract reserves 2 for inconclusive runs
        return harness.EXIT_USAGE if e.code else 0
    try:
        logging.basicConfig(format="%(levelname)s %(name)s: %(message)s")
        logging.getLogger().setLevel(args.log_level.upper())
        return args.func(args)
    except BudgetExceeded as e:
        print(f"inconclusive: {e}", file=sys.stderr)
        return harness.EXIT_INCONCLUSIVE
    except (TflError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return harness.EXIT_USAGE
    except KeyboardInterrupt:
        print("interrupted; rerun with the same --checkpoint to resume", file=sys.stderr)
        return harness.EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
