"""Command-line front end.

Exit codes: 0 success, 1 negative verdict, 2 input error.  Every JSON
record carries the ``seed`` in effect.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from . import zoo
from .complex_core import Graph, InvalidInput, read_graph, to_dot, whitney_complex, write_graph

OK, NEGATIVE, BAD_INPUT = 0, 1, 2


class _Usage(Exception):
    pass


def _emit(record: dict, args) -> None:
    record = {**record, "seed": args.seed}
    print(json.dumps(record, indent=None if args.compact else 2))


def _write_graph_out(g: Graph, args) -> None:
    if args.output:
        write_graph(g, args.output)
        _emit({"written": str(args.output), "vertices": g.n, "edges": g.m}, args)
    else:
        print(json.dumps(g.to_json()))


def _parse_param(text: str):
    low = text.lower()
    if low in ("true", "false"):
        return low == "true"
    try:
        return int(text)
    except ValueError:
        raise _Usage(f"generator parameters must be integers or true/false, got {text!r}") from None


# -- commands ---------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.list:
        width = max(len(n) for n in zoo.CATALOG)
        for name, e in zoo.CATALOG.items():
            ham = {True: "hamiltonian", False: "not hamiltonian", None: "-"}[e.hamiltonian]
            print(f"{name:<{width}}  {e.expected:<24} {ham:<16} {e.note}")
        print("\ngenerators: " + ", ".join(sorted(zoo.FUNCTIONS)))
        return OK
    if not args.name:
        raise _Usage("generate needs a name (or --list)")
    params = [_parse_param(p) for p in args.params]
    if args.name in zoo.CATALOG:
        g = zoo.generate(args.name, *params)
    elif args.name in zoo.FUNCTIONS:
        try:
            g = zoo.FUNCTIONS[args.name](*params)
        except TypeError as exc:
            raise _Usage(str(exc)) from None
    else:
        raise _Usage(f"unknown generator {args.name!r}; try --list")
    if args.dot:
        Path(args.dot).write_text(to_dot(g, name=args.name.replace("-", "_")))
    _write_graph_out(g, args)
    return OK


def cmd_recognize(args) -> int:
    from .recognition import classify_dgraph, is_ball, is_contractible, sphere_dimension
    from .shelling import shelling_for_sphere_or_ball

    g = read_graph(args.graph)
    cls = classify_dgraph(g)
    record = {"classification": cls.to_json(), "vertices": g.n, "edges": g.m,
              "sphere_dimension": sphere_dimension(g), "ball_dimension": is_ball(g)}
    certs = {}
    collapse = is_contractible(g, exact=args.exact)
    record["contractible"] = collapse is not None
    if args.certs:
        out = Path(args.certs)
        out.mkdir(parents=True, exist_ok=True)
        if collapse is not None:
            path = out / "collapse.json"
            path.write_text(json.dumps({"removed": collapse}) + "\n")
            certs["collapse"] = str(path)
        if cls.tag in ("Sphere", "Ball"):
            order = shelling_for_sphere_or_ball(g)
            path = out / "shelling.json"
            path.write_text(json.dumps({"facets": [list(f) for f in order]}) + "\n")
            certs["shelling"] = str(path)
    record["certificates"] = certs
    _emit(record, args)
    return NEGATIVE if cls.tag == "Other" else OK


def cmd_hamilton(args) -> int:
    from .hamiltonian import (ConstructionError, ConstructionTrace, PreconditionError,
                              StrongPropertyError, find_hamiltonian, replay_trace,
                              verify_hamiltonian, verify_strong)
    from .oracle import brute_hamiltonian

    g = read_graph(args.graph)
    if args.replay:
        trace = ConstructionTrace.from_json(json.loads(Path(args.replay).read_text()))
        cyc = replay_trace(g, trace)
        ok = verify_hamiltonian(g, cyc)
        _emit({"cycle": cyc.to_json(), "verified": ok, "steps": len(trace),
               "trace_seed": trace.seed}, args)
        return OK if ok else NEGATIVE
    record: dict = {}
    code = OK
    try:
        cyc, trace = find_hamiltonian(g, strong=args.strong, seed=args.seed,
                                      oracle_fallback=args.oracle_fallback,
                                      exact_limit=args.exact_limit)
    except PreconditionError as exc:
        _emit({"error": str(exc), "classification": exc.classification.to_json()}, args)
        return NEGATIVE
    except StrongPropertyError as exc:
        cyc, trace = exc.cycle, exc.trace
        record["strong_error"] = str(exc)
        record["strong_impossible"] = exc.proven
        code = NEGATIVE
    except ConstructionError as exc:
        _emit({"error": str(exc), "steps": len(exc.trace or [])}, args)
        return NEGATIVE
    record.update({"cycle": cyc.to_json(), "verified": verify_hamiltonian(g, cyc),
                   "strong": verify_strong(g, cyc), "steps": len(trace)})
    if args.oracle_check:
        res = brute_hamiltonian(g, budget=args.budget)
        record["oracle"] = res.verdict
        if res.verdict != "Found":
            code = NEGATIVE
    if args.trace:
        Path(args.trace).write_text(json.dumps(trace.to_json()) + "\n")
        record["trace"] = str(args.trace)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, cyc.vertices))
        record["dot"] = str(args.dot)
    _emit(record, args)
    return code


def cmd_oracle(args) -> int:
    from .oracle import brute_hamiltonian, brute_shellable, count_hamiltonian_cycles

    g = read_graph(args.graph)
    if args.question == "count":
        try:
            n = count_hamiltonian_cycles(g, budget=args.budget)
        except RuntimeError as exc:
            _emit({"verdict": "BudgetExceeded", "error": str(exc)}, args)
            return NEGATIVE
        _emit({"count": n}, args)
        return OK
    if args.question == "hamiltonian":
        res = brute_hamiltonian(g, budget=args.budget)
        record = {"verdict": res.verdict, "expansions": res.expansions}
        if res.verdict == "Found":
            record["cycle"] = list(res.witness)
    else:
        c = whitney_complex(g)
        if not c.is_pure():
            raise _Usage("shellability needs a pure complex")
        res = brute_shellable(c, budget=args.budget)
        record = {"verdict": res.verdict, "expansions": res.expansions}
        if res.verdict == "Found":
            record["order"] = [list(f) for f in res.witness]
    _emit(record, args)
    return OK if res.verdict == "Found" else NEGATIVE


def cmd_refine(args) -> int:
    g = read_graph(args.graph)
    if args.barycentric:
        h = C.barycentric_refinement(g)
        if args.carrier:
            carrier = {str(i): list(s) for i, s in enumerate(C.barycentric_carrier(g))}
            Path(args.carrier).write_text(json.dumps(carrier) + "\n")
    else:
        try:
            a, b = (int(x) for x in args.edge.split(","))
        except ValueError:
            raise _Usage("--edge takes two vertex ids, e.g. --edge 0,1") from None
        h = C.edge_refinement(g, (a, b))
    _write_graph_out(h, args)
    return OK


def cmd_build(args) -> int:
    g = read_graph(args.graph)
    if args.suspension:
        h = C.suspension(g)
    elif args.cone:
        h = C.cone(g)
    else:
        h = C.join(g, read_graph(args.join))
    _write_graph_out(h, args)
    return OK


def cmd_levelset(args) -> int:
    from .levelset import VertexFunction, is_smooth, level_surface, random_function
    from .recognition import classify_dgraph

    g = read_graph(args.graph)
    if args.f:
        f = VertexFunction.from_json(json.loads(Path(args.f).read_text()))
    else:
        f = random_function(g, args.seed)
    try:
        c = Fraction(args.c)
    except (ValueError, ZeroDivisionError):
        raise _Usage(f"--c must be a rational number, got {args.c!r}") from None
    surf = level_surface(g, f, c)
    record = {"level": str(c), "surface": surf.to_json(),
              "classification": classify_dgraph(surf.graph).to_json() if surf.graph.n else None,
              "smooth": is_smooth(g, f, c)}
    if not args.f:
        record["function"] = f.to_json()
    _emit(record, args)
    return OK


def cmd_bench(args) -> int:
    from . import bench

    sizes = [int(s) for s in args.sizes.split(",")] if args.sizes else None

    def progress(row):
        print(f"n={row.n:5d} seed={row.seed} {row.millis:9.1f} ms strong={int(row.strong)}",
              file=sys.stderr, flush=True)

    try:
        rows = bench.run(args.family, sizes, args.repeats, args.seed,
                         None if args.quiet else progress)
    except bench.BenchError as exc:
        print(f"bench aborted: {exc}", file=sys.stderr)
        return NEGATIVE
    fit = bench.fit_loglog(rows)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / f"bench_{args.family}.csv"
    bench.write_csv(rows, csv_path)
    record = {"family": args.family, "rows": len(rows), "csv": str(csv_path),
              "total_seconds": round(sum(r.millis for r in rows) / 1000, 3), **fit.to_json()}
    if not args.no_figure:
        from .plotting import save_bench_figure

        paths = save_bench_figure(rows, fit, out / f"bench_{args.family}",
                                  title=f"{args.family} (seed {args.seed})")
        record["figures"] = [str(p) for p in paths]
    ok = fit.slope <= args.max_slope and fit.r2 >= args.min_r2
    record["within_bounds"] = ok
    _emit(record, args)
    return OK if ok else NEGATIVE


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--compact", action="store_true", help="single-line JSON output")

    p = argparse.ArgumentParser(prog="dgraphs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("generate", parents=[common], help="build a zoo graph")
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*")
    s.add_argument("--list", action="store_true", help="list fixtures with expected tags")
    s.add_argument("-o", "--output")
    s.add_argument("--dot", help="also write Graphviz DOT here")
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser("recognize", parents=[common], help="classify a graph")
    s.add_argument("graph")
    s.add_argument("--certs", help="directory for collapse/shelling certificates")
    s.add_argument("--exact", action="store_true", help="backtracking collapse search")
    s.set_defaults(func=cmd_recognize)

    s = sub.add_parser("hamilton", parents=[common], help="construct a Hamiltonian cycle")
    s.add_argument("graph")
    s.add_argument("--strong", action="store_true", help="require the strong property")
    s.add_argument("--trace", help="write the construction trace here")
    s.add_argument("--replay", help="replay a trace file instead of constructing")
    s.add_argument("--oracle-check", action="store_true", help="confirm with brute force")
    s.add_argument("--oracle-fallback", action="store_true",
                   help="use brute force if the construction gets stuck")
    s.add_argument("--exact-limit", type=float, default=60.0,
                   help="seconds for the exact strong search (0 disables)")
    s.add_argument("--budget", type=int, default=10**8)
    s.add_argument("--dot", help="write DOT with the cycle highlighted")
    s.set_defaults(func=cmd_hamilton)

    s = sub.add_parser("oracle", parents=[common], help="brute-force ground truth")
    s.add_argument("question", choices=["hamiltonian", "count", "shellable"])
    s.add_argument("graph")
    s.add_argument("--budget", type=int, default=10**8)
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("refine", parents=[common], help="Barycentric or edge refinement")
    s.add_argument("graph")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--barycentric", action="store_true")
    g.add_argument("--edge", help="edge a,b to refine")
    s.add_argument("--carrier", help="with --barycentric, write new id -> simplex here")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_refine)

    s = sub.add_parser("build", parents=[common], help="suspension, cone or join")
    s.add_argument("graph")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--suspension", action="store_true")
    g.add_argument("--cone", action="store_true")
    g.add_argument("--join", metavar="OTHER", help="join with the graph in OTHER")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_build)

    s = sub.add_parser("levelset", parents=[common], help="level surface {f = c}")
    s.add_argument("graph")
    s.add_argument("--f", help="function JSON; random permutation from --seed if omitted")
    s.add_argument("--c", required=True, help="rational level, e.g. 7/2")
    s.set_defaults(func=cmd_levelset)

    s = sub.add_parser("bench", parents=[common], help="timing benchmark with log-log fit")
    s.add_argument("--family", default="random_refined_sphere")
    s.add_argument("--sizes", help="comma-separated family sizes")
    s.add_argument("--repeats", type=int, default=1)
    s.add_argument("--out", default="bench_out")
    s.add_argument("--max-slope", type=float, default=3.0)
    s.add_argument("--min-r2", type=float, default=0.9)
    s.add_argument("--no-figure", action="store_true")
    s.add_argument("--quiet", action="store_true")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_Usage, InvalidInput, FileNotFoundError, IsADirectoryError,
            json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
