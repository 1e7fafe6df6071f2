"""Command-line entry point: ``netinduce <command> [options]``.

Every command writes one report (JSON by default) carrying the tool version,
the resolved configuration and the identifier of the result it addresses.

Exit codes: 0 success, 1 a verification failed, 2 invalid configuration,
3 partial certificate (budget or depth exhausted), 4 unreadable input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from fractions import Fraction

from . import __version__

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_PARTIAL, EXIT_INPUT = 0, 1, 2, 3, 4


class ConfigError(ValueError):
    pass


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, bytes):
        return x.decode("ascii")
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item") and callable(x.item):
        return x.item()
    return x


def _report(report_id: str, config: dict, result, fmt: str, text: str | None = None,
            table: list[dict] | None = None, timestamp: bool = True) -> str:
    if fmt == "text" and text is not None:
        return text
    if fmt == "csv":
        rows = table if table is not None else [result] if isinstance(result, dict) else None
        if rows is None:
            raise ConfigError("this command has no tabular output; use --format json or text")
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0].keys()), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: _jsonable(v) for k, v in r.items()})
        return buf.getvalue().rstrip("\n")
    from ._jit import backend

    rep = {"tool": "netinduce", "version": __version__, "backend": backend(),
           "id": report_id, "config": _jsonable(config), "result": _jsonable(result)}
    if timestamp:
        rep["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    return json.dumps(rep, sort_keys=True, indent=2)


def _load_graph(args):
    from .graph import Graph6Error, parse_graph6

    if args.graph6:
        text = args.graph6
    elif args.input:
        try:
            with open(args.input) as fh:
                text = fh.read().strip().splitlines()[0]
        except OSError as exc:
            raise Graph6Error(str(exc)) from exc
    else:
        raise ConfigError("give --input FILE or --graph6 STRING")
    return parse_graph6(text.strip())


# --------------------------------------------------------------------------
# commands

def cmd_count(args, cfg):
    from .counting import induced_count, net_count, per_vertex_net_counts
    from .graph import parse_graph6

    g = _load_graph(args)
    if args.target == "net":
        val = net_count(g)
        return "count.net", {"n": g.n, "nets": val}, str(val), EXIT_OK
    if args.target == "per-vertex":
        per = per_vertex_net_counts(g)
        rows = [{"vertex": v, "nets": c} for v, c in enumerate(per)]
        return "count.per_vertex", {"n": g.n, "per_vertex": per}, " ".join(map(str, per)), EXIT_OK, rows
    if not args.pattern:
        raise ConfigError("--target induced needs --pattern GRAPH6")
    h = parse_graph6(args.pattern)
    val = induced_count(h, g)
    return "count.induced", {"n": g.n, "pattern": args.pattern, "copies": val}, str(val), EXIT_OK


def cmd_construct(args, cfg):
    from .constructions import balanced_iterated_blowup, pendant_k4
    from .counting import net_count
    from .graph import emit_graph6, make_net

    if args.kind == "net":
        g = make_net()
    elif args.kind == "pendant-k4":
        g = pendant_k4()
    else:
        if args.n is None:
            raise ConfigError("--kind blowup needs --n")
        g = balanced_iterated_blowup(args.n)
    code = emit_graph6(g)
    res = {"kind": args.kind, "n": g.n, "graph6": code}
    if not args.no_count:
        res["nets"] = net_count(g)
    return "construct." + args.kind, res, code, EXIT_OK


def cmd_recurrence(args, cfg):
    from .constructions import RecurrenceTable, best_composition, recurrence_value

    if args.n_max is not None:
        table = RecurrenceTable.build(args.n_max)
        rows = [{"n": n, "C": table.get(n)} for n in range(args.n_max + 1)]
        return "theorem2.recurrence", {"n_max": args.n_max, "values": [r["C"] for r in rows]}, \
            table.to_csv(), EXIT_OK, rows
    if args.n is None:
        raise ConfigError("give --n or --n-max")
    val = recurrence_value(args.n)
    res = {"n": args.n, "C": val}
    if args.n >= 6:
        comp = best_composition(args.n)
        res.update(composition=list(comp.parts), balanced=comp.balanced,
                   exclusion_certified=comp.exclusion_certified, window=comp.window)
        text = f"{val} {tuple(comp.parts)}"
    else:
        text = str(val)
    return "theorem2.recurrence", res, text, EXIT_OK


def cmd_search(args, cfg):
    from . import search

    if args.method == "exhaustive":
        rep = search.exhaustive_max(args.n)
    else:
        rep = search.local_search(args.n, args.seed, args.budget, reference=args.reference)
    res = rep.to_json()
    return f"search.{args.method}", res, f"{rep.max_count}", EXIT_OK


def cmd_decompose(args, cfg):
    from . import decomposer
    from .constructions import balanced_iterated_blowup

    if args.blowup is not None:
        g = balanced_iterated_blowup(args.blowup)
    else:
        g = _load_graph(args)
    root = decomposer.best_root(g, Fraction(args.a).limit_denominator(10**6))
    d = decomposer.classify(g, root, args.a, pairs=args.pairs)
    n22, n3 = decomposer.rooted_counts(g, root)
    res = d.to_json()
    res.update(N22=n22, N3=n3, lhs=decomposer.lhs_41(d, args.a, args.pairs))
    return "claim4.decomposition", res, d.summary(), EXIT_OK


def cmd_case_bounds(args, cfg):
    from . import cases, constants

    rows, res = [], {}
    for (x, w), pub_df in zip(constants.DF_ROWS, constants.DF_THRESHOLDS):
        poly = cases.bound_polynomial(x, w, funky_budget_model=args.model)
        d = cases.solve_df_threshold(poly)
        pub = cases.polynomial_from_row(constants.PUBLISHED_BOUNDS[(x, w)])
        d_pub = cases.solve_df_threshold(pub)
        row = {"x_blob": x, "w_blob": w, "derived": poly.pretty(),
               "published": pub.pretty(), "match": poly.table_row() == pub.table_row(),
               "d_f": d, "d_f_from_published": d_pub, "d_f_published": pub_df}
        rows.append(row)
        res[f"table1.{x}{w}"] = row
    budgets = {name: str(cases.claim5_budget(name)) for name in cases.SUB_CASES}
    res["claim5.budgets"] = budgets
    text = "\n".join(f"({r['x_blob']},{r['w_blob']}) {r['derived']}  d_f={r['d_f']:.7f} "
                     f"(published {r['d_f_published']})" for r in rows)
    text += "\n" + "\n".join(f"{k}: {v}" for k, v in budgets.items())
    ok = all(r["match"] for r in rows)
    return "table1", res, text, EXIT_OK if ok else EXIT_FAIL, rows


def cmd_qp(args, cfg):
    from . import qp

    objs = qp.OBJECTIVES if args.objective == "all" else (args.objective,)
    res, lines, rows = {}, [], []
    for obj in objs:
        try:
            sol = qp.solve(qp.ProgramSpec(obj, args.a, args.rhs, args.sign), grid=not args.no_grid)
        except qp.InfeasibleProgram as exc:
            res[f"claim4.{obj}"] = {"infeasible": str(exc)}
            lines.append(f"{obj}: infeasible")
            continue
        res[f"claim4.{obj}"] = sol.to_json()
        rows.append({"objective": obj, "optimum": sol.optimum, "kkt_residual": sol.kkt_residual})
        lines.append(f"{obj}: {sol.optimum:.12g}")
    return "claim4", res, "\n".join(lines), EXIT_OK, rows


def cmd_verify_neighbourhood(args, cfg):
    from . import gridcert

    rows, rhs = gridcert.funky_rows(variant=args.rows)
    cons = gridcert.Constraints(rows=rows, rhs=rhs)
    cert = gridcert.certify(args.threshold, max_depth=args.max_depth, budget=args.budget,
                            mode=args.mode, bound=args.bound, cons=cons, grid_cells=args.grid_cells)
    res = cert.to_json()
    if cert.witness is not None:
        res["witness_center"] = cert.witness.center.tolist()
    text = (f"{'certified' if cert.success else 'NOT certified'}: {cert.status}, "
            f"{cert.boxes_examined} boxes, max center {cert.max_center_value:.6g}")
    return "claim8.certificate", res, text, EXIT_OK if cert.success else EXIT_PARTIAL


def cmd_verify_all(args, cfg):
    from . import acceptance

    only = set(args.only) if args.only else None
    results = []
    for k, fn in enumerate(acceptance.CHECKS, start=1):
        if only and k not in only:
            continue
        r = fn(args.level, args.seed)
        results.append(r)
        print(r.line(), file=sys.stderr, flush=True)
    res = {r.report_id: r.to_json() for r in results}
    rows = [{"number": r.number, "id": r.report_id, "passed": r.passed, "seconds": round(r.seconds, 3)}
            for r in results]
    text = "\n".join(r.line() for r in results)
    ok = all(r.passed for r in results)
    return "acceptance", res, text, EXIT_OK if ok else EXIT_FAIL, rows


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help="cap on worker threads")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp so reports are byte-identical across runs")

    p = argparse.ArgumentParser(prog="netinduce", description="Induced net counting and certificates.")
    p.add_argument("--version", action="version", version=f"netinduce {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_in(sp):
        sp.add_argument("--input", help="file whose first line is graph6")
        sp.add_argument("--graph6", help="graph6 string")

    s = sub.add_parser("count", parents=[common], help="count induced nets or another pattern")
    s.add_argument("--target", choices=("net", "per-vertex", "induced"), default="net")
    s.add_argument("--pattern", help="graph6 pattern for --target induced")
    graph_in(s)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("construct", parents=[common], help="build the net, pendant K4 or blow-ups")
    s.add_argument("--kind", choices=("net", "pendant-k4", "blowup"), default="blowup")
    s.add_argument("--n", type=int)
    s.add_argument("--no-count", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("recurrence", parents=[common], help="C(n) and its optimal composition")
    s.add_argument("--n", type=int)
    s.add_argument("--n-max", type=int)
    s.set_defaults(func=cmd_recurrence)

    s = sub.add_parser("search", parents=[common], help="exhaustive or local search")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--method", choices=("exhaustive", "local"), default="exhaustive")
    s.add_argument("--budget", type=int, default=10000)
    s.add_argument("--reference", type=int)
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("decompose", parents=[common], help="blob decomposition of a graph")
    graph_in(s)
    s.add_argument("--blowup", type=int, help="decompose the balanced blow-up on this many vertices")
    s.add_argument("--a", type=float, default=4.99)
    s.add_argument("--pairs", choices=("all", "edges"), default="all")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("case-bounds", parents=[common], help="funky-pair bound polynomials")
    s.add_argument("--model", choices=("exclusive", "additive"), default="exclusive")
    s.set_defaults(func=cmd_case_bounds)

    s = sub.add_parser("qp", parents=[common], help="the four symmetric quadratic programs")
    s.add_argument("--objective", choices=("all", "min_x1", "max_x1", "max_x0", "max_f"), default="all")
    s.add_argument("--a", type=float, default=4.99)
    s.add_argument("--rhs", type=float, default=0.000149043538)
    s.add_argument("--sign", choices=("derived", "published"), default="derived")
    s.add_argument("--no-grid", action="store_true")
    s.set_defaults(func=cmd_qp)

    s = sub.add_parser("verify-claim8", parents=[common], help="certify the neighbourhood program")
    s.add_argument("--threshold", type=float, default=0.0001275)
    s.add_argument("--budget", type=int, default=10**10)
    s.add_argument("--max-depth", type=int, default=200)
    s.add_argument("--mode", choices=("bnb", "grid"), default="bnb")
    s.add_argument("--bound", choices=("gradient", "monotone", "best"), default="gradient")
    s.add_argument("--rows", choices=("derived", "printed"), default="derived")
    s.add_argument("--grid-cells", type=int, default=2)
    s.set_defaults(func=cmd_verify_neighbourhood)

    s = sub.add_parser("verify-all", parents=[common], help="run the acceptance checks")
    s.add_argument("--level", choices=("smoke", "desk", "full"), default="desk")
    s.add_argument("--only", type=int, nargs="*", help="criterion numbers to run")
    s.set_defaults(func=cmd_verify_all)
    return p


def _apply_threads(n):
    if n is None:
        return
    if n < 1:
        raise ConfigError("--threads must be positive")
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        os.environ[var] = str(n)
    from ._jit import HAS_NUMBA
    if HAS_NUMBA:
        import numba
        numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))


def main(argv=None) -> int:
    from .graph import Graph6Error, GraphError

    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "output")}
    try:
        _apply_threads(args.threads)
        out = args.func(args, cfg)
        report_id, result, text, code = out[:4]
        table = out[4] if len(out) > 4 else None
        rendered = _report(report_id, cfg, result, args.format, text, table,
                           timestamp=not args.no_timestamp)
    except ConfigError as exc:
        print(f"netinduce: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Graph6Error as exc:
        print(f"netinduce: cannot read graph: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (GraphError, ValueError) as exc:
        print(f"netinduce: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(rendered + "\n")
    else:
        print(rendered)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
