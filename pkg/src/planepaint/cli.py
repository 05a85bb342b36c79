"""Command-line front end.

Exit codes: 0 success or pass, 1 usage error, 2 computation error or an
incomplete verification, 3 a verification failure (a bound that an exact
search could not certify, or a painting check that returned false).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from typing import Sequence

from . import catalog as cat
from . import chroma, derive, paint, polynomial, report, verify
from .embedding import write_planar_code
from .errors import HypothesisNotMet, PlanePaintError

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_FAIL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(args, data, text: str | None = None) -> None:
    if args.json or text is None:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _int_list(s: str) -> list[int]:
    s = s.strip()
    if s.startswith("["):
        return [int(x) for x in json.loads(s)]
    return [int(x) for x in s.split(",") if x.strip()]


def _graph_spec(args) -> str:
    spec = args.graph or args.graph_pos
    if not spec:
        raise UsageError("a graph is required (--graph catalog:NAME or a file path)")
    return spec


def _plane(args):
    try:
        return cat.load_graph(_graph_spec(args))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    except FileNotFoundError as exc:
        raise UsageError(f"no such file: {exc.filename}") from None


def _derived(args):
    G = _plane(args)
    return derive.combine(G, args.derived)


def _budget(args) -> int | None:
    return args.budget


def _threads(args) -> int:
    return args.threads if args.threads else (os.cpu_count() or 1)


# --- verbs ----------------------------------------------------------------------


def cmd_faces(args) -> int:
    G = _plane(args)
    data = G.summary()
    text = [f"V={G.n_vertices} E={G.n_edges} F={G.n_faces}"]
    text += [f"f{i}: {' '.join(map(str, f))}" for i, f in enumerate(G.faces)]
    _emit(args, data, "\n".join(text))
    return EXIT_OK


def cmd_derive(args) -> int:
    H = _derived(args)
    print(json.dumps(H.to_json(), indent=2, sort_keys=True))
    return EXIT_OK


def cmd_coeff(args) -> int:
    H = _derived(args)
    target = _int_list(args.target)
    if args.method == "dfs":
        c = polynomial.coefficient_dfs(H, target, split_depth=args.split_depth, workers=_threads(args))
    else:
        c = polynomial.coefficient(H, target, budget=_budget(args))
    _emit(args, {"graph": H.name, "target": target, "coefficient": str(c)}, str(c))
    return EXIT_OK


def cmd_expand(args) -> int:
    H = _derived(args)
    cap = _int_list(args.cap)
    cap = cap[0] if len(cap) == 1 else cap
    found = polynomial.truncated_expansion(H, cap, budget=_budget(args))
    data = {"graph": H.name, "vertices": [v.label for v in H.vertices],
            "monomials": [{"exponents": list(m), "coefficient": str(c)} for m, c in found.items()]}
    text = "\n".join(f"{list(m)} {c}" for m, c in found.items()) or "no non-vanishing monomial"
    _emit(args, data, text)
    return EXIT_OK


def cmd_at(args) -> int:
    H = _derived(args)
    res = polynomial.alon_tarsi_number(H, args.max, budget=_budget(args))
    w = res.witness()
    data = {"graph": H.name, "at": res.k, "max": args.max,
            "witness": None if w is None else {"exponents": list(w[0]), "coefficient": str(w[1])},
            "witnesses_at_cap": len(res.witnesses)}
    _emit(args, data, f"> {args.max}" if res.exceeded else str(res.k))
    return EXIT_OK


def cmd_orient(args) -> int:
    H = _derived(args)
    if args.kind == "degeneracy":
        arcs, indeg = polynomial.degeneracy_orientation(H)
        extra = {"degeneracy": max(indeg, default=0)}
    else:
        arcs, d = polynomial.min_max_indegree_orientation(H)
        indeg = polynomial.indegrees(H.n, arcs)
        extra = {"max_indegree": d}
    labels = [v.label for v in H.vertices]
    data = {"graph": H.name, "arcs": [[labels[u], labels[v]] for u, v in arcs],
            "indegrees": list(indeg), **extra}
    if args.coefficient:
        data["coefficient"] = str(polynomial.coefficient(H, indeg, budget=_budget(args)))
    text = "\n".join(f"{labels[u]} -> {labels[v]}" for u, v in arcs)
    text += "\nin-degrees: " + " ".join(map(str, indeg))
    if args.coefficient:
        text += f"\ncoefficient: {data['coefficient']}"
    _emit(args, data, text)
    return EXIT_OK


def cmd_paint(args) -> int:
    H = _derived(args)
    solver = paint.PaintSolver(H, limit=args.limit)
    if args.profile:
        p = _int_list(args.profile)
    elif args.k is not None:
        p = [args.k] * H.n
    else:
        k = paint.paint_number(H, args.max, limit=args.limit)
        _emit(args, {"graph": H.name, "paint_number": k},
              f"> {args.max}" if k is None else str(k))
        return EXIT_OK
    ok = solver.is_paintable(p)
    if args.interactive_trace:
        print("\n".join(solver.strategy_lines(p, max_depth=args.depth)))
        return EXIT_OK
    _emit(args, {"graph": H.name, "profile": p, "paintable": ok}, "paintable" if ok else "not paintable")
    return EXIT_OK


def cmd_chi(args) -> int:
    H = _derived(args)
    k = chroma.chromatic_number(H)
    _emit(args, {"graph": H.name, "chromatic_number": k}, str(k))
    return EXIT_OK


def cmd_choosable(args) -> int:
    H = _derived(args)
    if args.k is None:
        k = chroma.choice_number(H, args.max)
        _emit(args, {"graph": H.name, "choice_number": k}, f"> {args.max}" if k is None else str(k))
        return EXIT_OK
    bad = chroma.bad_list_assignment(H, args.k)
    labels = [v.label for v in H.vertices]
    data = {"graph": H.name, "k": args.k, "choosable": bad is None,
            "bad_assignment": None if bad is None else {labels[v]: list(L) for v, L in sorted(bad.items())}}
    text = "choosable" if bad is None else "not choosable; bad lists:\n" + "\n".join(
        f"{labels[v]}: {list(L)}" for v, L in sorted(bad.items()))
    _emit(args, data, text)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        entries = cat.load_entries(args.catalog)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    if args.method != "auto":
        reports = []
        ids = verify.SUITES if args.suite == "all" else args.suite.split(",")
        for tid in ids:
            if tid not in verify.THEOREMS:
                raise UsageError(f"--method applies to theorem suites only, not {tid!r}")
            for e in entries:
                try:
                    reports.append(verify.verify_theorem(tid, e, method=args.method, budget=_budget(args),
                                                         time_budget=args.time_budget))
                except HypothesisNotMet:
                    continue
    else:
        try:
            reports = verify.run_suite(args.suite, entries, threads=_threads(args),
                                       budget=_budget(args), time_budget=args.time_budget)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
    if args.json:
        sys.stdout.write(report.to_json(reports))
    else:
        sys.stdout.write(report.to_table(reports))
    if args.out:
        for p in report.write_outputs(reports, args.out):
            print(f"wrote {p}", file=sys.stderr)
    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return EXIT_FAIL
    if statuses - {"pass"}:
        return EXIT_COMPUTE
    return EXIT_OK


def cmd_catalog(args) -> int:
    if args.export:
        try:
            entries = cat.load_entries(args.export)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        if args.format == "planar_code":
            sys.stdout.buffer.write(write_planar_code([e.graph for e in entries]))
        else:
            data = [{"name": e.name, **e.graph.to_json()} for e in entries]
            print(json.dumps(data if len(data) != 1 else data[0], sort_keys=True))
        return EXIT_OK
    rows = [{"name": e.name, "V": e.graph.n_vertices, "E": e.graph.n_edges, "F": e.graph.n_faces,
             "tags": sorted(e.tags)} for e in cat.catalog()]
    text = "\n".join(f"{r['name']:<14}V={r['V']:<3}E={r['E']:<3}F={r['F']:<3}{','.join(r['tags'])}" for r in rows)
    _emit(args, rows, text)
    return EXIT_OK


def cmd_probe(args) -> int:
    """Search for small-cap non-vanishing monomials of a derived graph across entries.

    Each hit is an upper bound on the Alon-Tarsi number; a miss within
    budget proves nothing.
    """
    try:
        entries = cat.load_entries(args.catalog)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    out = []
    for e in entries:
        H = derive.combine(e.graph, args.derived)
        row = {"graph": e.name, "derived": H.name, "n": H.n, "m": H.m, "upper_bound": None, "note": ""}
        for k in range(polynomial.at_lower_bound(H), args.max + 1):
            try:
                hit = polynomial.find_nonvanishing(H, [k - 1] * H.n, budget=_budget(args),
                                                   deadline=polynomial.Deadline(args.time_budget))
            except PlanePaintError as exc:
                row["note"] = f"k={k}: {exc}"
                break
            if hit is not None:
                row["upper_bound"] = k
                row["coefficient"] = str(hit[1])
                break
        out.append(row)
        if not args.json:
            ub = row["upper_bound"]
            print(f"{e.name:<14}{H.name:<10}n={H.n:<4}m={H.m:<4}AT <= {ub if ub else '?'}  {row['note']}")
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--budget", type=int, default=None,
                        help="live state budget (default: PLANEPAINT_BUDGET_MONOMIALS or 2^22)")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default: CPU count)")

    graph = _Parser(add_help=False)
    graph.add_argument("graph_pos", nargs="?", metavar="GRAPH", help="rotation-system JSON or planar_code file")
    graph.add_argument("--graph", help="catalog:NAME or a file path")
    graph.add_argument("--derived", default="G_v", help="derived graph, e.g. medial, G_vf, Gbar_vef")

    p = _Parser(prog="planepaint", description="Derived plane graphs, Alon-Tarsi numbers and paintability.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("faces", parents=[common, graph], help="trace the faces of a rotation system")
    s.set_defaults(func=cmd_faces)

    s = sub.add_parser("derive", parents=[common, graph], help="emit a derived graph as JSON")
    s.set_defaults(func=cmd_derive)

    s = sub.add_parser("coeff", parents=[common, graph], help="coefficient of one monomial")
    s.add_argument("--target", required=True, help="exponent vector, e.g. 2,1,0")
    s.add_argument("--method", choices=("dp", "dfs"), default="dp")
    s.add_argument("--split-depth", type=int, default=8)
    s.set_defaults(func=cmd_coeff)

    s = sub.add_parser("expand", parents=[common, graph], help="all non-vanishing monomials under a cap")
    s.add_argument("--cap", required=True, help="uniform cap or per-vertex caps")
    s.set_defaults(func=cmd_expand)

    s = sub.add_parser("at", parents=[common, graph], help="exact Alon-Tarsi number")
    s.add_argument("--max", type=int, default=8)
    s.set_defaults(func=cmd_at)

    s = sub.add_parser("orient", parents=[common, graph], help="min-max in-degree or degeneracy orientation")
    s.add_argument("--kind", choices=("minmax", "degeneracy"), default="minmax")
    s.add_argument("--coefficient", action="store_true", help="also compute the in-degree monomial's coefficient")
    s.set_defaults(func=cmd_orient)

    s = sub.add_parser("paint", parents=[common, graph], help="paintability game search")
    s.add_argument("--k", type=int, help="uniform token count")
    s.add_argument("--profile", help="per-vertex token counts")
    s.add_argument("--max", type=int, default=8, help="largest k tried for the painting number")
    s.add_argument("--limit", type=int, default=paint.DEFAULT_LIMIT, help="vertex limit")
    s.add_argument("--interactive-trace", action="store_true", help="print the strategy tree as text")
    s.add_argument("--depth", type=int, default=3, help="trace depth in moves")
    s.set_defaults(func=cmd_paint)

    s = sub.add_parser("chi", parents=[common, graph], help="chromatic number")
    s.set_defaults(func=cmd_chi)

    s = sub.add_parser("choosable", parents=[common, graph], help="k-choosability or choice number")
    s.add_argument("--k", type=int)
    s.add_argument("--max", type=int, default=6)
    s.set_defaults(func=cmd_choosable)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", default="all", help="all, T9..T17, schauz, lemma (comma separated)")
    s.add_argument("--catalog", default="catalog:all", help="catalog:NAME[,NAME], catalog:all or a file")
    s.add_argument("--method", choices=("auto", "exact", "constructive"), default="auto")
    s.add_argument("--time-budget", type=float, default=None,
                   help="seconds per check (default: PLANEPAINT_TIME_BUDGET_S or 300)")
    s.add_argument("--out", help="directory for report.json, report.csv and bounds.png")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("catalog", parents=[common], help="list or export catalog entries")
    s.add_argument("--export", help="catalog:NAME[,NAME] to export")
    s.add_argument("--format", choices=("json", "planar_code"), default="json")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("probe", parents=[common], help="exploratory upper-bound search")
    s.add_argument("--catalog", default="catalog:all")
    s.add_argument("--derived", default="G_vf")
    s.add_argument("--max", type=int, default=9)
    s.add_argument("--time-budget", type=float, default=60.0)
    s.set_defaults(func=cmd_probe)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore" if args.json else "default")
            return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PlanePaintError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
