"""Command-line front end.

Exit codes: 0 valid and proves, 1 valid but does not prove, 2 structurally
invalid, 3 I/O, schema, parse or plan errors, 4 path explosion.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from . import document
from .dag import (DagDerivation, PathExplosion, check_dag_structure, count_dag_paths, describe_path,
                  enumerate_dag_paths, verify_naive, verify_regular)
from .document import DocumentError
from .dot import to_dot
from .formula import FormulaSyntaxError, parse_formula, render_formula, size
from .oracle import countermodel_search, decide_ljt
from .rules import Mode
from .transform import InvalidPlan, MergeGroup, MergePlan, compress, find_merge_plan, unfold
from .tree import TreeDerivation, check_tree, enumerate_tree_paths, generate_random_proof, is_path_closed, walk

EXIT_PROVES, EXIT_NOT_PROVES, EXIT_INVALID, EXIT_ERROR, EXIT_EXPLOSION = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_ERROR) -> None:
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        return document.load(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from exc
    except DocumentError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _write(text: str, output: Optional[str]) -> None:
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise CliError(f"{output}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text)


def _structure(obj):
    return check_tree(obj) if isinstance(obj, TreeDerivation) else check_dag_structure(obj)


def node_count(obj) -> int:
    return len(obj) if isinstance(obj, TreeDerivation) else len(obj.nodes)


# -- check ---------------------------------------------------------------------


def check_file(path: str, criterion: str = "regular") -> tuple[int, dict]:
    """Exit code and machine report for one document."""
    try:
        obj = _load(path)
    except CliError as exc:
        return EXIT_ERROR, {"file": path, "error": str(exc)}
    report = _structure(obj)
    out = {"file": path, "kind": "tree" if isinstance(obj, TreeDerivation) else "dag",
           "mode": obj.mode.value, "nodes": node_count(obj), "conclusion": render_formula(obj.root_formula),
           "valid": report.ok}
    if not report.ok:
        v = report.violation
        out["violation"] = {"kind": v.kind, "where": list(v.where) if isinstance(v.where, tuple) else v.where,
                            "message": v.message, "expected": v.expected, "actual": v.actual}
        return EXIT_INVALID, out

    if isinstance(obj, TreeDerivation):
        paths = enumerate_tree_paths(obj)
        open_paths = [p for p in paths if not is_path_closed(p)]
        out["criterion"] = "tree"
        out["proves"] = not open_paths
        out["paths"] = len(paths)
        if open_paths:
            out["open_leaf"] = render_formula(open_paths[0].leaf_formula)
    else:
        verdict = verify_naive(obj) if criterion == "naive" else verify_regular(obj)
        out["criterion"] = criterion
        out["proves"] = verdict.proves
        out["edge_visits"] = verdict.edge_visits
        if verdict.witness is not None:
            out["witness"] = [render_formula(f) for f in verdict.witness.formulas]
            if verdict.color is not None:
                out["witness_color"] = verdict.color
    return (EXIT_PROVES if out["proves"] else EXIT_NOT_PROVES), out


def _check_text(r: dict) -> str:
    if "error" in r:
        return f"{r['file']}: error: {r['error']}"
    head = f"{r['file']}: {r['kind']} ({r['mode']}), {r['nodes']} nodes, conclusion {r['conclusion']}"
    if not r["valid"]:
        v = r["violation"]
        detail = f"{v['kind']} at {v['where']}: {v['message']}"
        if v["expected"] is not None or v["actual"] is not None:
            detail += f" (expected {v['expected']}, got {v['actual']})"
        return f"{head}\n  INVALID: {detail}"
    lines = [head, "  structure: valid"]
    if r["criterion"] == "tree":
        state = f"all {r['paths']} paths closed" if r["proves"] else f"open path from leaf {r['open_leaf']}"
    else:
        state = "all paths closed" if r["criterion"] == "naive" else "all regular paths closed"
        if not r["proves"]:
            state = "open path: " + " => ".join(r["witness"])
            if "witness_color" in r:
                state += f" (color {r['witness_color']})"
    lines.append(f"  {r['criterion']}: {'PROVES' if r['proves'] else 'DOES NOT PROVE'}; {state}")
    return "\n".join(lines)


def cmd_check(args) -> int:
    criterion = "naive" if args.naive else "regular"
    if args.jobs > 1 and len(args.paths) > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(check_file, args.paths, [criterion] * len(args.paths)))
    else:
        results = [check_file(p, criterion) for p in args.paths]
    if args.json:
        payload = [r for _, r in results]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        for _, r in results:
            print(_check_text(r))
    return max(code for code, _ in results)


# -- transforms -------------------------------------------------------------


def _read_plan(path: str) -> MergePlan:
    try:
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        groups = tuple(MergeGroup(tuple(tuple(int(i) for i in m) for m in g["members"]), int(g.get("shared", 0)))
                       for g in raw["groups"])
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise CliError(f"{path}: malformed plan: {exc}") from exc
    return MergePlan(groups)


def cmd_compress(args) -> int:
    obj = _load(args.path)
    if not isinstance(obj, TreeDerivation):
        raise CliError(f"{args.path}: compress expects a tree document")
    report = check_tree(obj)
    if not report.ok:
        raise CliError(f"{args.path}: invalid tree: {report}", EXIT_INVALID)
    plan = find_merge_plan(obj) if args.plan == "auto" else _read_plan(args.plan)
    try:
        dag = compress(obj, plan)
    except InvalidPlan as exc:
        raise CliError(f"invalid plan: {exc}") from exc
    _write(document.dumps(dag), args.output)
    reps = len(plan.groups)
    msg = f"nodes: {node_count(obj)} -> {node_count(dag)} ({reps} repetition node(s) inserted, {dag.coloring.k} color(s))"
    print(msg, file=sys.stdout if args.output else sys.stderr)
    return 0


def cmd_unfold(args) -> int:
    obj = _load(args.path)
    if not isinstance(obj, DagDerivation):
        raise CliError(f"{args.path}: unfold expects a dag document")
    report = check_dag_structure(obj)
    if not report.ok:
        raise CliError(f"{args.path}: invalid dag: {report}", EXIT_INVALID)
    try:
        tree = unfold(obj)
    except ValueError as exc:
        raise CliError(f"{args.path}: {exc}") from exc
    _write(document.dumps(tree), args.output)
    print(f"nodes: {node_count(obj)} -> {node_count(tree)}", file=sys.stdout if args.output else sys.stderr)
    return 0


# -- paths -------------------------------------------------------------------


def cmd_paths(args) -> int:
    obj = _load(args.path)
    report = _structure(obj)
    if not report.ok:
        raise CliError(f"{args.path}: invalid derivation: {report}", EXIT_INVALID)
    rows = []
    if isinstance(obj, TreeDerivation):
        paths = enumerate_tree_paths(obj)
        if len(paths) > args.limit:
            raise CliError(f"{len(paths)} paths exceed the limit of {args.limit}", EXIT_EXPLOSION)
        for p in paths:
            rows.append({"leaf": render_formula(p.leaf_formula), "h": p.h, "closed": is_path_closed(p), "regular": True})
    else:
        try:
            paths = enumerate_dag_paths(obj, args.limit)
        except PathExplosion as exc:
            raise CliError(str(exc), EXIT_EXPLOSION) from exc
        for p in paths:
            rows.append({"leaf": render_formula(p.leaf_formula), "h": p.h, "closed": p.closed,
                         "regular": p.regular, "route": describe_path(p)})
    summary = Counter((r["closed"], r["regular"]) for r in rows)
    counts = {"paths": len(rows),
              "closed_regular": summary[True, True], "open_regular": summary[False, True],
              "closed_irregular": summary[True, False], "open_irregular": summary[False, False]}
    if args.json:
        print(json.dumps({"file": args.path, "rows": rows, "summary": counts}, indent=2))
        return 0
    width = max([4] + [len(r["leaf"]) for r in rows])
    print(f"{'leaf':<{width}}  {'h':>3}  closed  regular")
    for r in rows:
        print(f"{r['leaf']:<{width}}  {r['h']:>3}  {'yes' if r['closed'] else 'no':<6}  {'yes' if r['regular'] else 'no'}")
    print(f"{counts['paths']} paths: {counts['closed_regular']} closed/regular, {counts['open_regular']} open/regular, "
          f"{counts['closed_irregular']} closed/irregular, {counts['open_irregular']} open/irregular")
    return 0


# -- prove / gen / dot / stats ------------------------------------------------


def cmd_prove(args) -> int:
    try:
        f = parse_formula(args.formula)
    except FormulaSyntaxError as exc:
        raise CliError(f"parse error: {exc}") from exc
    theorem = decide_ljt(f)
    out = {"formula": render_formula(f), "theorem": theorem}
    if not theorem:
        model = countermodel_search(f, args.max_worlds)
        out["countermodel_worlds"] = None if model is None else len(model)
        if model is not None:
            out["countermodel"] = {
                "above": [sorted(a) for a in model.above],
                "valuation": [sorted(x.name for x in v) for v in model.valuation],
            }
    if args.json:
        print(json.dumps(out, indent=2))
    elif theorem:
        print(f"THEOREM  {out['formula']}")
    else:
        n = out["countermodel_worlds"]
        found = f"countermodel with {n} world{'s' if n != 1 else ''}" if n else f"no countermodel within {args.max_worlds} worlds"
        print(f"NON-THEOREM  {out['formula']}  ({found})")
    return EXIT_PROVES if theorem else EXIT_NOT_PROVES


def cmd_gen(args) -> int:
    atoms = [a.strip() for a in args.atoms.split(",") if a.strip()]
    try:
        tree = generate_random_proof(args.seed, args.max_depth, atoms, Mode(args.mode))
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write(document.dumps(tree), args.output)
    return 0


def cmd_dot(args) -> int:
    obj = _load(args.path)
    _write(to_dot(obj, Path(args.path).stem), args.output)
    return 0


def stats(obj) -> dict:
    if isinstance(obj, TreeDerivation):
        nodes = [n for _, n in walk(obj.root)]
        rules = Counter(n.rule.value for n in nodes)
        out = {"kind": "tree", "paths": len(enumerate_tree_paths(obj)), "depth": max(len(a) for a, _ in walk(obj.root))}
    else:
        nodes = list(obj.nodes.values())
        rules = Counter(n.rule.value for n in nodes)
        out = {"kind": "dag", "paths": count_dag_paths(obj), "edges": len(obj.edges()), "colors": obj.coloring.k,
               "shared_nodes": sum(len(ps) > 1 for ps in obj.parents.values())}
    out.update({"mode": obj.mode.value, "nodes": len(nodes), "rules": dict(sorted(rules.items())),
                "leaves": rules.get("assume", 0), "conclusion": render_formula(obj.root_formula),
                "conclusion_size": size(obj.root_formula),
                "max_formula_size": max(size(n.conclusion) for n in nodes)})
    return out


def cmd_stats(args) -> int:
    out = stats(_load(args.path))
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key, value in out.items():
            print(f"{key:>17}: {value}")
    return 0


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="impnd", description="Natural deduction proofs in implicational minimal logic.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="check structure and provability")
    p.add_argument("paths", nargs="+", metavar="path")
    crit = p.add_mutually_exclusive_group()
    crit.add_argument("--naive", action="store_true", help="dag: require every path closed")
    crit.add_argument("--regular", action="store_true", help="dag: require every regular path closed (default)")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("compress", help="merge a tree into a dag")
    p.add_argument("path")
    p.add_argument("--plan", default="auto", help="'auto' or a JSON plan file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("unfold", help="unfold a dag back into a tree")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("paths", help="list deductive paths")
    p.add_argument("path")
    p.add_argument("--limit", type=int, default=10_000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("prove", help="decide a formula")
    p.add_argument("formula")
    p.add_argument("--max-worlds", type=int, default=6)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("gen", help="write a random closed proof")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-depth", type=int, default=6)
    p.add_argument("--atoms", default="a,b,c")
    p.add_argument("--mode", choices=["nm", "nm+"], default="nm")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("dot", help="graphviz export")
    p.add_argument("path")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("stats", help="size statistics")
    p.add_argument("path")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"impnd: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
