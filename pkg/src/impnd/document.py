"""JSON proof documents (format_version 1).

    {"format_version": 1, "kind": "tree" | "dag", "mode": "nm" | "nm+",
     "root": id,
     "nodes": [{"id", "rule", "formula", "premises", "label"?, "antecedent"?}],
     "colors": [{"child", "parent", "slot", "colors": [int]}]   # dag only}

Rules are "assume", "impI", "impE", "rep". Loading checks the schema and
the formulas; rule validity is left to the kernels so that an invalid
derivation can still be loaded and reported on.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

import jsonschema

from .dag import DagDerivation, DagNode, Edge, EdgeColoring
from .formula import Formula, FormulaSyntaxError, Imp, parse_formula, render_formula
from .rules import Mode, Rule
from .tree import TreeDerivation, TreeNode

FORMAT_VERSION = 1

Derivation = Union[TreeDerivation, DagDerivation]

SCHEMA = {
    "type": "object",
    "required": ["format_version", "kind", "mode", "root", "nodes"],
    "additionalProperties": False,
    "properties": {
        "format_version": {"const": FORMAT_VERSION},
        "kind": {"enum": ["tree", "dag"]},
        "mode": {"enum": ["nm", "nm+"]},
        "root": {"type": "integer"},
        "nodes": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["id", "rule", "formula", "premises"],
                "additionalProperties": False,
                "properties": {
                    "id": {"type": "integer"},
                    "rule": {"enum": [r.value for r in Rule]},
                    "formula": {"type": "string"},
                    "premises": {"type": "array", "items": {"type": "integer"}},
                    "label": {"type": "integer", "minimum": 1},
                    "antecedent": {"type": "string"},
                },
            },
        },
        "colors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["child", "parent", "slot", "colors"],
                "additionalProperties": False,
                "properties": {
                    "child": {"type": "integer"},
                    "parent": {"type": "integer"},
                    "slot": {"type": "integer", "minimum": 0},
                    "colors": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
}


class DocumentError(ValueError):
    pass


def _record(nid: int, rule: Rule, conclusion: Formula, premises, label, antecedent) -> dict:
    rec = {"id": nid, "rule": rule.value, "formula": render_formula(conclusion), "premises": list(premises)}
    if label is not None:
        rec["label"] = label
    if antecedent is not None:
        rec["antecedent"] = render_formula(antecedent)
    return rec


def to_document(obj: Derivation) -> dict:
    if isinstance(obj, TreeDerivation):
        records: list[dict] = []

        def go(n: TreeNode) -> int:
            kids = [go(c) for c in n.children]
            records.append(_record(len(records), n.rule, n.conclusion, kids, n.label, n.antecedent))
            return len(records) - 1

        root = go(obj.root)
        return {"format_version": FORMAT_VERSION, "kind": "tree", "mode": obj.mode.value,
                "root": root, "nodes": records}

    nodes = [_record(v, n.rule, n.conclusion, n.premises, n.label, n.antecedent)
             for v, n in sorted(obj.nodes.items())]
    colors = [{"child": e.child, "parent": e.parent, "slot": e.slot, "colors": sorted(cs)}
              for e, cs in sorted(obj.coloring.colors.items(), key=lambda kv: (kv[0].parent, kv[0].slot, kv[0].child))]
    return {"format_version": FORMAT_VERSION, "kind": "dag", "mode": obj.mode.value,
            "root": obj.root, "nodes": nodes, "colors": colors}


def _formula(text: str, where: str) -> Formula:
    try:
        return parse_formula(text)
    except FormulaSyntaxError as exc:
        raise DocumentError(f"{where}: {exc}") from exc


def from_document(doc: dict) -> Derivation:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(map(str, exc.absolute_path)) or "<document>"
        raise DocumentError(f"schema: {path}: {exc.message}") from exc

    kind = doc["kind"]
    if ("colors" in doc) != (kind == "dag"):
        raise DocumentError("colors must be present exactly for dag documents")

    parsed: dict[int, DagNode] = {}
    for rec in doc["nodes"]:
        nid = rec["id"]
        if nid in parsed:
            raise DocumentError(f"duplicate node id {nid}")
        rule = Rule(rec["rule"])
        conclusion = _formula(rec["formula"], f"node {nid} formula")
        antecedent = None
        if "antecedent" in rec:
            if rule is not Rule.IMP_I:
                raise DocumentError(f"node {nid}: antecedent given for rule {rule.value}")
            antecedent = _formula(rec["antecedent"], f"node {nid} antecedent")
        elif rule is Rule.IMP_I and isinstance(conclusion, Imp):
            antecedent = conclusion.antecedent
        parsed[nid] = DagNode(rule, conclusion, tuple(rec["premises"]), rec.get("label"), antecedent)

    for nid, n in parsed.items():
        for p in n.premises:
            if p not in parsed:
                raise DocumentError(f"node {nid}: unknown premise id {p}")
    root = doc["root"]
    if root not in parsed:
        raise DocumentError(f"unknown root id {root}")
    mode = Mode(doc["mode"])

    if kind == "tree":
        return TreeDerivation(_tree_from(parsed, root), mode)

    colors: dict[Edge, frozenset[int]] = {}
    for rec in doc["colors"]:
        e = Edge(rec["child"], rec["parent"], rec["slot"])
        if e in colors:
            raise DocumentError(f"duplicate color record for edge {tuple(e)}")
        colors[e] = frozenset(rec["colors"])
    k = max((c for cs in colors.values() for c in cs), default=1)
    return DagDerivation(dict(sorted(parsed.items())), root, EdgeColoring(max(k, 1), colors), mode)


def _tree_from(parsed: dict[int, DagNode], root: int) -> TreeNode:
    uses: dict[int, int] = {}
    for n in parsed.values():
        for p in n.premises:
            uses[p] = uses.get(p, 0) + 1
    shared = sorted(p for p, c in uses.items() if c > 1)
    if shared:
        raise DocumentError(f"tree document uses node {shared[0]} as a premise more than once")
    if root in uses:
        raise DocumentError("tree root is used as a premise")

    built: dict[int, TreeNode] = {}
    order: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        order.append(v)
        stack.extend(parsed[v].premises)
    if len(order) != len(parsed):
        raise DocumentError("tree document has nodes unreachable from the root")
    for v in reversed(order):
        n = parsed[v]
        built[v] = TreeNode(n.rule, n.conclusion, tuple(built[p] for p in n.premises), n.label, n.antecedent)
    return built[root]


def dumps(obj: Derivation) -> str:
    return json.dumps(to_document(obj), indent=2) + "\n"


def loads(text: str) -> Derivation:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    return from_document(doc)


def load(path: Union[str, Path]) -> Derivation:
    return loads(Path(path).read_text(encoding="utf-8"))


def save(obj: Derivation, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
