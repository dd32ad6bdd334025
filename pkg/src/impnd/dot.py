"""Graphviz export. Edges run premise -> conclusion, the direction of inference.

    impnd dot proof.json > proof.gv && dot -Tpng -O proof.gv
"""

from __future__ import annotations

from .dag import DagDerivation, Edge
from .formula import render_formula
from .rules import Rule
from .tree import TreeDerivation, walk

_RULE_TEXT = {Rule.ASSUME: "", Rule.IMP_I: "->I", Rule.IMP_E: "->E", Rule.REP: "R"}


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_label(rule: Rule, formula: str, label, arity: int) -> str:
    if rule is Rule.ASSUME:
        text = f"[{formula}]"
    else:
        name = f"R{arity}" if rule is Rule.REP else _RULE_TEXT[rule]
        text = f"{formula}  ({name})"
    if label is not None:
        text += f" ^{label}"
    return text


def to_dot(obj, name: str = "derivation") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    if isinstance(obj, TreeDerivation):
        ids = {}
        for addr, n in walk(obj.root):
            ids[addr] = f"n{len(ids)}"
            text = _node_label(n.rule, render_formula(n.conclusion), n.label, len(n.children))
            lines.append(f"  {ids[addr]} [label={_quote(text)}];")
        for addr, n in walk(obj.root):
            for i in range(len(n.children)):
                lines.append(f"  {ids[addr + (i,)]} -> {ids[addr]} [taillabel={i}];")
    elif isinstance(obj, DagDerivation):
        for v, n in sorted(obj.nodes.items()):
            text = _node_label(n.rule, render_formula(n.conclusion), n.label, len(n.premises))
            extra = ", peripheries=2" if v == obj.root else ""
            lines.append(f"  n{v} [label={_quote(text)}{extra}];")
        for v, n in sorted(obj.nodes.items()):
            for s, c in enumerate(n.premises):
                cs = obj.coloring.of(Edge(c, v, s))
                colors = "{" + ",".join(map(str, sorted(cs))) + "}"
                lines.append(f"  n{c} -> n{v} [label={_quote(colors)}, taillabel={s}];")
    else:
        raise TypeError(f"cannot export {type(obj).__name__}")
    lines.append("}")
    return "\n".join(lines) + "\n"
