"""The worked example: a tree proof of tau -> s and its merged dag.

Atoms ``a, b, g, d, s`` stand for alpha, beta, gamma, delta, sigma.

    A   = a -> (a -> b) -> g -> b
    D   = d -> (d -> b) -> g -> b
    tau = D -> A -> s

The tree eliminates ``tau`` against ``D`` and then against ``A``, and
discharges ``tau`` at the root. The unary repetitions of ``tau`` and the
doubled ``A`` line of the drawing are left out. The dag merges the two
derivations of ``b`` with a two-premise repetition and shares the
introduction of ``g -> b`` between both branches.
"""

from __future__ import annotations

from .dag import DagDerivation, DagNode, Edge, EdgeColoring
from .formula import Atom, Formula, imp
from .rules import Mode, Rule
from .tree import TreeDerivation, TreeNode, assume, imp_elim, imp_intro

a, b, g, d, s = (Atom(n) for n in "abgds")

A: Formula = imp(a, imp(a, b), g, b)
D: Formula = imp(d, imp(d, b), g, b)
TAU: Formula = imp(D, A, s)
TAU_TEXT = "(d -> ((d -> b) -> (g -> b))) -> ((a -> ((a -> b) -> (g -> b))) -> s)"
CONCLUSION_TEXT = "((d -> (d -> b) -> g -> b) -> (a -> (a -> b) -> g -> b) -> s) -> s"


def _branch(x: Atom, x_label: int, xb_label: int) -> TreeNode:
    # [x], [x -> b] |- b ; g -> b ; (x -> b) -> g -> b ; x -> (x -> b) -> g -> b
    beta = imp_elim(assume(x, x_label), assume(imp(x, b), xb_label))
    return imp_intro(x, imp_intro(imp(x, b), imp_intro(g, beta), xb_label), x_label)


def basic_tree() -> TreeDerivation:
    left = _branch(a, 1, 2)
    middle = _branch(d, 3, 4)
    a_to_s = imp_elim(middle, assume(TAU, 5))
    return TreeDerivation(imp_intro(TAU, imp_elim(left, a_to_s), 5), Mode.NM)


def basic_dag() -> DagDerivation:
    I, E, R, H = Rule.IMP_I, Rule.IMP_E, Rule.REP, Rule.ASSUME
    gb = imp(g, b)
    nodes = {
        0: DagNode(H, a, (), 1),
        1: DagNode(H, imp(a, b), (), 2),
        2: DagNode(E, b, (0, 1)),
        3: DagNode(H, d, (), 3),
        4: DagNode(H, imp(d, b), (), 4),
        5: DagNode(E, b, (3, 4)),
        6: DagNode(R, b, (2, 5)),
        7: DagNode(I, gb, (6,), None, g),
        8: DagNode(I, imp(imp(a, b), gb), (7,), 2, imp(a, b)),
        9: DagNode(I, A, (8,), 1, a),
        10: DagNode(I, imp(imp(d, b), gb), (7,), 4, imp(d, b)),
        11: DagNode(I, D, (10,), 3, d),
        12: DagNode(H, TAU, (), 5),
        13: DagNode(E, imp(A, s), (11, 12)),
        14: DagNode(E, s, (9, 13)),
        15: DagNode(I, imp(TAU, s), (14,), 5, TAU),
    }
    alpha, delta, both = frozenset({1}), frozenset({2}), frozenset({1, 2})
    special = {
        Edge(2, 6, 0): alpha,   # alpha-side derivation of b into the repetition
        Edge(5, 6, 1): delta,
        Edge(6, 7, 0): both,    # shared g -> b
        Edge(7, 8, 0): alpha,   # continuation back into the alpha branch
        Edge(7, 10, 0): delta,
    }
    colors = {}
    for p, n in nodes.items():
        for slot, c in enumerate(n.premises):
            e = Edge(c, p, slot)
            colors[e] = special.get(e, both)
    return DagDerivation(nodes, 15, EdgeColoring(2, colors), Mode.NM_PLUS)


def identity_tree() -> TreeDerivation:
    return TreeDerivation(imp_intro(a, assume(a, 1), 1), Mode.NM)
