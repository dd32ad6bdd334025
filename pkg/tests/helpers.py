"""Independent reference computations used as test oracles."""

import random

from impnd.dag import DagDerivation, DagNode, Edge, EdgeColoring
from impnd.formula import Atom, Imp
from impnd.rules import Rule


def brute_paths(d: DagDerivation):
    """All leaf-to-root paths by naive recursion over the premise table.

    Yields (node list, edge list) pairs; shares no code with the package.
    """
    uses = {}
    for p, node in d.nodes.items():
        for slot, c in enumerate(node.premises):
            uses.setdefault(c, []).append((p, slot))

    def up(v):
        if v == d.root:
            yield [v], []
            return
        for p, slot in uses.get(v, []):
            for nodes, edges in up(p):
                yield [v] + nodes, [(v, p, slot)] + edges

    for v, node in d.nodes.items():
        if not node.premises:
            yield from up(v)


def brute_classify(d: DagDerivation):
    """Per path: (closed, regular, formula sequence)."""
    out = []
    for nodes, edges in brute_paths(d):
        leaf = d.nodes[nodes[0]].conclusion
        closed = False
        for v in nodes[1:]:
            n = d.nodes[v]
            if n.rule is Rule.IMP_I and isinstance(n.conclusion, Imp) and n.conclusion.antecedent == leaf:
                closed = True
        common = set(range(1, d.coloring.k + 1))
        for c, p, slot in edges:
            common &= set(d.coloring.colors[Edge(c, p, slot)])
        out.append((closed, bool(common), tuple(d.nodes[v].conclusion for v in nodes)))
    return out


def brute_naive(d: DagDerivation) -> bool:
    return all(closed for closed, _, _ in brute_classify(d))


def brute_regular(d: DagDerivation) -> bool:
    return all(closed for closed, regular, _ in brute_classify(d) if regular)


def random_recoloring(d: DagDerivation, rng: random.Random, k: int = None) -> DagDerivation:
    """Fresh coloring that keeps every repetition deterministic."""
    k = k or rng.randint(1, 4)
    colors = {}
    for p, node in d.nodes.items():
        if node.rule is Rule.REP:
            owner = {c: rng.randrange(len(node.premises)) for c in range(1, k + 1)}
            for slot, c in enumerate(node.premises):
                mine = frozenset(col for col, s in owner.items() if s == slot)
                colors[Edge(c, p, slot)] = mine
        else:
            for slot, c in enumerate(node.premises):
                size = rng.randint(1, k)
                colors[Edge(c, p, slot)] = frozenset(rng.sample(range(1, k + 1), size))
    # an edge may not be left colorless: hand each such edge a private color
    for e in sorted(colors):
        if not colors[e]:
            k += 1
            colors[e] = frozenset({k})
    return DagDerivation(d.nodes, d.root, EdgeColoring(k, colors), d.mode)


def ladder(n: int) -> DagDerivation:
    """a, then n two-premise repetitions of a, then a -> a: 2**n paths."""
    a = Atom("a")
    nodes = {0: DagNode(Rule.ASSUME, a)}
    colors = {}
    for i in range(1, n + 1):
        nodes[i] = DagNode(Rule.REP, a, (i - 1, i - 1))
        colors[Edge(i - 1, i, 0)] = frozenset({1})
        colors[Edge(i - 1, i, 1)] = frozenset({2})
    nodes[n + 1] = DagNode(Rule.IMP_I, Imp(a, a), (n,), None, a)
    colors[Edge(n, n + 1, 0)] = frozenset({1, 2})
    return DagDerivation(nodes, n + 1, EdgeColoring(2, colors))
