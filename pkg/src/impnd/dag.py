"""Dag-like derivations with repetition nodes and an edge-coloring certificate.

A path is *regular* when the color sets of the edges it traverses have a
common color. The regular verifier runs one reachability pass per (color,
leaf) pair, so its cost is polynomial in the size of the certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Mapping, NamedTuple, Optional

from .formula import Formula, render_formula
from .rules import CheckReport, Mode, Rule, Violation, closes, local_violation


class Edge(NamedTuple):
    child: int
    parent: int
    slot: int


@dataclass(frozen=True)
class DagNode:
    rule: Rule
    conclusion: Formula
    premises: tuple[int, ...] = ()
    label: Optional[int] = None
    antecedent: Optional[Formula] = None


@dataclass(frozen=True)
class EdgeColoring:
    k: int
    colors: Mapping[Edge, frozenset[int]]

    @property
    def palette(self) -> frozenset[int]:
        return frozenset(range(1, self.k + 1))

    def of(self, edge: Edge) -> frozenset[int]:
        return self.colors.get(edge, frozenset())

    def permuted(self, perm: Mapping[int, int]) -> EdgeColoring:
        return EdgeColoring(self.k, {e: frozenset(perm[c] for c in cs) for e, cs in self.colors.items()})


def uniform_coloring(nodes: Mapping[int, DagNode], k: int = 1) -> EdgeColoring:
    every = frozenset(range(1, k + 1))
    return EdgeColoring(k, {Edge(c, p, s): every for p, n in nodes.items() for s, c in enumerate(n.premises)})


@dataclass(frozen=True)
class DagDerivation:
    nodes: Mapping[int, DagNode]
    root: int
    coloring: EdgeColoring
    mode: Mode = Mode.NM_PLUS

    @property
    def root_formula(self) -> Formula:
        return self.nodes[self.root].conclusion

    def edges(self) -> list[Edge]:
        return [Edge(c, p, s) for p in sorted(self.nodes) for s, c in enumerate(self.nodes[p].premises)]

    @cached_property
    def order(self) -> dict[int, int]:
        """Rank of each node in a depth-first pre-order from the root."""
        rank: dict[int, int] = {}
        stack = [self.root]
        while stack:
            v = stack.pop()
            if v in rank or v not in self.nodes:
                continue
            rank[v] = len(rank)
            stack.extend(reversed(self.nodes[v].premises))
        for v in sorted(self.nodes):
            rank.setdefault(v, len(rank))
        return rank

    @cached_property
    def topo(self) -> list[int]:
        """Nodes reachable from the root, every parent before its premises."""
        post: list[int] = []
        seen: set[int] = set()
        stack: list[tuple[int, bool]] = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                post.append(v)
                continue
            if v in seen or v not in self.nodes:
                continue
            seen.add(v)
            stack.append((v, True))
            for p in reversed(self.nodes[v].premises):
                stack.append((p, False))
        return post[::-1]

    @cached_property
    def parents(self) -> dict[int, list[Edge]]:
        up: dict[int, list[Edge]] = {v: [] for v in self.nodes}
        for e in self.edges():
            if e.child in up:
                up[e.child].append(e)
        for v in up:
            up[v].sort(key=lambda e: (self.order[e.parent], e.slot))
        return up

    def leaves(self) -> list[int]:
        return sorted((v for v, n in self.nodes.items() if n.rule is Rule.ASSUME), key=self.order.__getitem__)


# -- structure ---------------------------------------------------------------


def _find_cycle(d: DagDerivation) -> Optional[list[int]]:
    WHITE, GREY, BLACK = 0, 1, 2
    state = {v: WHITE for v in d.nodes}
    for start in sorted(d.nodes):
        if state[start] != WHITE:
            continue
        stack = [(start, iter(d.nodes[start].premises))]
        trail = [start]
        state[start] = GREY
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                state[v] = BLACK
                stack.pop()
                trail.pop()
            elif state[nxt] == GREY:
                return trail[trail.index(nxt):] + [nxt]
            elif state[nxt] == WHITE:
                state[nxt] = GREY
                stack.append((nxt, iter(d.nodes[nxt].premises)))
                trail.append(nxt)
    return None


def check_dag_structure(d: DagDerivation) -> CheckReport:
    for v in sorted(d.nodes):
        for p in d.nodes[v].premises:
            if p not in d.nodes:
                return CheckReport(Violation("dangling premise", v, f"premise {p} does not exist"))
    if d.root not in d.nodes:
        return CheckReport(Violation("orphan root", d.root, "root id is not a node"))

    cycle = _find_cycle(d)
    if cycle is not None:
        return CheckReport(Violation("cycle", cycle[0], "premise graph has a cycle: " + " -> ".join(map(str, cycle))))

    for v in sorted(d.nodes):
        has_parent = bool(d.parents[v])
        if v == d.root and has_parent:
            return CheckReport(Violation("orphan root", v, "root is used as a premise"))
        if v != d.root and not has_parent:
            return CheckReport(Violation("orphan", v, "node is neither the root nor a premise"))

    for v in sorted(d.nodes):
        n = d.nodes[v]
        viol = local_violation(v, n.rule, n.conclusion, n.antecedent,
                               [d.nodes[p].conclusion for p in n.premises], d.mode)
        if viol is not None:
            return CheckReport(viol)

    col = d.coloring
    if col.k < 1:
        return CheckReport(Violation("missing color", d.root, "coloring needs k >= 1"))
    edges = set(d.edges())
    for e in sorted(col.colors):
        if e not in edges:
            return CheckReport(Violation("missing color", e.parent, f"color given for non-edge {tuple(e)}"))
    for e in d.edges():
        cs = col.colors.get(e)
        if not cs:
            return CheckReport(Violation("missing color", e.parent, f"edge {tuple(e)} has no color"))
        bad = sorted(c for c in cs if not 1 <= c <= col.k)
        if bad:
            return CheckReport(Violation("missing color", e.parent, f"edge {tuple(e)} uses color {bad[0]} outside 1..{col.k}"))
    for v in sorted(d.nodes):
        n = d.nodes[v]
        if n.rule is not Rule.REP:
            continue
        seen: dict[int, int] = {}
        for s, c in enumerate(n.premises):
            for color in sorted(col.of(Edge(c, v, s))):
                if color in seen:
                    return CheckReport(Violation(f"ambiguous unfolding for color {color}", v,
                                                 f"premise slots {seen[color]} and {s} both carry color {color}"))
                seen[color] = s
    return CheckReport()


# -- paths ---------------------------------------------------------------------


class PathExplosion(Exception):
    def __init__(self, count: int, limit: int) -> None:
        super().__init__(f"{count} paths exceed the limit of {limit}")
        self.count = count
        self.limit = limit


@dataclass(frozen=True)
class DagPath:
    nodes: tuple[int, ...]
    slots: tuple[int, ...]  # premise slot used at each upward step
    leaf_formula: Formula
    closed: bool
    colors: frozenset[int]  # intersection of the traversed edges' color sets
    formulas: tuple[Formula, ...] = field(repr=False, default=())

    @property
    def regular(self) -> bool:
        return bool(self.colors)

    @property
    def h(self) -> int:
        return len(self.nodes) - 1

    def edges(self) -> list[Edge]:
        return [Edge(a, b, s) for a, b, s in zip(self.nodes, self.nodes[1:], self.slots)]


def _make_path(d: DagDerivation, nodes: list[int], slots: list[int]) -> DagPath:
    leaf = d.nodes[nodes[0]].conclusion
    colors = d.coloring.palette
    for a, b, s in zip(nodes, nodes[1:], slots):
        colors = colors & d.coloring.of(Edge(a, b, s))
    closed = any(closes(d.nodes[v].rule, d.nodes[v].conclusion, leaf) for v in nodes[1:])
    return DagPath(tuple(nodes), tuple(slots), leaf, closed, colors,
                   tuple(d.nodes[v].conclusion for v in nodes))


def count_dag_paths(d: DagDerivation) -> int:
    """Number of leaf-to-root paths, by dynamic programming over the dag."""
    to_root: dict[int, int] = {}
    for v in d.topo:
        to_root[v] = 1 if v == d.root else sum(to_root.get(e.parent, 0) for e in d.parents[v])
    return sum(to_root.get(v, 0) for v in d.leaves())


def enumerate_dag_paths(d: DagDerivation, limit: int) -> list[DagPath]:
    count = count_dag_paths(d)
    if count > limit:
        raise PathExplosion(count, limit)
    out: list[DagPath] = []
    for leaf in d.leaves():
        stack: list[tuple[list[int], list[int]]] = [([leaf], [])]
        while stack:
            nodes, slots = stack.pop()
            v = nodes[-1]
            if v == d.root:
                out.append(_make_path(d, nodes, slots))
                continue
            for e in reversed(d.parents[v]):
                stack.append((nodes + [e.parent], slots + [e.slot]))
    return out


# -- verifiers -------------------------------------------------------------


@dataclass
class Verdict:
    proves: bool
    witness: Optional[DagPath]  # an open (regular) path when proves is False
    edge_visits: int
    color: Optional[int] = None  # color subgraph the witness lives in

    def __bool__(self) -> bool:
        return self.proves


def _open_path_from(
    d: DagDerivation,
    leaf: int,
    allowed: Callable[[Edge], bool],
    counter: list[int],
) -> Optional[tuple[list[int], list[int]]]:
    """Breadth-first search upward from ``leaf`` avoiding closers of its formula."""
    leaf_formula = d.nodes[leaf].conclusion
    came_from: dict[int, Optional[Edge]] = {leaf: None}
    queue = deque([leaf])
    while queue:
        v = queue.popleft()
        if v == d.root:
            nodes, slots = [v], []
            while came_from[nodes[-1]] is not None:
                e = came_from[nodes[-1]]
                nodes.append(e.child)
                slots.append(e.slot)
            return nodes[::-1], slots[::-1]
        for e in d.parents[v]:
            counter[0] += 1
            if e.parent in came_from or not allowed(e):
                continue
            p = d.nodes[e.parent]
            if closes(p.rule, p.conclusion, leaf_formula):
                continue
            came_from[e.parent] = e
            queue.append(e.parent)
    return None


def verify_naive(d: DagDerivation) -> Verdict:
    """Every leaf-to-root path closed, by per-leaf reachability."""
    counter = [0]
    for leaf in d.leaves():
        found = _open_path_from(d, leaf, lambda e: True, counter)
        if found is not None:
            return Verdict(False, _make_path(d, *found), counter[0])
    return Verdict(True, None, counter[0])


def verify_regular(d: DagDerivation) -> Verdict:
    """Every regular path closed: per color, reachability inside the
    subgraph of edges carrying that color."""
    counter = [0]
    colors = d.coloring.colors
    for c in range(1, d.coloring.k + 1):
        allowed = lambda e, c=c: c in colors.get(e, ())
        for leaf in d.leaves():
            found = _open_path_from(d, leaf, allowed, counter)
            if found is not None:
                return Verdict(False, _make_path(d, *found), counter[0], c)
    return Verdict(True, None, counter[0])


def dag_proves_naive(d: DagDerivation) -> bool:
    return verify_naive(d).proves


def dag_proves_regular(d: DagDerivation) -> bool:
    return verify_regular(d).proves


def describe_path(p: DagPath) -> str:
    return " => ".join(render_formula(f) for f in p.formulas)
