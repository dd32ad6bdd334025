"""Tree-like derivations: rule checking, deductive paths and closure."""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence, Union

from .formula import Atom, Formula, Imp, render_formula
from .rules import CheckReport, Mode, Rule, closes, local_violation

Address = tuple[int, ...]


@dataclass(frozen=True)
class TreeNode:
    rule: Rule
    conclusion: Formula
    children: tuple[TreeNode, ...] = ()
    label: Optional[int] = None
    antecedent: Optional[Formula] = None  # (->I) only

    def __repr__(self) -> str:
        return f"TreeNode({self.rule.value}, {render_formula(self.conclusion)!r}, {len(self.children)} children)"


def assume(f: Formula, label: Optional[int] = None) -> TreeNode:
    return TreeNode(Rule.ASSUME, f, (), label)


def imp_intro(antecedent: Formula, child: TreeNode, label: Optional[int] = None) -> TreeNode:
    return TreeNode(Rule.IMP_I, Imp(antecedent, child.conclusion), (child,), label, antecedent)


def imp_elim(minor: TreeNode, major: TreeNode) -> TreeNode:
    if not isinstance(major.conclusion, Imp):
        raise ValueError(f"major premise {render_formula(major.conclusion)} is not an implication")
    return TreeNode(Rule.IMP_E, major.conclusion.consequent, (minor, major))


def rep(*children: TreeNode) -> TreeNode:
    if not children:
        raise ValueError("repetition needs at least one premise")
    return TreeNode(Rule.REP, children[0].conclusion, tuple(children))


@dataclass(frozen=True)
class TreeDerivation:
    root: TreeNode
    mode: Mode = Mode.NM

    @property
    def root_formula(self) -> Formula:
        return self.root.conclusion

    def __len__(self) -> int:
        return sum(1 for _ in walk(self.root))


def walk(node: TreeNode, address: Address = ()) -> Iterator[tuple[Address, TreeNode]]:
    """Pre-order traversal yielding (address, node); children left to right."""
    stack = [(address, node)]
    while stack:
        addr, n = stack.pop()
        yield addr, n
        for i in range(len(n.children) - 1, -1, -1):
            stack.append((addr + (i,), n.children[i]))


def node_at(root: TreeNode, address: Address) -> TreeNode:
    node = root
    for slot in address:
        node = node.children[slot]
    return node


def check_tree(d: TreeDerivation) -> CheckReport:
    for addr, node in walk(d.root):
        v = local_violation(addr, node.rule, node.conclusion, node.antecedent,
                            [c.conclusion for c in node.children], d.mode)
        if v is not None:
            return CheckReport(v)
    return CheckReport()


@dataclass(frozen=True)
class DeductivePath:
    """Leaf-to-root node sequence ``[x_0, ..., x_h]``."""

    nodes: tuple[TreeNode, ...]
    addresses: tuple[Address, ...] = field(repr=False)

    @property
    def leaf(self) -> TreeNode:
        return self.nodes[0]

    @property
    def leaf_formula(self) -> Formula:
        return self.nodes[0].conclusion

    @property
    def h(self) -> int:
        return len(self.nodes) - 1

    def formulas(self) -> tuple[Formula, ...]:
        return tuple(n.conclusion for n in self.nodes)


def enumerate_tree_paths(d: TreeDerivation) -> list[DeductivePath]:
    paths = []
    for addr, node in walk(d.root):
        if node.rule is not Rule.ASSUME:
            continue
        nodes = [node_at(d.root, addr[:i]) for i in range(len(addr), -1, -1)]
        addrs = [addr[:i] for i in range(len(addr), -1, -1)]
        paths.append(DeductivePath(tuple(nodes), tuple(addrs)))
    return paths


def is_path_closed(p: DeductivePath) -> bool:
    # The root counts as a possible closer: the trailing rootless line in the
    # source figures is not modelled as a node.
    leaf = p.leaf_formula
    return any(closes(x.rule, x.conclusion, leaf) for x in p.nodes[1:])


def tree_proves(d: TreeDerivation) -> bool:
    return all(is_path_closed(p) for p in enumerate_tree_paths(d))


def relabel(d: TreeDerivation, mapping) -> TreeDerivation:
    """Apply ``mapping(old_label) -> new_label`` to every discharge label."""

    def go(n: TreeNode) -> TreeNode:
        label = None if n.label is None else mapping(n.label)
        return replace(n, label=label, children=tuple(go(c) for c in n.children))

    return TreeDerivation(go(d.root), d.mode)


# -- random closed proofs ----------------------------------------------------


def generate_random_proof(
    seed: int,
    max_depth: int,
    atoms: Sequence[Union[Atom, str]],
    mode: Mode = Mode.NM,
) -> TreeDerivation:
    """Random derivation that is valid and has every path closed.

    A body of inferences at most ``max_depth`` deep is grown first; every
    formula still labelling an open leaf is then discharged by a chain of
    introductions added below it.
    """
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if not atoms:
        raise ValueError("need at least one atom")
    pool = [a if isinstance(a, Atom) else Atom(a) for a in atoms]
    rng = random.Random(seed)
    body = _Grower(rng, pool, mode).grow(max_depth - 1)

    open_formulas = []
    for p in enumerate_tree_paths(TreeDerivation(body, mode)):
        if not is_path_closed(p) and p.leaf_formula not in open_formulas:
            open_formulas.append(p.leaf_formula)
    rng.shuffle(open_formulas)
    root = body
    for f in open_formulas:
        root = imp_intro(f, root)
    if not open_formulas and root.rule is not Rule.IMP_I:
        root = imp_intro(rng.choice(pool), root)
    return TreeDerivation(root, mode)


class _Grower:
    def __init__(self, rng: random.Random, atoms: list[Atom], mode: Mode) -> None:
        self.rng = rng
        self.atoms = atoms
        self.mode = mode

    def atom(self) -> Atom:
        return self.rng.choice(self.atoms)

    def hypothesis(self) -> Formula:
        if self.rng.random() < 0.7:
            return self.atom()
        return Imp(self.atom(), self.atom())

    def grow(self, depth: int) -> TreeNode:
        rng = self.rng
        r = rng.random()
        if depth <= 0 or r < 0.15:
            return assume(self.hypothesis())
        if r < 0.4:
            child = self.grow(depth - 1)
            leaves = [n.conclusion for _, n in walk(child) if n.rule is Rule.ASSUME]
            ant = rng.choice(leaves) if rng.random() < 0.7 else self.atom()
            return imp_intro(ant, child)
        if r < 0.75 or depth < 3:
            minor = self.grow(depth - 1)
            if rng.random() < 0.5:
                major = assume(Imp(minor.conclusion, self.atom()))
            else:
                major = imp_intro(minor.conclusion, self.grow(depth - 1))
            return imp_elim(minor, major)
        if r < 0.9 or self.mode is not Mode.NM_PLUS:
            return self.twins(depth)
        sub = self.grow(depth - 1)
        return rep(*([sub] * rng.randint(1, 3)))

    def twins(self, depth: int) -> TreeNode:
        """Two different subproofs of one atom, then the same introductions
        above each, joined by an elimination: material for merging."""
        rng = self.rng
        goal = self.atom()
        steps = [self.atom() for _ in range(rng.randint(1, 2))]
        sides = []
        for _ in range(2):
            minor = self.grow(depth - 3)
            node = imp_elim(minor, assume(Imp(minor.conclusion, goal)))
            for a in steps:
                node = imp_intro(a, node)
            sides.append(node)
        left, right = sides
        return imp_elim(left, imp_intro(right.conclusion, right))


def elide_unary_repetitions(d: TreeDerivation) -> TreeDerivation:
    """Drop every one-premise repetition, splicing its premise in its place."""

    def go(n: TreeNode) -> TreeNode:
        if n.rule is Rule.REP and len(n.children) == 1:
            return go(n.children[0])
        return replace(n, children=tuple(go(c) for c in n.children))

    root = go(d.root)
    has_rep = any(n.rule is Rule.REP for _, n in walk(root))
    return TreeDerivation(root, Mode.NM_PLUS if has_rep else Mode.NM)
