"""Tree/dag conversions: sharing, merging through repetitions, unfolding.

Coloring produced by :func:`compress`. Every member ``j`` of every merge
group ``g`` gets a fresh color ``c(g, j)``. Write ``inner(g, j)`` for the
colors of members of *other* groups that sit strictly inside the subtree of
member ``(g, j)``. Then

* the premise edge member -> Rep and the continuation edge leaving the
  shared suffix towards member ``j``'s old ancestor both carry
  ``{c(g, j)} | inner(g, j)``;
* the lineage edges inside the shared suffix carry the union of those sets;
* every other edge carries every color.

Member subtrees are disjoint, so a path that enters a group through member
``i`` and leaves through continuation ``j != i`` has an empty intersection,
while a path that copies a tree path keeps the color of the first group it
crosses.

Repetitions with two or more premises already present in the tree are
branch points of the same kind without a continuation: premise ``i`` gets
its own color plus the colors nested inside it, so their premise edges
never share a color. Such a repetition may not sit in a side premise of a
shared suffix, and groups may not nest inside each other's members.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .dag import DagDerivation, DagNode, Edge, EdgeColoring, check_dag_structure
from .formula import Formula
from .rules import Mode, Rule
from .tree import Address, TreeDerivation, TreeNode, walk


class InvalidPlan(ValueError):
    pass


class UnfoldAmbiguity(ValueError):
    pass


@dataclass(frozen=True)
class MergeGroup:
    members: tuple[Address, ...]
    shared: int = 0  # congruent ancestor steps shared above the Rep node


@dataclass(frozen=True)
class MergePlan:
    groups: tuple[MergeGroup, ...] = ()

    def __len__(self) -> int:
        return len(self.groups)


# -- canonical dag construction ----------------------------------------------


class _DagBuilder:
    """Collects nodes and edge colors, then renumbers in post-order from the root."""

    def __init__(self) -> None:
        self.nodes: dict[int, DagNode] = {}
        self.edge_colors: dict[Edge, Optional[frozenset[int]]] = {}

    def add(self, node: DagNode, colors: Sequence[Optional[frozenset[int]]] = ()) -> int:
        nid = len(self.nodes)
        self.nodes[nid] = node
        for slot, child in enumerate(node.premises):
            self.edge_colors[Edge(child, nid, slot)] = colors[slot] if slot < len(colors) else None
        return nid

    def finish(self, root: int, k: int, mode: Mode) -> DagDerivation:
        every = frozenset(range(1, k + 1))
        renum: dict[int, int] = {}
        stack: list[tuple[int, bool]] = [(root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                renum.setdefault(v, len(renum))
                continue
            if v in renum:
                continue
            stack.append((v, True))
            for p in reversed(self.nodes[v].premises):
                if p not in renum:
                    stack.append((p, False))
        nodes = {}
        for old, new in renum.items():
            n = self.nodes[old]
            nodes[new] = DagNode(n.rule, n.conclusion, tuple(renum[p] for p in n.premises), n.label, n.antecedent)
        colors = {}
        for e, cs in self.edge_colors.items():
            if e.parent in renum:
                colors[Edge(renum[e.child], renum[e.parent], e.slot)] = every if cs is None else cs
        return DagDerivation(dict(sorted(nodes.items())), renum[root], EdgeColoring(k, colors), mode)


def _dag_node(n: TreeNode, premises: tuple[int, ...]) -> DagNode:
    return DagNode(n.rule, n.conclusion, premises, n.label, n.antecedent)


def _is_branching(n: TreeNode) -> bool:
    return n.rule is Rule.REP and len(n.children) >= 2


def _branch_colors(owners: Sequence[Address], first: int = 1) -> dict[Address, frozenset[int]]:
    """Color set of each branch owner: its own color plus those of owners
    strictly inside its subtree."""
    color = {x: first + i for i, x in enumerate(owners)}
    return {x: frozenset({color[x]} | {color[y] for y in owners if _inside(y, x)}) for x in owners}


def hashcons(t: TreeDerivation) -> DagDerivation:
    """Share structurally identical subtrees (labels included).

    Without multi-premise repetitions the result has a single color.
    Subtrees containing one are never shared, and each of its premise edges
    gets its own branch colors.
    """
    b = _DagBuilder()
    table: dict[tuple, int] = {}
    owners = [a + (i,) for a, n in walk(t.root) if _is_branching(n) for i in range(len(n.children))]
    branch = _branch_colors(owners)

    def go(n: TreeNode, addr: Address) -> tuple[int, bool]:
        kids, branching = [], _is_branching(n)
        for i, c in enumerate(n.children):
            kid, inner = go(c, addr + (i,))
            kids.append(kid)
            branching |= inner
        colors = [branch[addr + (i,)] for i in range(len(kids))] if _is_branching(n) else []
        if branching:
            return b.add(_dag_node(n, tuple(kids)), colors), True
        key = (n.rule, n.conclusion, n.label, n.antecedent, tuple(kids))
        found = table.get(key)
        if found is None:
            found = table[key] = b.add(_dag_node(n, tuple(kids)), colors)
        return found, False

    return b.finish(go(t.root, ())[0], max(1, len(owners)), t.mode)


def tree_as_dag(t: TreeDerivation) -> DagDerivation:
    return compress(t, MergePlan())


# -- merging -------------------------------------------------------------------


def _shape(n: TreeNode, memo: dict[int, tuple]) -> tuple:
    """Label-free structural key."""
    key = memo.get(id(n))
    if key is None:
        key = (n.rule, n.conclusion, n.antecedent, tuple(_shape(c, memo) for c in n.children))
        memo[id(n)] = key
    return key


class _TreeIndex:
    def __init__(self, t: TreeDerivation) -> None:
        self.tree = t
        self.node = dict(walk(t.root))
        self.preorder = {a: i for i, a in enumerate(self.node)}
        self._shapes: dict[int, tuple] = {}
        self._branchy: dict[int, bool] = {}

    def has_branching(self, n: TreeNode) -> bool:
        hit = self._branchy.get(id(n))
        if hit is None:
            hit = _is_branching(n) or any(self.has_branching(c) for c in n.children)
            self._branchy[id(n)] = hit
        return hit

    def step(self, addr: Address, k: int) -> Optional[tuple]:
        """Descriptor of the k-th ancestor step above ``addr``: None if it
        does not exist. Equal descriptors mean congruent steps."""
        if k > len(addr):
            return None
        child_addr = addr[: len(addr) - k + 1]
        parent = self.node[child_addr[:-1]]
        slot = child_addr[-1]
        # side premises of a shared suffix are reached under the merged
        # colors only, which cannot choose among a repetition's branches
        if _is_branching(parent) or any(
            self.has_branching(c) for i, c in enumerate(parent.children) if i != slot
        ):
            return ("branching", child_addr[:-1])
        others = tuple(_shape(c, self._shapes) for i, c in enumerate(parent.children) if i != slot)
        return (parent.rule, parent.conclusion, parent.antecedent, slot, len(parent.children), others)


def _inside(addr: Address, top: Address) -> bool:
    return len(addr) > len(top) and addr[: len(top)] == top


def _validate(ix: _TreeIndex, plan: MergePlan) -> None:
    claimed: dict[Address, int] = {}
    siblings: list[tuple[Address, int]] = []
    members_all: list[tuple[Address, int]] = []
    for gi, g in enumerate(plan.groups):
        if len(g.members) < 2:
            raise InvalidPlan(f"group {gi}: needs at least two members")
        if g.shared < 0:
            raise InvalidPlan(f"group {gi}: negative shared length")
        for m in g.members:
            if m not in ix.node:
                raise InvalidPlan(f"group {gi}: no node at address {m}")
        first = ix.node[g.members[0]].conclusion
        for m in g.members[1:]:
            if ix.node[m].conclusion != first:
                raise InvalidPlan(f"group {gi}: member {m} concludes a different formula than {g.members[0]}")
        for i, a in enumerate(g.members):
            for b in g.members[i + 1:]:
                if a == b or _inside(a, b) or _inside(b, a):
                    raise InvalidPlan(f"group {gi}: members {a} and {b} overlap")
        for m in g.members:
            if len(m) <= g.shared:
                raise InvalidPlan(f"group {gi}: shared suffix above {m} reaches the root")
        for k in range(1, g.shared + 1):
            ref = ix.step(g.members[0], k)
            for m in g.members[1:]:
                if ix.step(m, k) != ref:
                    raise InvalidPlan(f"group {gi}: ancestor step {k} above {m} is not congruent with {g.members[0]}")
        for m in g.members:
            for k in range(0, g.shared + 1):
                a = m[: len(m) - k]
                if a in claimed:
                    raise InvalidPlan(f"group {gi}: node {a} already belongs to group {claimed[a]}")
                claimed[a] = gi
                if k >= 1:
                    for i in range(len(ix.node[a].children)):
                        if a + (i,) != m[: len(a) + 1]:
                            siblings.append((a + (i,), gi))
            members_all.append((m, gi))
    for m, gi in members_all:
        for top, gj in siblings:
            if m == top or _inside(m, top):
                raise InvalidPlan(f"group {gi}: member {m} lies in a side premise of group {gj}'s shared suffix")

    # gi encloses gj when a suffix top of gj sits below a member of gi; a
    # cycle here would need the merged dag to contain itself
    encloses: dict[int, set[int]] = {gi: set() for gi in range(len(plan.groups))}
    for gj, g in enumerate(plan.groups):
        for top in (m[: len(m) - g.shared] for m in g.members):
            for m, gi in members_all:
                if gi != gj and _inside(top, m):
                    encloses[gi].add(gj)
    state: dict[int, int] = {}

    def visit(gi: int) -> None:
        state[gi] = 1
        for gj in sorted(encloses[gi]):
            if state.get(gj) == 1:
                raise InvalidPlan(f"groups {gi} and {gj} are nested inside each other")
            if gj not in state:
                visit(gj)
        state[gi] = 2

    for gi in encloses:
        if gi not in state:
            visit(gi)


def compress(t: TreeDerivation, plan: MergePlan) -> DagDerivation:
    ix = _TreeIndex(t)
    _validate(ix, plan)

    members = [m for g in plan.groups for m in g.members]
    reps = [a + (i,) for a, n in ix.node.items() if _is_branching(n) for i in range(len(n.children))]
    owners = list(dict.fromkeys(members + reps))
    owner_colors = _branch_colors(owners)
    k = max(1, len(owners))
    branch = {(gi, j): owner_colors[m] for gi, g in enumerate(plan.groups) for j, m in enumerate(g.members)}

    # address of each suffix top -> (group, member)
    top_of: dict[Address, tuple[int, int]] = {}
    for gi, g in enumerate(plan.groups):
        for j, m in enumerate(g.members):
            top_of[m[: len(m) - g.shared]] = (gi, j)

    b = _DagBuilder()
    shared_top: dict[int, int] = {}

    def build(addr: Address) -> int:
        n = ix.node[addr]
        kids, colors = [], []
        for i in range(len(n.children)):
            a = addr + (i,)
            if a in top_of:
                gi, j = top_of[a]
                kids.append(build_group(gi))
                colors.append(branch[gi, j])
            else:
                kids.append(build(a))
                colors.append(owner_colors[a] if _is_branching(n) else None)
        return b.add(_dag_node(n, tuple(kids)), colors)

    def build_group(gi: int) -> int:
        if gi in shared_top:
            return shared_top[gi]
        g = plan.groups[gi]
        members = [build(m) for m in g.members]
        union = frozenset().union(*(branch[gi, j] for j in range(len(g.members))))
        first = g.members[0]
        cur = b.add(DagNode(Rule.REP, ix.node[first].conclusion, tuple(members)),
                    [branch[gi, j] for j in range(len(members))])
        for step in range(1, g.shared + 1):
            addr = first[: len(first) - step]
            lineage = first[len(addr)]
            n = ix.node[addr]
            kids, colors = [], []
            for i in range(len(n.children)):
                if i == lineage:
                    kids.append(cur)
                    colors.append(union)
                else:
                    kids.append(build(addr + (i,)))
                    colors.append(None)
            cur = b.add(_dag_node(n, tuple(kids)), colors)
        shared_top[gi] = cur
        return cur

    mode = Mode.NM_PLUS if plan.groups else t.mode
    return b.finish(build(()), k, mode)


def find_merge_plan(t: TreeDerivation) -> MergePlan:
    """Greedy plan: same-conclusion nodes whose ancestor steps are congruent.

    Candidates are ranked by nodes saved, ``(n - 1) * shared``, and accepted
    when they keep the plan valid.
    """
    ix = _TreeIndex(t)
    by_formula: dict[Formula, list[Address]] = {}
    for addr, n in ix.node.items():
        if addr:
            by_formula.setdefault(n.conclusion, []).append(addr)

    candidates: list[tuple[int, int, MergeGroup]] = []
    for addrs in by_formula.values():
        if len(addrs) < 2:
            continue
        clusters: dict[tuple, list[Address]] = {}
        for a in addrs:
            clusters.setdefault(ix.step(a, 1), []).append(a)
        for members in clusters.values():
            chosen: list[Address] = []
            for a in members:
                if not any(a == c or _inside(a, c) or _inside(c, a) for c in chosen):
                    chosen.append(a)
            if len(chosen) < 2:
                continue
            s = 0
            while True:
                k = s + 1
                if any(len(m) <= k for m in chosen):
                    break
                ref = ix.step(chosen[0], k)
                if any(ix.step(m, k) != ref for m in chosen[1:]):
                    break
                tops = {m[: len(m) - k] for m in chosen}
                if len(tops) < len(chosen):
                    break
                s = k
            if s >= 1:
                group = MergeGroup(tuple(chosen), s)
                candidates.append((-(len(chosen) - 1) * s, ix.preorder[chosen[0]], group))

    candidates.sort(key=lambda c: (c[0], c[1]))
    accepted: list[MergeGroup] = []
    for _, _, group in candidates:
        trial = MergePlan(tuple(accepted) + (group,))
        try:
            _validate(ix, trial)
        except InvalidPlan:
            continue
        accepted.append(group)
    return MergePlan(tuple(accepted))


# -- unfolding ---------------------------------------------------------------


def unfold(d: DagDerivation) -> TreeDerivation:
    """Duplicate shared nodes, resolving each Rep node by the color context.

    The context is the intersection of the edge colors from the root down to
    the current visit; a Rep node keeps the premises whose edge colors meet
    it, and a Rep node left with one premise is dropped.
    """
    report = check_dag_structure(d)
    if not report.ok:
        raise ValueError(f"cannot unfold an invalid dag: {report}")
    colors = d.coloring

    def go(v: int, ctx: frozenset[int]) -> TreeNode:
        n = d.nodes[v]
        kept: list[tuple[int, frozenset[int]]] = []
        for s, c in enumerate(n.premises):
            narrowed = ctx & colors.of(Edge(c, v, s))
            if narrowed:
                kept.append((c, narrowed))
            elif n.rule is not Rule.REP:
                raise UnfoldAmbiguity(f"edge {c}->{v} slot {s} shares no color with context {sorted(ctx)}")
        if n.rule is Rule.REP:
            if not kept:
                raise UnfoldAmbiguity(f"no premise of Rep node {v} matches context {sorted(ctx)}")
            if len(kept) == 1:
                return go(*kept[0])
        kids = tuple(go(c, narrowed) for c, narrowed in kept)
        return TreeNode(n.rule, n.conclusion, kids, n.label, n.antecedent)

    root = go(d.root, colors.palette)
    has_rep = any(n.rule is Rule.REP for _, n in walk(root))
    return TreeDerivation(root, Mode.NM_PLUS if has_rep else Mode.NM)


# -- comparison ----------------------------------------------------------------


class _Bijection:
    def __init__(self) -> None:
        self.fwd: dict = {}
        self.back: dict = {}

    def pair(self, a, b) -> bool:
        if a in self.fwd or b in self.back:
            return self.fwd.get(a, _MISSING) == b and self.back.get(b, _MISSING) == a
        self.fwd[a] = b
        self.back[b] = a
        return True


_MISSING = object()


def trees_equal(a: TreeDerivation, b: TreeDerivation, up_to_labels: bool = True) -> bool:
    labels = _Bijection()
    stack = [(a.root, b.root)]
    while stack:
        x, y = stack.pop()
        if (x.rule, x.conclusion, x.antecedent, len(x.children)) != (y.rule, y.conclusion, y.antecedent, len(y.children)):
            return False
        if up_to_labels:
            if (x.label is None) != (y.label is None):
                return False
            if x.label is not None and not labels.pair(x.label, y.label):
                return False
        elif x.label != y.label:
            return False
        stack.extend(zip(x.children, y.children))
    return True


def dag_isomorphism(a: DagDerivation, b: DagDerivation, up_to_labels: bool = True) -> Optional[dict[int, int]]:
    """Node map witnessing isomorphism up to discharge-label renaming and
    color permutation, or None."""
    if len(a.nodes) != len(b.nodes) or a.coloring.k != b.coloring.k:
        return None
    nodes = _Bijection()
    labels = _Bijection()
    stack = [(a.root, b.root)]
    while stack:
        x, y = stack.pop()
        if x in nodes.fwd or y in nodes.back:
            if not nodes.pair(x, y):
                return None
            continue
        nodes.pair(x, y)
        nx, ny = a.nodes[x], b.nodes[y]
        if (nx.rule, nx.conclusion, nx.antecedent, len(nx.premises)) != (ny.rule, ny.conclusion, ny.antecedent, len(ny.premises)):
            return None
        if up_to_labels:
            if (nx.label is None) != (ny.label is None):
                return None
            if nx.label is not None and not labels.pair(nx.label, ny.label):
                return None
        elif nx.label != ny.label:
            return None
        stack.extend(zip(nx.premises, ny.premises))
    if len(nodes.fwd) != len(a.nodes):
        return None

    def signatures(d: DagDerivation, rename: Callable[[Edge], Edge]) -> list[frozenset[Edge]]:
        sig: dict[int, set[Edge]] = {c: set() for c in range(1, d.coloring.k + 1)}
        for e, cs in d.coloring.colors.items():
            for c in cs:
                sig.setdefault(c, set()).add(rename(e))
        return sorted((frozenset(s) for s in sig.values()), key=lambda s: sorted(s))

    m = nodes.fwd
    mapped = signatures(a, lambda e: Edge(m[e.child], m[e.parent], e.slot))
    if mapped != signatures(b, lambda e: e):
        return None
    return dict(m)


def dag_isomorphic(a: DagDerivation, b: DagDerivation, up_to_labels: bool = True) -> bool:
    return dag_isomorphism(a, b, up_to_labels) is not None
