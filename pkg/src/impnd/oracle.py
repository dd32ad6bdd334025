"""Decision procedures for implicational intuitionistic (= minimal) logic.

:func:`decide_ljt` is a contraction-free sequent prover. It terminates
without loop checking because every rule lowers a multiset measure on the
sequent. :func:`countermodel_search` is an independent semantic check:
an exhaustive search for a small Kripke countermodel.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .formula import Atom, Formula, Imp, atoms_of, render_formula, size, subformulas


@dataclass(frozen=True)
class Sequent:
    context: frozenset[Formula]
    goal: Formula


# -- contraction-free sequent calculus ---------------------------------------


class _Prover:
    def __init__(self) -> None:
        self.memo: dict[Sequent, bool] = {}

    def prove(self, context: Iterable[Formula], goal: Formula) -> bool:
        ctx = set(context)
        # right rule is invertible: move antecedents into the context
        while isinstance(goal, Imp):
            ctx.add(goal.antecedent)
            goal = goal.consequent
        # p, p -> B  ~>  p, B  is invertible; saturate
        changed = True
        while changed:
            changed = False
            for f in list(ctx):
                if isinstance(f, Imp) and isinstance(f.antecedent, Atom) and f.antecedent in ctx:
                    ctx.discard(f)
                    ctx.add(f.consequent)
                    changed = True
        if goal in ctx:
            return True

        key = Sequent(frozenset(ctx), goal)
        cached = self.memo.get(key)
        if cached is not None:
            return cached
        result = False
        for f in key.context:
            if isinstance(f, Imp) and isinstance(f.antecedent, Imp):
                # (C -> D) -> B:  Γ, D -> B ⊢ C -> D   and   Γ, B ⊢ goal
                c, dd = f.antecedent.antecedent, f.antecedent.consequent
                rest = key.context - {f}
                if self.prove(rest | {Imp(dd, f.consequent)}, Imp(c, dd)) and self.prove(rest | {f.consequent}, goal):
                    result = True
                    break
        self.memo[key] = result
        return result


def decide_ljt(f: Formula) -> bool:
    return _Prover().prove((), f)


def prove_sequent(s: Sequent) -> bool:
    return _Prover().prove(s.context, s.goal)


# -- Kripke semantics ---------------------------------------------------------


@dataclass(frozen=True)
class KripkeModel:
    """Finite Kripke model; world 0 is the root."""

    worlds: int
    above: tuple[frozenset[int], ...]  # above[w]: worlds v with w <= v
    valuation: tuple[frozenset[Atom], ...]

    def __len__(self) -> int:
        return self.worlds

    def is_well_formed(self) -> bool:
        ws = range(self.worlds)
        for w in ws:
            if w not in self.above[w]:
                return False
            for v in self.above[w]:
                if not self.above[v] <= self.above[w]:
                    return False
                if v != w and w in self.above[v]:
                    return False
                if not self.valuation[w] <= self.valuation[v]:
                    return False
        return all(w in self.above[0] for w in ws)

    def forces(self, w: int, f: Formula) -> bool:
        if isinstance(f, Atom):
            return f in self.valuation[w]
        return all(not self.forces(v, f.antecedent) or self.forces(v, f.consequent) for v in self.above[w])

    def refutes(self, f: Formula) -> bool:
        return not self.forces(0, f)


class _Types:
    """Worlds of a reduced model, each identified by the set of subformulas
    of the target formula it forces."""

    def __init__(self, f: Formula) -> None:
        self.subs = subformulas(f)
        self.atoms = sorted(atoms_of(f), key=lambda a: a.name)

    def forced(self, val: frozenset[Atom], above: Iterable[frozenset[Formula]]) -> frozenset[Formula]:
        above = list(above)
        t: set[Formula] = set()
        for g in self.subs:
            if isinstance(g, Atom):
                if g in val:
                    t.add(g)
            elif (g.antecedent not in t or g.consequent in t) and all(g in u for u in above):
                t.add(g)
        return frozenset(t)

    def valuations(self, family: Sequence[frozenset[Formula]]) -> Iterable[frozenset[Atom]]:
        allowed = [a for a in self.atoms if all(a in u for u in family)]
        for r in range(len(allowed) + 1):
            for combo in itertools.combinations(allowed, r):
                yield frozenset(combo)


def _upsets(family: Sequence[frozenset[Formula]]) -> Iterable[tuple[frozenset[Formula], ...]]:
    n = len(family)
    for mask in range(1 << n):
        chosen = [family[i] for i in range(n) if mask >> i & 1]
        if all(family[j] in chosen or not any(family[j] > c for c in chosen) for j in range(n)):
            yield tuple(chosen)


def _model(root: frozenset[Formula], family: Sequence[frozenset[Formula]], types: _Types) -> KripkeModel:
    worlds = [root] + [t for t in family if t != root]
    above = tuple(frozenset(j for j, v in enumerate(worlds) if w <= v) for w in worlds)
    val = tuple(frozenset(a for a in types.atoms if a in w) for w in worlds)
    return KripkeModel(len(worlds), above, val)


def countermodel_search(f: Formula, max_worlds: int) -> Optional[KripkeModel]:
    """Smallest Kripke model with at most ``max_worlds`` worlds whose root
    does not force ``f``, or None.

    Complete for the bound: quotienting any countermodel by the set of
    subformulas each world forces gives a countermodel no larger, whose
    worlds are distinct forced-sets ordered by inclusion. Those are built
    here top-down, one new minimal-or-incomparable world at a time.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be >= 1")
    types = _Types(f)
    level: set[frozenset[frozenset[Formula]]] = {frozenset()}
    for n in range(1, max_worlds + 1):
        for fam in sorted(level, key=_family_key):
            family = list(fam)
            for val in types.valuations(family):
                root = types.forced(val, family)
                if f not in root:
                    model = _model(root, family, types)
                    if not model.is_well_formed() or not model.refutes(f):
                        raise AssertionError("countermodel failed re-verification")
                    return model
        if n == max_worlds:
            break
        nxt: set[frozenset[frozenset[Formula]]] = set()
        for fam in level:
            family = list(fam)
            for up in _upsets(family):
                for val in types.valuations(up):
                    t = types.forced(val, up)
                    if t in fam:
                        continue
                    if any(u > t and u not in up for u in family) or any(t > u for u in family):
                        continue
                    nxt.add(fam | {t})
        level = nxt
    return None


def _family_key(fam: frozenset[frozenset[Formula]]) -> list[list[str]]:
    return sorted(sorted(render_formula(g) for g in t) for t in fam)


# -- random formulas -----------------------------------------------------------


def random_formula(seed: int, max_size: int, atoms: Sequence[Union[Atom, str]]) -> Formula:
    """Uniform number of atom occurrences, random shape, random atoms."""
    if max_size < 1:
        raise ValueError("max_size must be >= 1")
    pool = [a if isinstance(a, Atom) else Atom(a) for a in atoms]
    rng = random.Random(seed)
    leaves = rng.randint(1, (max_size + 1) // 2)

    def grow(n: int) -> Formula:
        if n == 1:
            return rng.choice(pool)
        left = rng.randint(1, n - 1)
        return Imp(grow(left), grow(n - left))

    f = grow(leaves)
    assert size(f) <= max_size
    return f
