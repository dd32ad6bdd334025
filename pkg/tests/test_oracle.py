import itertools
from functools import lru_cache

import pytest
from hypothesis import given, settings

from impnd.fixtures import TAU, s
from impnd.formula import Atom, Imp, atoms_of, imp, parse_formula
from impnd.oracle import (KripkeModel, Sequent, countermodel_search, decide_ljt, prove_sequent,
                          random_formula)

from .conftest import formulas

a, b, c = Atom("a"), Atom("b"), Atom("c")

THEOREMS = [
    "a -> a",
    "a -> b -> a",
    "(a -> b -> c) -> (a -> b) -> a -> c",
    "(a -> b) -> (b -> c) -> a -> c",
    "((((a -> b) -> a) -> a) -> b) -> b",
    "a -> (a -> b) -> b",
    "((a -> b) -> b) -> (b -> a) -> a -> a",
]
NON_THEOREMS = [
    "a",
    "((a -> b) -> a) -> a",
    "(a -> b) -> b -> a",
    "((a -> b) -> b) -> a",
    "(a -> b) -> a",
]


@lru_cache(maxsize=None)
def rooted_posets(n: int):
    """All partial orders on 0..n-1 with 0 least, as up-set tuples.

    Worlds are labelled so i <= j implies i <= j as integers, which loses no
    order type."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    out = []
    for bits in itertools.product([False, True], repeat=len(pairs)):
        rel = {(i, i) for i in range(n)} | {p for p, on in zip(pairs, bits) if on}
        if any((0, j) not in rel for j in range(n)):
            continue
        if any((i, k) not in rel for (i, j) in rel for (j2, k) in rel if j == j2):
            continue
        out.append(tuple(frozenset(j for j in range(n) if (i, j) in rel) for i in range(n)))
    return out


def brute_forces(up, val, w, f):
    if isinstance(f, Atom):
        return f in val[w]
    return all(not brute_forces(up, val, v, f.antecedent) or brute_forces(up, val, v, f.consequent)
               for v in up[w])


def brute_countermodel_size(f, max_worlds):
    """Fewest worlds of a countermodel, or None, by exhaustive enumeration."""
    names = sorted(atoms_of(f), key=lambda x: x.name)
    for n in range(1, max_worlds + 1):
        for up in rooted_posets(n):
            for choice in itertools.product(range(1 << len(names)), repeat=n):
                val = [frozenset(x for i, x in enumerate(names) if m >> i & 1) for m in choice]
                if any(not val[w] <= val[v] for w in range(n) for v in up[w]):
                    continue
                if not brute_forces(up, val, 0, f):
                    return n
    return None


def test_rooted_poset_counts():
    # rooted posets on 1, 2, 3 labelled-compatible worlds
    assert [len(rooted_posets(n)) for n in (1, 2, 3)] == [1, 1, 2]


@pytest.mark.parametrize("text", THEOREMS)
def test_theorems(text):
    f = parse_formula(text)
    assert decide_ljt(f)
    assert countermodel_search(f, 4) is None


@pytest.mark.parametrize("text", NON_THEOREMS)
def test_non_theorems(text):
    f = parse_formula(text)
    assert not decide_ljt(f)
    m = countermodel_search(f, 4)
    assert m is not None and m.is_well_formed() and m.refutes(f)


def test_peirce_needs_two_worlds():
    peirce = parse_formula("((a -> b) -> a) -> a")
    m = countermodel_search(peirce, 6)
    assert len(m) == 2
    assert countermodel_search(peirce, 1) is None


def test_atom_single_world():
    m = countermodel_search(a, 3)
    assert len(m) == 1 and m.valuation == (frozenset(),)


def test_tau_is_not_a_theorem_but_its_discharge_is():
    assert not decide_ljt(TAU)
    assert countermodel_search(TAU, 6) is not None
    assert decide_ljt(Imp(TAU, s))


def test_sequents():
    assert prove_sequent(Sequent(frozenset({a, imp(a, b)}), b))
    assert not prove_sequent(Sequent(frozenset({imp(a, b)}), b))
    assert prove_sequent(Sequent(frozenset({imp(imp(a, b), c), b}), c))


def test_model_forcing_is_monotone():
    m = KripkeModel(2, (frozenset({0, 1}), frozenset({1})), (frozenset(), frozenset({a})))
    assert m.is_well_formed()
    assert not m.forces(0, a) and m.forces(1, a)
    assert m.refutes(parse_formula("((a -> b) -> a) -> a"))


def test_ill_formed_model_detected():
    bad = KripkeModel(2, (frozenset({0, 1}), frozenset({1})), (frozenset({a}), frozenset()))
    assert not bad.is_well_formed()


def test_countermodel_search_bound():
    with pytest.raises(ValueError):
        countermodel_search(a, 0)


def test_countermodel_is_deterministic():
    f = parse_formula("((a -> b) -> c) -> (a -> c) -> c")
    assert countermodel_search(f, 5) == countermodel_search(f, 5)


def test_random_formula():
    f = random_formula(3, 9, "abc")
    assert f == random_formula(3, 9, "abc")
    assert atoms_of(f) <= {a, b, c}
    with pytest.raises(ValueError):
        random_formula(0, 0, "a")


@settings(max_examples=150)
@given(formulas)
def test_search_agrees_with_brute_force(f):
    if len(atoms_of(f)) > 3:
        return
    found = countermodel_search(f, 3)
    expected = brute_countermodel_size(f, 3)
    assert (found is None) == (expected is None)
    if found is not None:
        assert len(found) == expected


@given(formulas)
def test_prover_and_models_never_contradict(f):
    theorem = decide_ljt(f)
    model = countermodel_search(f, 3)
    assert not (theorem and model is not None)
    if model is not None:
        assert model.refutes(f)
