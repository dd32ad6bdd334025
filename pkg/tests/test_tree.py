import pytest
from hypothesis import given
from hypothesis import strategies as st

from impnd.fixtures import CONCLUSION_TEXT, TAU, basic_tree, identity_tree
from impnd.formula import Atom, Imp, imp, render_formula
from impnd.rules import Mode, Rule
from impnd.tree import (TreeDerivation, TreeNode, assume, check_tree, elide_unary_repetitions,
                        enumerate_tree_paths, generate_random_proof, imp_elim, imp_intro,
                        is_path_closed, relabel, rep, tree_proves, walk)

from .conftest import proofs

a, b, c = Atom("a"), Atom("b"), Atom("c")


def test_identity():
    t = identity_tree()
    assert check_tree(t).ok
    (p,) = enumerate_tree_paths(t)
    assert p.h == 1 and is_path_closed(p)
    assert tree_proves(t)


def test_open_leaf_is_not_a_proof():
    t = TreeDerivation(imp_intro(b, assume(a)))
    assert check_tree(t).ok
    assert not tree_proves(t)


def test_bare_assumption_is_open():
    t = TreeDerivation(assume(a))
    assert check_tree(t).ok and not tree_proves(t)


def test_basic_tree_shape():
    t = basic_tree()
    assert check_tree(t).ok
    assert len(t) == 16
    assert render_formula(t.root_formula) == CONCLUSION_TEXT
    paths = enumerate_tree_paths(t)
    assert len(paths) == 5
    assert all(is_path_closed(p) for p in paths)
    assert sorted(p.h for p in paths) == [3, 6, 6, 7, 7]
    assert tree_proves(t)


def test_tau_path_is_closed_at_root():
    (tau_path,) = [p for p in enumerate_tree_paths(basic_tree()) if p.leaf_formula == TAU]
    assert tau_path.h == 3
    assert tau_path.nodes[-1].rule is Rule.IMP_I


def test_missing_discharge_breaks_proof():
    t = basic_tree()
    body = t.root.children[0]  # drop the final discharge of tau
    assert not tree_proves(TreeDerivation(body))


def test_labels_are_ignored_for_closure():
    t = relabel(basic_tree(), lambda _: 99)
    assert tree_proves(t)
    stripped = relabel(basic_tree(), lambda _: None)
    assert tree_proves(stripped)


@pytest.mark.parametrize("node, kind", [
    (TreeNode(Rule.IMP_E, b, (assume(a),)), "arity"),
    (TreeNode(Rule.IMP_E, c, (assume(a), assume(imp(a, b)))), "conclusion mismatch"),
    (TreeNode(Rule.IMP_E, b, (assume(c), assume(imp(a, b)))), "conclusion mismatch"),
    (TreeNode(Rule.IMP_I, imp(a, b), (assume(b),)), "missing antecedent"),
    (TreeNode(Rule.IMP_I, imp(c, b), (assume(b),), None, a), "conclusion mismatch"),
    (TreeNode(Rule.ASSUME, a, (assume(a),)), "arity"),
    (TreeNode(Rule.REP, a, (assume(a), assume(b))), "conclusion mismatch"),
])
def test_local_violations(node, kind):
    report = check_tree(TreeDerivation(node, Mode.NM_PLUS))
    assert not report.ok
    assert report.violation.kind == kind


def test_repetition_needs_nm_plus():
    t = rep(assume(a), assume(a))
    assert check_tree(TreeDerivation(t, Mode.NM_PLUS)).ok
    report = check_tree(TreeDerivation(t, Mode.NM))
    assert report.violation.kind == "repetition outside nm+"


def test_violation_reports_address():
    bad = imp_intro(a, TreeNode(Rule.IMP_E, c, (assume(a), assume(imp(a, b)))))
    report = check_tree(TreeDerivation(bad))
    assert report.violation.where == (0,)


def test_imp_elim_requires_implication():
    with pytest.raises(ValueError):
        imp_elim(assume(a), assume(b))


def test_elide_unary_repetitions():
    t = TreeDerivation(imp_intro(a, rep(assume(a))), Mode.NM_PLUS)
    e = elide_unary_repetitions(t)
    assert e.mode is Mode.NM
    assert [n.rule for _, n in walk(e.root)] == [Rule.IMP_I, Rule.ASSUME]


def test_generator_small():
    t = generate_random_proof(seed=1, max_depth=1, atoms=["a"])
    assert check_tree(t).ok and tree_proves(t)
    assert isinstance(t.root_formula, Imp)


def test_generator_is_deterministic():
    x = generate_random_proof(7, 6, "abc", Mode.NM_PLUS)
    y = generate_random_proof(7, 6, "abc", Mode.NM_PLUS)
    assert x == y


def test_generator_rejects_bad_arguments():
    with pytest.raises(ValueError):
        generate_random_proof(0, 0, "a")
    with pytest.raises(ValueError):
        generate_random_proof(0, 3, [])


@given(proofs())
def test_generated_proofs_are_valid_and_closed(t):
    assert check_tree(t).ok
    assert tree_proves(t)
    if t.mode is Mode.NM:
        assert all(n.rule is not Rule.REP for _, n in walk(t.root))


@given(proofs(), st.integers(1, 50))
def test_relabel_invariance(t, shift):
    assert tree_proves(relabel(t, lambda x: x + shift)) == tree_proves(t)


@given(proofs())
def test_one_path_per_leaf(t):
    leaves = sum(1 for _, n in walk(t.root) if n.rule is Rule.ASSUME)
    assert len(enumerate_tree_paths(t)) == leaves


@given(proofs())
def test_closure_is_prefix_monotone(t):
    # a closer on a leaf-ward prefix stays a closer on the whole path
    for p in enumerate_tree_paths(t):
        for cut in range(1, p.h + 1):
            prefix = p.nodes[: cut + 1]
            closed_prefix = any(
                n.rule is Rule.IMP_I and n.conclusion.antecedent == p.leaf_formula for n in prefix[1:]
            )
            if closed_prefix:
                assert is_path_closed(p)
