import random
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from impnd.dag import (DagDerivation, DagNode, Edge, EdgeColoring, PathExplosion, check_dag_structure,
                       count_dag_paths, dag_proves_naive, dag_proves_regular, describe_path,
                       enumerate_dag_paths, uniform_coloring, verify_naive, verify_regular)
from impnd.fixtures import A, D, TAU, a, b, basic_dag, d, g
from impnd.formula import imp, render_formula
from impnd.rules import Rule
from impnd.transform import compress, find_merge_plan, hashcons

from .conftest import proofs
from .helpers import brute_classify, brute_naive, brute_regular, random_recoloring
from .helpers import ladder as make_ladder


def with_colors(dag: DagDerivation, **changes) -> DagDerivation:
    colors = dict(dag.coloring.colors)
    for key, cs in changes.items():
        c, p, s = map(int, key.lstrip("e").split("_"))
        colors[Edge(c, p, s)] = frozenset(cs)
    return replace(dag, coloring=EdgeColoring(dag.coloring.k, colors))


def test_basic_dag_is_well_formed():
    dag = basic_dag()
    assert check_dag_structure(dag).ok
    assert len(dag.nodes) == 16
    assert dag.coloring.k == 2


def test_basic_dag_path_census():
    paths = enumerate_dag_paths(basic_dag(), limit=100)
    assert len(paths) == count_dag_paths(basic_dag()) == 9
    census = sorted((p.closed, p.regular) for p in paths)
    assert census == [(False, False)] * 4 + [(True, True)] * 5
    # the oracle agrees path for path
    brute = sorted((c, r, tuple(map(render_formula, f))) for c, r, f in brute_classify(basic_dag()))
    mine = sorted((p.closed, p.regular, tuple(map(render_formula, p.formulas))) for p in paths)
    assert brute == mine


def test_irregular_paths_cross_branches():
    for p in enumerate_dag_paths(basic_dag(), 100):
        if not p.regular:
            assert p.leaf_formula in {a, d, imp(a, b), imp(d, b)}
            assert not p.closed


def test_naive_rejects_with_witness():
    v = verify_naive(basic_dag())
    assert not v.proves
    w = v.witness
    assert not w.closed
    assert w.leaf_formula == a
    assert imp(imp(d, b), imp(g, b)) in w.formulas
    assert describe_path(w).startswith("a => b => b => g -> b => (d -> b) -> g -> b")


def test_regular_accepts():
    v = verify_regular(basic_dag())
    assert v.proves and v.witness is None
    assert v.edge_visits > 0


def test_removing_root_discharge_breaks_regular():
    dag = basic_dag()
    nodes = {k: n for k, n in dag.nodes.items() if k != 15}
    colors = {e: cs for e, cs in dag.coloring.colors.items() if e.parent != 15}
    cut = DagDerivation(nodes, 14, EdgeColoring(2, colors))
    assert check_dag_structure(cut).ok
    v = verify_regular(cut)
    assert not v.proves
    assert v.witness.leaf_formula == TAU and v.witness.regular


def test_cycle_detected():
    dag = basic_dag()
    nodes = dict(dag.nodes)
    nodes[2] = DagNode(Rule.IMP_E, b, (0, 8))
    bad = replace(dag, nodes=nodes)
    report = check_dag_structure(bad)
    assert report.violation.kind == "cycle"


def test_ambiguous_color_detected():
    bad = with_colors(basic_dag(), e5_6_1={1, 2})
    report = check_dag_structure(bad)
    assert report.violation.kind == "ambiguous unfolding for color 1"
    assert report.violation.where == 6


@pytest.mark.parametrize("mutate, kind", [
    (lambda n: {**n, 99: DagNode(Rule.ASSUME, a)}, "orphan"),
    (lambda n: {**n, 2: DagNode(Rule.IMP_E, b, (0, 42))}, "dangling premise"),
    (lambda n: {**n, 7: DagNode(Rule.IMP_I, imp(g, a), (6,), None, g)}, "conclusion mismatch"),
])
def test_structural_violations(mutate, kind):
    dag = basic_dag()
    bad = replace(dag, nodes=mutate(dict(dag.nodes)))
    assert check_dag_structure(bad).violation.kind == kind


def test_missing_color_detected():
    dag = basic_dag()
    colors = dict(dag.coloring.colors)
    del colors[Edge(0, 2, 0)]
    bad = replace(dag, coloring=EdgeColoring(2, colors))
    assert check_dag_structure(bad).violation.kind == "missing color"
    assert check_dag_structure(with_colors(dag, e0_2_0={3})).violation.kind == "missing color"


def test_path_explosion():
    with pytest.raises(PathExplosion) as err:
        enumerate_dag_paths(basic_dag(), limit=8)
    assert err.value.count == 9


def test_exponential_dag_counts_without_enumerating():
    n = 40
    ladder = make_ladder(n)
    assert check_dag_structure(ladder).ok
    assert count_dag_paths(ladder) == 2 ** n
    assert verify_naive(ladder).proves and verify_regular(ladder).proves
    with pytest.raises(PathExplosion):
        enumerate_dag_paths(ladder, 10_000)


def test_color_permutation_invariance():
    dag = basic_dag()
    swapped = replace(dag, coloring=dag.coloring.permuted({1: 2, 2: 1}))
    assert check_dag_structure(swapped).ok
    assert dag_proves_regular(swapped) == dag_proves_regular(dag)
    assert dag_proves_naive(swapped) == dag_proves_naive(dag)


def test_uniform_coloring_makes_regular_equal_naive():
    dag = basic_dag()
    flat = replace(dag, coloring=uniform_coloring(dag.nodes, 1))
    assert verify_regular(flat).proves == verify_naive(flat).proves is False


def _ceiling(dag):
    n_edges = len(dag.edges())
    return dag.coloring.k * len(dag.nodes) * len(dag.leaves()) * max(n_edges, 1)


def test_visit_ceiling_on_example():
    dag = basic_dag()
    assert verify_regular(dag).edge_visits <= _ceiling(dag)
    assert verify_naive(dag).edge_visits <= _ceiling(dag)


@given(proofs(), st.integers(0, 2**32))
def test_reachability_matches_enumeration(t, seed):
    dag = compress(t, find_merge_plan(t))
    for candidate in (dag, hashcons(t), random_recoloring(dag, random.Random(seed))):
        assert check_dag_structure(candidate).ok
        assert dag_proves_naive(candidate) == brute_naive(candidate)
        assert dag_proves_regular(candidate) == brute_regular(candidate)
        v = verify_regular(candidate)
        assert v.edge_visits <= _ceiling(candidate)


@given(proofs(), st.integers(0, 2**32))
def test_naive_implies_regular(t, seed):
    dag = random_recoloring(compress(t, find_merge_plan(t)), random.Random(seed))
    if dag_proves_naive(dag):
        assert dag_proves_regular(dag)


@given(proofs(), st.permutations([1, 2, 3, 4, 5, 6]))
def test_permutation_invariance_random(t, perm):
    dag = compress(t, find_merge_plan(t))
    k = dag.coloring.k
    if k > 6:
        return
    order = [c for c in perm if c <= k]
    mapping = {i + 1: order[i] for i in range(k)}
    moved = replace(dag, coloring=dag.coloring.permuted(mapping))
    assert check_dag_structure(moved).ok
    assert dag_proves_regular(moved) == dag_proves_regular(dag)


@given(proofs())
def test_witness_is_an_open_path(t):
    dag = random_recoloring(compress(t, find_merge_plan(t)), random.Random(0))
    for v in (verify_naive(dag), verify_regular(dag)):
        if not v.proves:
            w = v.witness
            assert not w.closed
            assert w.nodes[-1] == dag.root
            assert dag.nodes[w.nodes[0]].rule is Rule.ASSUME
            if v.color is not None:
                assert v.color in w.colors


def test_fixture_formulas_line_up():
    dag = basic_dag()
    assert dag.nodes[9].conclusion == A and dag.nodes[11].conclusion == D
