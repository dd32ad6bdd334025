"""Natural deduction in purely implicational minimal logic: tree and dag
proof kernels, tree/dag compression, and a sequent-calculus decision oracle."""

from .dag import (DagDerivation, DagNode, DagPath, Edge, EdgeColoring, PathExplosion, check_dag_structure,
                  dag_proves_naive, dag_proves_regular, enumerate_dag_paths, verify_naive, verify_regular)
from .formula import Atom, Formula, Imp, imp, intern, parse_formula, render_formula, size
from .oracle import countermodel_search, decide_ljt, random_formula
from .rules import CheckReport, Mode, Rule, Violation
from .transform import (InvalidPlan, MergeGroup, MergePlan, UnfoldAmbiguity, compress, dag_isomorphic,
                        find_merge_plan, hashcons, trees_equal, unfold)
from .tree import (DeductivePath, TreeDerivation, TreeNode, check_tree, enumerate_tree_paths,
                   generate_random_proof, is_path_closed, tree_proves)

__version__ = "0.1.0"

__all__ = [
    "Atom", "Formula", "Imp", "imp", "intern", "parse_formula", "render_formula", "size",
    "CheckReport", "Mode", "Rule", "Violation",
    "DeductivePath", "TreeDerivation", "TreeNode", "check_tree", "enumerate_tree_paths",
    "generate_random_proof", "is_path_closed", "tree_proves",
    "DagDerivation", "DagNode", "DagPath", "Edge", "EdgeColoring", "PathExplosion", "check_dag_structure",
    "dag_proves_naive", "dag_proves_regular", "enumerate_dag_paths", "verify_naive", "verify_regular",
    "InvalidPlan", "MergeGroup", "MergePlan", "UnfoldAmbiguity", "compress", "dag_isomorphic",
    "find_merge_plan", "hashcons", "trees_equal", "unfold",
    "countermodel_search", "decide_ljt", "random_formula",
]
