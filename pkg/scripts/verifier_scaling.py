"""Edge visits of the reachability verifiers against the number of paths.

A ladder of n two-premise repetitions has 2**n leaf-to-root paths, yet the
regular verifier touches each edge at most once per (color, leaf) pair.

    python scripts/verifier_scaling.py --max-rungs 60
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from impnd.dag import DagDerivation, DagNode, Edge, EdgeColoring, count_dag_paths, verify_naive, verify_regular
from impnd.formula import Atom, Imp
from impnd.rules import Rule


@dataclass
class ScalingConfig:
    max_rungs: int = 40
    step: int = 10


def ladder(n: int) -> DagDerivation:
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


def main(argv=None) -> None:
    d = ScalingConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-rungs", type=int, default=d.max_rungs)
    p.add_argument("--step", type=int, default=d.step)
    a = p.parse_args(argv)
    cfg = ScalingConfig(a.max_rungs, a.step)

    print(f"{'rungs':>5} {'edges':>6} {'paths':>22} {'naive visits':>13} {'regular visits':>15} {'ms':>7}")
    for n in range(cfg.step, cfg.max_rungs + 1, cfg.step):
        dag = ladder(n)
        t0 = time.perf_counter()
        naive, regular = verify_naive(dag), verify_regular(dag)
        ms = (time.perf_counter() - t0) * 1000
        assert naive.proves and regular.proves
        print(f"{n:>5} {len(dag.edges()):>6} {count_dag_paths(dag):>22} "
              f"{naive.edge_visits:>13} {regular.edge_visits:>15} {ms:>7.2f}")


if __name__ == "__main__":
    main()
