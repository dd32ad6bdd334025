"""Generate closed proofs, compress them, and re-verify everything.

    python scripts/soundness_run.py --proofs 1000 --max-depth 8 --atoms 4

Prints one summary line per mode plus totals; exits non-zero on any failure.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from dataclasses import asdict, dataclass, field

from impnd.dag import check_dag_structure, dag_proves_naive, dag_proves_regular
from impnd.oracle import decide_ljt
from impnd.rules import Mode
from impnd.transform import compress, find_merge_plan, trees_equal, unfold
from impnd.tree import elide_unary_repetitions, generate_random_proof, tree_proves


@dataclass
class SoundnessConfig:
    proofs: int = 500
    max_depth: int = 8
    atoms: int = 4
    seed: int = 0
    modes: tuple[str, ...] = ("nm", "nm+")


@dataclass
class ModeReport:
    mode: str
    proofs: int = 0
    failures: list[str] = field(default_factory=list)
    merged: int = 0
    naive_rejects: int = 0
    tree_nodes: list[int] = field(default_factory=list)
    dag_nodes: list[int] = field(default_factory=list)
    colors: list[int] = field(default_factory=list)

    def summary(self) -> dict:
        saved = [t - d for t, d in zip(self.tree_nodes, self.dag_nodes)]
        return {
            "mode": self.mode,
            "proofs": self.proofs,
            "failures": len(self.failures),
            "with_merges": self.merged,
            "naive_rejects": self.naive_rejects,
            "mean_tree_nodes": round(statistics.mean(self.tree_nodes), 2),
            "mean_dag_nodes": round(statistics.mean(self.dag_nodes), 2),
            "max_nodes_saved": max(saved),
            "max_colors": max(self.colors),
        }


def run_one(cfg: SoundnessConfig, mode: Mode) -> ModeReport:
    rep = ModeReport(mode.value)
    letters = "abcdefghijklmnop"[: cfg.atoms]
    for i in range(cfg.proofs):
        seed = cfg.seed + i
        depth = 1 + seed % cfg.max_depth
        t = generate_random_proof(seed, depth, letters[: 1 + seed % cfg.atoms], mode)
        rep.proofs += 1
        tag = f"seed={seed} depth={depth}"
        if not tree_proves(t) or not decide_ljt(t.root_formula):
            rep.failures.append(f"{tag}: generated tree")
            continue
        plan = find_merge_plan(t)
        dag = compress(t, plan)
        if not check_dag_structure(dag).ok or not dag_proves_regular(dag):
            rep.failures.append(f"{tag}: compressed dag")
            continue
        if not trees_equal(unfold(dag), elide_unary_repetitions(t), up_to_labels=False):
            rep.failures.append(f"{tag}: roundtrip")
        rep.merged += bool(plan.groups)
        rep.naive_rejects += not dag_proves_naive(dag)
        rep.tree_nodes.append(len(t))
        rep.dag_nodes.append(len(dag.nodes))
        rep.colors.append(dag.coloring.k)
    return rep


def main(argv=None) -> int:
    defaults = SoundnessConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--proofs", type=int, default=defaults.proofs)
    p.add_argument("--max-depth", type=int, default=defaults.max_depth)
    p.add_argument("--atoms", type=int, default=defaults.atoms)
    p.add_argument("--seed", type=int, default=defaults.seed)
    p.add_argument("--json", action="store_true")
    args = p.parse_args(argv)
    cfg = SoundnessConfig(args.proofs, args.max_depth, args.atoms, args.seed)

    start = time.perf_counter()
    reports = [run_one(cfg, Mode(m)) for m in cfg.modes]
    elapsed = time.perf_counter() - start
    failures = [f for r in reports for f in r.failures]

    if args.json:
        print(json.dumps({"config": asdict(cfg), "modes": [r.summary() for r in reports],
                          "seconds": round(elapsed, 3), "failures": failures}, indent=2))
    else:
        for r in reports:
            s = r.summary()
            print(f"{s['mode']:>4}: {s['proofs']} proofs, {s['failures']} failures, "
                  f"{s['with_merges']} merged, naive rejects {s['naive_rejects']}, "
                  f"nodes {s['mean_tree_nodes']} -> {s['mean_dag_nodes']} (best saving {s['max_nodes_saved']})")
        for f in failures[:20]:
            print("FAIL", f)
        print(f"total {sum(r.proofs for r in reports)} proofs in {elapsed:.2f} s")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
