"""Cross-check the sequent prover against bounded Kripke countermodel search.

    python scripts/oracle_agreement.py --samples 2000 --max-size 11
"""

from __future__ import annotations

import argparse
import sys
import time
from collections import Counter
from dataclasses import dataclass

from impnd.formula import render_formula
from impnd.oracle import countermodel_search, decide_ljt, random_formula


@dataclass
class OracleConfig:
    samples: int = 1000
    max_size: int = 9
    atoms: str = "abc"
    max_worlds: int = 6
    seed: int = 0


def main(argv=None) -> int:
    d = OracleConfig()
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--samples", type=int, default=d.samples)
    p.add_argument("--max-size", type=int, default=d.max_size)
    p.add_argument("--atoms", default=d.atoms)
    p.add_argument("--max-worlds", type=int, default=d.max_worlds)
    p.add_argument("--seed", type=int, default=d.seed)
    a = p.parse_args(argv)
    cfg = OracleConfig(a.samples, a.max_size, a.atoms, a.max_worlds, a.seed)

    start = time.perf_counter()
    sizes: Counter[int] = Counter()
    contradictions, inconclusive = [], []
    theorems = 0
    for i in range(cfg.samples):
        f = random_formula(cfg.seed + i, cfg.max_size, cfg.atoms)
        proved = decide_ljt(f)
        model = countermodel_search(f, cfg.max_worlds)
        if proved:
            theorems += 1
            if model is not None:
                contradictions.append(render_formula(f))
        elif model is None:
            inconclusive.append(render_formula(f))
        else:
            sizes[len(model)] += 1
    elapsed = time.perf_counter() - start

    print(f"{cfg.samples} formulas (size <= {cfg.max_size}, atoms {cfg.atoms}) in {elapsed:.2f} s")
    print(f"theorems: {theorems}; refuted: {sum(sizes.values())}; "
          f"inconclusive within {cfg.max_worlds} worlds: {len(inconclusive)}")
    print("countermodel sizes: " + ", ".join(f"{w} worlds x{n}" for w, n in sorted(sizes.items())))
    for f in contradictions:
        print("CONTRADICTION", f)
    for f in inconclusive[:10]:
        print("inconclusive", f)
    return 1 if contradictions else 0


if __name__ == "__main__":
    sys.exit(main())
