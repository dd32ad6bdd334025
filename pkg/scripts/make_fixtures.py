"""Regenerate the golden documents in fixtures/ from the hand encodings."""

from pathlib import Path

from impnd import document
from impnd.fixtures import basic_dag, basic_tree, identity_tree

OUT = Path(__file__).resolve().parent.parent / "fixtures"

if __name__ == "__main__":
    OUT.mkdir(exist_ok=True)
    for name, obj in [("basic_tree", basic_tree()), ("basic_dag", basic_dag()), ("identity", identity_tree())]:
        document.save(obj, OUT / f"{name}.json")
        print(f"wrote {OUT / name}.json")
