"""Write level-k fusion tables to JSON and check each against the Verlinde formula.

    python3 scripts/fusion_tables.py --out results/fusion --types A1:1-6 A2:1-4 G2:1-2
"""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from fhtkit.rootsystem import build_root_system
from fhtkit.verlinde import fusion_table, level_weights, verlinde_table


def parse_range(text: str) -> tuple[str, list[int]]:
    name, _, ks = text.partition(":")
    lo, _, hi = ks.partition("-")
    return name, list(range(int(lo), int(hi or lo) + 1))


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("results/fusion"))
    ap.add_argument("--types", nargs="+", default=["A1:1-6", "A2:1-4", "G2:1-2"], help="TYPE:KMIN-KMAX")
    args = ap.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    failures = 0
    for item in args.types:
        name, ks = parse_range(item)
        rs = build_root_system(name)
        for k in ks:
            t0 = time.perf_counter()
            table = fusion_table(rs, k)
            oracle, dev = verlinde_table(rs, k)
            agree = all(table[key] == oracle[key] for key in table)
            failures += not agree
            doc = {
                "lie_type": name,
                "k": k,
                "weights": [list(w) for w in level_weights(rs, k)],
                "table": [[list(a), list(b), table[a, b].to_json()["coeffs"]] for a, b in sorted(table)],
            }
            (args.out / f"{name}_k{k}.json").write_text(json.dumps(doc, sort_keys=True, indent=1) + "\n")
            print(f"{name} k={k}: {len(doc['weights'])} weights, oracle {'agrees' if agree else 'DISAGREES'}, "
                  f"deviation {dev:.1e}, {time.perf_counter() - t0:.2f}s")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
