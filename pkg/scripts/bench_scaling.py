"""Solver scaling sweep: writes PREFIX.csv and PREFIX.json and prints a per-method summary.

    python scripts/bench_scaling.py --sizes 2 3 4 5 6 --seeds 0 1 2 --out results/scaling
"""

import argparse
from collections import defaultdict
from pathlib import Path

import numpy as np

from quest.bench import METHODS, QaoaBenchOptions, records_to_csv, records_to_json, run_bench


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--methods", nargs="+", default=list(METHODS))
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--p", type=int, default=1)
    ap.add_argument("--strategy", default="grid")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", default="results/scaling")
    args = ap.parse_args()

    records = run_bench(args.sizes, args.methods, args.seeds,
                        QaoaBenchOptions(p=args.p, strategy=args.strategy), jobs=args.jobs)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    Path(f"{out}.csv").write_text(records_to_csv(records))
    Path(f"{out}.json").write_text(records_to_json(records))

    cells = defaultdict(list)
    for r in records:
        cells[(r.method, r.pairs)].append(r)
    print(f"{'method':<10} {'pairs':>5} {'median_runtime_s':>17} {'mean_bit_sim':>13}")
    for (method, pairs), rs in sorted(cells.items()):
        done = [r for r in rs if not r.skipped]
        if not done:
            print(f"{method:<10} {pairs:>5} {'skipped':>17}")
            continue
        rt = np.median([r.runtime_s for r in done])
        bs = np.mean([r.bit_sim for r in done])
        print(f"{method:<10} {pairs:>5} {rt:>17.5f} {bs:>13.3f}")
    print(f"wrote {out}.csv and {out}.json")


if __name__ == "__main__":
    main()
