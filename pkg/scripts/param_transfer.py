"""Reuse angles optimized on one 2-pair instance as the starting point for other instances.

Compares, per target instance, the expected QUBO energy and optimizer wall time
of transfer+nm against grid+nm at the same depth.

    python scripts/param_transfer.py --source-seed 0 --targets 1 2 3 --pairs 2 --p 2
"""

import argparse
import time

from quest.bench import reference_bits
from quest.generate import generate_instance
from quest.qaoa import run_qaoa
from quest.qubo import build_qubo


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--source-seed", type=int, default=0)
    ap.add_argument("--targets", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--pairs", type=int, default=2)
    ap.add_argument("--p", type=int, default=2)
    args = ap.parse_args()

    source = run_qaoa(build_qubo(generate_instance(2, args.source_seed)), p=args.p, strategy="grid+nm")
    print(f"source angles: gammas={source.params.gammas} betas={source.params.betas}")
    print("seed strategy      runtime_s  expected_energy   most_probable_is_optimal")
    for seed in args.targets:
        Q = build_qubo(generate_instance(args.pairs, seed))
        ref = reference_bits(args.pairs, seed)
        for strategy in ("grid+nm", "transfer+nm"):
            start = time.perf_counter()
            res = run_qaoa(Q, p=args.p, strategy=strategy, seed=seed,
                           transfer_from=source.params if strategy == "transfer+nm" else None)
            elapsed = time.perf_counter() - start
            print(f"{seed:4d} {strategy:<12} {elapsed:9.3f}  {res.expected_energy:15.2f}   "
                  f"{res.most_probable == ref}")


if __name__ == "__main__":
    main()
