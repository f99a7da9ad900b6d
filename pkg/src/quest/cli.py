"""``quest`` command line: generate, solve, qubo export, decode, bench.

Exit codes: 0 success, 1 error, 2 infeasible result.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bench as bench_mod
from .classical import (SizeGuardError, brute_force_multi, brute_force_qubo, hungarian,
                        simulated_annealing)
from .decode import decode, matching_cost
from .generate import GeneratorConfig, generate_instance
from .io import InstanceFormatError, dumps_instance, load_instance
from .model import weight_matrix
from .qaoa import STRATEGIES, QaoaParams, QubitGuardError, run_qaoa
from .qubo import build_qubo, export_qubo
from .qubo import objective as qubo_objective

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # exit code 2 is reserved for infeasible results
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _matching_json(m) -> list[list[int]]:
    return [[s, b] for s, b in sorted(m.pairs.items())]


def cmd_generate(args) -> int:
    if args.pairs < 1:
        raise UsageError("--pairs must be >= 1")
    inst = generate_instance(args.pairs, args.seed, GeneratorConfig(segments=args.segments))
    _emit(dumps_instance(inst), args.out)
    return EXIT_OK


def _load_transfer(path: str | None) -> QaoaParams | None:
    if not path:
        return None
    data = json.loads(Path(path).read_text())
    params = data.get("params", data)
    return QaoaParams(params["gammas"], params["betas"])


def solve_report(inst, method: str, *, p: int = 4, shots: int = 10000, seed: int = 0,
                 strategy: str = "grid+nm", transfer_from: QaoaParams | None = None) -> dict:
    """Run one solver and build the JSON-ready report (``feasible`` drives the exit code)."""
    report: dict = {"method": method, "pairs": inst.n, "segments": inst.K}
    start = time.perf_counter()

    if inst.K > 1:
        if method != "brute":
            raise UsageError("multi-segment instances support only --method brute")
        found = brute_force_multi(inst)
        report["runtime_s"] = time.perf_counter() - start
        if found is None:
            report.update(feasible=False, assignment=None, objective=None)
        else:
            a, cost = found
            report.update(feasible=True, objective=cost,
                          assignment=[[[s, b] for s, b in sorted(m.items())] for m in a.maps()])
        return report

    Q = build_qubo(inst)
    if method == "hungarian":
        m = hungarian(weight_matrix(inst))
        report["runtime_s"] = time.perf_counter() - start
        bits = m.to_bits(inst.n)
    elif method in ("brute", "anneal"):
        r = brute_force_qubo(Q) if method == "brute" else simulated_annealing(Q, seed=seed)
        report["runtime_s"] = time.perf_counter() - start
        bits = r.bits()
        report["energy"] = r.energy
    elif method == "qaoa":
        res = run_qaoa(Q, p=p, strategy=strategy, shots=shots, seed=seed, transfer_from=transfer_from)
        report["runtime_s"] = time.perf_counter() - start
        bits = res.best_bitstring
        report.update(res.to_dict())
    else:
        raise UsageError(f"unknown method {method!r}")

    report["bitstring"] = bits
    outcome = decode(bits)
    if outcome.valid:
        report.update(feasible=True, matching=_matching_json(outcome.matching),
                      objective=matching_cost(outcome.matching, inst))
    else:
        report.update(feasible=False, matching=None, violation=outcome.invalid,
                      objective=qubo_objective(Q, [int(c) for c in bits]))
    return report


def cmd_solve(args) -> int:
    inst = load_instance(args.input)
    report = solve_report(inst, args.method, p=args.p, shots=args.shots, seed=args.seed,
                          strategy=args.strategy, transfer_from=_load_transfer(args.params_from))
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK if report["feasible"] else EXIT_INFEASIBLE


def cmd_qubo_export(args) -> int:
    Q = build_qubo(load_instance(args.input))
    _emit(export_qubo(Q) + "\n", args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    outcome = decode(args.bits)
    if outcome.valid:
        print(json.dumps({"valid": True, "matching": _matching_json(outcome.matching)}))
        return EXIT_OK
    print(json.dumps({"valid": False, "violation": outcome.invalid}))
    return EXIT_INFEASIBLE


def parse_sizes(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def parse_list(text: str) -> list[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


def cmd_bench(args) -> int:
    methods = parse_list(args.methods)
    if not methods:
        raise UsageError("--methods must name at least one method")
    seeds = [int(s) for s in parse_list(args.seeds)]
    try:
        sizes = parse_sizes(args.sizes)
    except ValueError:
        raise UsageError(f"bad --sizes {args.sizes!r}; use A..B or a comma list") from None
    try:
        records = bench_mod.run_bench(
            sizes, methods, seeds,
            bench_mod.QaoaBenchOptions(p=args.p, strategy=args.strategy, shots=args.shots),
            jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    Path(f"{args.out}.csv").write_text(bench_mod.records_to_csv(records))
    Path(f"{args.out}.json").write_text(bench_mod.records_to_json(records))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quest", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a random instance as JSON")
    g.add_argument("--pairs", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--segments", type=int, default=1)
    g.add_argument("--out")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance and print a JSON report")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--method", required=True, choices=bench_mod.METHODS)
    s.add_argument("--p", type=int, default=4)
    s.add_argument("--shots", type=int, default=10000)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--strategy", choices=STRATEGIES, default="grid+nm")
    s.add_argument("--params-from", help="previous solve report whose params seed transfer+nm")
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve)

    q = sub.add_parser("qubo", help="QUBO utilities")
    qsub = q.add_subparsers(dest="qubo_command", required=True, parser_class=_Parser)
    qe = qsub.add_parser("export", help="write the instance QUBO in .qubo text format")
    qe.add_argument("--in", dest="input", required=True)
    qe.add_argument("--out")
    qe.set_defaults(func=cmd_qubo_export)

    d = sub.add_parser("decode", help="decode a row-major assignment bitstring")
    d.add_argument("--bits", required=True)
    d.set_defaults(func=cmd_decode)

    b = sub.add_parser("bench", help="benchmark solvers; writes PREFIX.csv and PREFIX.json")
    b.add_argument("--sizes", required=True, help="A..B or comma list of pair counts")
    b.add_argument("--methods", required=True, help="comma list of " + ",".join(bench_mod.METHODS))
    b.add_argument("--seeds", default="0")
    b.add_argument("--out", required=True)
    b.add_argument("--p", type=int, default=1)
    b.add_argument("--strategy", choices=STRATEGIES, default="grid")
    b.add_argument("--shots", type=int, default=10000)
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"quest: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (InstanceFormatError, SizeGuardError, QubitGuardError, ValueError, OSError) as exc:
        print(f"quest: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
