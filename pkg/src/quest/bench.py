"""Benchmark harness: one record per (size, method, seed) with runtime and bit-similarity."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

from .classical import SizeGuardError, brute_force_qubo, hungarian, simulated_annealing
from .decode import bit_similarity
from .generate import generate_instance
from .model import weight_matrix
from .qaoa import QubitGuardError, run_qaoa
from .qubo import build_qubo
from .qubo import objective as qubo_objective

METHODS = ("hungarian", "brute", "anneal", "qaoa")
CSV_HEADER = ["pairs", "method", "seed", "runtime_s", "objective", "bit_sim"]


@dataclass(frozen=True)
class BenchRecord:
    pairs: int
    method: str
    seed: int
    runtime_s: float | None
    objective: float | None
    bit_sim: float | None
    bitstring: str | None = None
    skipped: str | None = None

    def __post_init__(self):
        if self.runtime_s is not None and self.runtime_s < 0:
            raise ValueError("runtime must be >= 0")
        if self.bit_sim is not None and not 0.0 <= self.bit_sim <= 1.0:
            raise ValueError("bit similarity must be in [0, 1]")


@dataclass(frozen=True)
class QaoaBenchOptions:
    p: int = 1
    strategy: str = "grid"
    shots: int = 10000
    grid_points: int = 21


def reference_bits(pairs: int, seed: int) -> str:
    """Exact optimum bitstring: QUBO brute force up to 3 pairs, Hungarian beyond."""
    inst = generate_instance(pairs, seed)
    if pairs <= 3:
        return brute_force_qubo(build_qubo(inst)).bits()
    return hungarian(weight_matrix(inst)).to_bits(pairs)


def run_cell(pairs: int, method: str, seed: int, qaoa: QaoaBenchOptions = QaoaBenchOptions()) -> BenchRecord:
    inst = generate_instance(pairs, seed)
    Q = build_qubo(inst)
    try:
        start = time.perf_counter()
        if method == "hungarian":
            m = hungarian(weight_matrix(inst))
            bits, objective = m.to_bits(pairs), m.total_cost
        elif method == "brute":
            r = brute_force_qubo(Q)
            bits, objective = r.bits(), r.objective
        elif method == "anneal":
            r = simulated_annealing(Q, seed=seed)
            bits, objective = r.bits(), r.objective
        elif method == "qaoa":
            res = run_qaoa(Q, p=qaoa.p, strategy=qaoa.strategy, shots=qaoa.shots, seed=seed,
                           grid_points=qaoa.grid_points)
            bits = res.best_bitstring
            objective = qubo_objective(Q, [int(c) for c in bits])
        else:
            raise ValueError(f"unknown method {method!r}")
        runtime = time.perf_counter() - start
    except (SizeGuardError, QubitGuardError) as exc:
        return BenchRecord(pairs, method, seed, None, None, None, skipped=str(exc))
    return BenchRecord(pairs, method, seed, runtime, objective,
                       bit_similarity(bits, reference_bits(pairs, seed)), bits)


def run_bench(sizes, methods, seeds, qaoa: QaoaBenchOptions = QaoaBenchOptions(),
              jobs: int = 1) -> list[BenchRecord]:
    if not methods:
        raise ValueError("need at least one method")
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"unknown methods {unknown}; choose from {METHODS}")
    cells = [(n, m, s) for n in sizes for m in methods for s in seeds]
    if jobs <= 1:
        return [run_cell(n, m, s, qaoa) for n, m, s in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(run_cell, n, m, s, qaoa) for n, m, s in cells]
        return [f.result() for f in futures]


def _fmt(v) -> str:
    return "" if v is None else repr(v) if isinstance(v, float) else str(v)


def records_to_csv(records: list[BenchRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow([_fmt(getattr(r, col)) for col in CSV_HEADER])
    return buf.getvalue()


def records_to_json(records: list[BenchRecord]) -> str:
    return json.dumps([asdict(r) for r in records], indent=2) + "\n"
