"""Windbreaker/windsurfer matching: QUBO encoding, classical solvers and QAOA simulation."""

from .classical import (AnnealSchedule, Matching, SolveResult, brute_force_assignment,
                        brute_force_multi, brute_force_qubo, hungarian, simulated_annealing)
from .decode import DecodeOutcome, bit_similarity, decode, matching_cost
from .generate import GeneratorConfig, generate_instance
from .ising import IsingHamiltonian, ising_energy, normalize, qubo_to_ising
from .model import (Breaker, Instance, MultiAssignment, Segment, Surfer, efficiency, feasible,
                    multi_objective, pair_weight, weight_matrix)
from .qaoa import QaoaParams, QaoaResult, run_qaoa
from .qubo import QuboMatrix, build_qubo, energy, export_qubo, import_qubo

__version__ = "0.1.0"
