import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from conftest import make_breaker, make_surfer, square_instances
from oracles import best_permutation_ref
from quest.classical import (AnnealSchedule, Matching, SizeGuardError, Solver, brute_force_assignment,
                             brute_force_multi, brute_force_qubo, hungarian, int_to_bits,
                             permutation_cost, simulated_annealing)
from quest.decode import decode
from quest.generate import generate_instance
from quest.model import Instance, Segment, multi_objective, segment_weight, weight_matrix
from quest.qubo import QuboMatrix, build_qubo, energy


def test_hungarian_two_by_two():
    m = hungarian([[1, 2], [2, 1]])
    assert m.pairs == {0: 0, 1: 1}
    assert m.total_cost == 2


def test_hungarian_single():
    m = hungarian([[5]])
    assert m.pairs == {0: 0} and m.total_cost == 5


def test_hungarian_four_by_four_matches_brute():
    inst = generate_instance(4, seed=3)
    C = weight_matrix(inst)
    assert hungarian(C).pairs == brute_force_assignment(C).pairs


def test_hungarian_prefers_lexicographic_on_ties():
    C = np.ones((3, 3))
    assert hungarian(C).as_permutation() == (0, 1, 2)
    C = np.array([[1, 1, 9], [1, 1, 9], [9, 9, 1]])
    assert hungarian(C).as_permutation() == (0, 1, 2)
    C = np.array([[2, 1], [1, 2]])
    assert hungarian(C).as_permutation() == (1, 0)


@given(arrays(float, st.tuples(st.integers(1, 6), st.just(0)).map(lambda t: (t[0], t[0])),
              elements=st.integers(0, 5).map(float)))
@settings(max_examples=200)
def test_hungarian_ties_agree_with_brute(C):
    # small integer costs produce many exact ties
    h, b = hungarian(C), brute_force_assignment(C)
    assert h.total_cost == b.total_cost
    assert h.pairs == b.pairs


@given(arrays(float, st.integers(1, 7).map(lambda n: (n, n)), elements=st.floats(-1e4, 1e4)))
@settings(max_examples=150)
def test_hungarian_cost_optimal(C):
    ref_cost, ref_perm = best_permutation_ref(C.tolist())
    m = hungarian(C)
    assert m.total_cost == pytest.approx(ref_cost, rel=1e-9, abs=1e-6)


def test_brute_assignment_cases():
    assert brute_force_assignment([[7]]).pairs == {0: 0}
    C = np.full((4, 4), 10.0)
    np.fill_diagonal(C, 1.0)
    assert brute_force_assignment(C).as_permutation() == (0, 1, 2, 3)


def test_brute_assignment_random_five():
    rng = np.random.default_rng(0)
    C = rng.uniform(0, 100, (5, 5))
    assert brute_force_assignment(C).total_cost == hungarian(C).total_cost


def test_brute_assignment_guard():
    with pytest.raises(SizeGuardError):
        brute_force_assignment(np.zeros((11, 11)))


def test_cost_validation():
    with pytest.raises(ValueError):
        hungarian(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        hungarian([[np.nan]])


def test_matching_rejects_repeated_breaker():
    with pytest.raises(ValueError):
        Matching({0: 1, 1: 1})


def test_matching_bits():
    assert Matching({0: 0, 1: 2, 2: 1}).to_bits() == "100001010"


def test_brute_qubo_negative_diagonal():
    r = brute_force_qubo(QuboMatrix(np.diag([-1.0, -1.0])))
    assert r.x.tolist() == [1, 1] and r.energy == -2


def test_brute_qubo_positive_diagonal():
    r = brute_force_qubo(QuboMatrix(np.diag([1.0, 1.0])))
    assert r.x.tolist() == [0, 0] and r.energy == 0


def test_brute_qubo_tie_goes_to_greatest_bitstring():
    r = brute_force_qubo(QuboMatrix(np.zeros((3, 3))))
    assert r.bits() == "111"
    Q = np.diag([0.0, -1.0, -1.0]) + np.array([[0, 0, 0], [0, 0, 5], [0, 5, 0]])
    assert brute_force_qubo(QuboMatrix(Q)).bits() == "110"


def test_brute_qubo_tie_matches_hungarian_on_assignments():
    # every permutation costs the same, so the lexicographically first one must win
    C = np.add.outer([1.0, 2.0, 3.0], [10.0, 20.0, 30.0])
    Q = np.zeros((9, 9))
    Q[np.diag_indices(9)] = C.ravel() - 2 * 1000.0
    s, b = np.divmod(np.arange(9), 3)
    shares = (s[:, None] == s[None, :]) | (b[:, None] == b[None, :])
    Q[shares & ~np.eye(9, dtype=bool)] = 1000.0
    bits = brute_force_qubo(QuboMatrix(Q, 6000.0)).bits()
    assert decode(bits).matching.as_permutation() == (0, 1, 2) == hungarian(C).as_permutation()


def test_brute_qubo_chunking_is_transparent():
    rng = np.random.default_rng(4)
    A = rng.normal(size=(9, 9))
    Q = QuboMatrix(A + A.T)
    assert brute_force_qubo(Q, chunk=7).bits() == brute_force_qubo(Q).bits()


def test_brute_qubo_guard():
    with pytest.raises(SizeGuardError):
        brute_force_qubo(QuboMatrix(np.zeros((21, 21))))


@pytest.mark.parametrize("seed", range(5))
def test_brute_qubo_two_pair_decodes_to_hungarian(seed):
    inst = generate_instance(2, seed=seed)
    r = brute_force_qubo(build_qubo(inst))
    assert decode(r.bits()).matching.pairs == hungarian(weight_matrix(inst)).pairs


def test_solve_result_offset_invariant():
    Q = build_qubo(generate_instance(2, seed=0))
    for r in (brute_force_qubo(Q), simulated_annealing(Q, seed=1)):
        assert r.objective - r.energy == pytest.approx(Q.offset, abs=1e-9 * Q.offset)


def test_int_to_bits_msb_first():
    assert int_to_bits(1, 3).tolist() == [0, 0, 1]
    assert int_to_bits(6, 3).tolist() == [1, 1, 0]


def test_anneal_single_variable():
    r = simulated_annealing(QuboMatrix(np.array([[-1.0]])), AnnealSchedule(1.0, 0.01, 50), seed=3)
    assert r.x.tolist() == [1]
    assert r.solver is Solver.ANNEAL


@pytest.mark.parametrize("n, seed", [(2, 0), (2, 7), (3, 0), (3, 4)])
def test_anneal_matches_brute_in_most_seeds(n, seed):
    Q = build_qubo(generate_instance(n, seed=seed))
    target = brute_force_qubo(Q).bits()
    hits = sum(simulated_annealing(Q, seed=s).bits() == target for s in range(10))
    assert hits >= 9


def test_anneal_deterministic():
    Q = build_qubo(generate_instance(3, seed=2))
    a, b = simulated_annealing(Q, seed=11), simulated_annealing(Q, seed=11)
    assert a.bits() == b.bits() and a.energy == b.energy and a.objective == b.objective


@given(arrays(float, (6, 6), elements=st.floats(-10, 10)), st.integers(0, 1000))
@settings(max_examples=30, deadline=None)
def test_anneal_never_below_optimum(A, seed):
    Q = QuboMatrix(A)
    r = simulated_annealing(Q, AnnealSchedule(10.0, 0.01, 30), seed=seed)
    assert r.energy >= brute_force_qubo(Q).energy - 1e-9
    assert r.energy == pytest.approx(energy(Q, r.x))


def test_anneal_schedule_validation():
    with pytest.raises(ValueError):
        AnnealSchedule(1.0, 2.0, 10)
    with pytest.raises(ValueError):
        AnnealSchedule(1.0, 0.0, 10)
    with pytest.raises(ValueError):
        AnnealSchedule(1.0, 0.1, 0)
    temps = AnnealSchedule(8.0, 1.0, 4).temperatures()
    assert temps[0] == 8.0 and temps[-1] == pytest.approx(1.0)
    assert np.all(np.diff(temps) < 0)


@given(square_instances(1, 3))
@settings(max_examples=20, deadline=None)
def test_multi_single_segment_agrees_with_hungarian(inst):
    found = brute_force_multi(inst)
    assert found is not None
    a, cost = found
    assert cost == pytest.approx(multi_objective(inst, a))
    n = inst.n
    seg_w = np.array([[segment_weight(inst.surfers[s], inst.breakers[b], 0) for b in range(n)]
                      for s in range(n)])
    assert cost == pytest.approx(hungarian(seg_w).total_cost, rel=1e-12)


def _forced_instance():
    # surfer 0 can only meet breaker 1 in time and surfer 1 only breaker 0
    ss = (make_surfer(0, dist=(100.0,)), make_surfer(1, dist=(0.0,)))
    bs = (make_breaker(0, dist=(0.0,)), make_breaker(1, dist=(100.0,)))
    return Instance(ss, bs, (Segment(0, 1.0),), delta_window=10)


def test_multi_forced_assignment():
    a, _ = brute_force_multi(_forced_instance())
    assert a.maps() == [{0: 1, 1: 0}]


def test_multi_all_infeasible():
    ss = (make_surfer(0, dist=(500.0,)),)
    bs = (make_breaker(0, dist=(0.0,)),)
    assert brute_force_multi(Instance(ss, bs, delta_window=10)) is None


def test_multi_two_segments_prefers_keeping_breaker():
    ss = (make_surfer(0, vclass=2, dist=(0.0, 0.0), length=(1.0, 1.0)),)
    bs = (make_breaker(0, vclass=4, dist=(0.0, 0.0)), make_breaker(1, vclass=4, dist=(0.0, 300.0)))
    inst = Instance(ss, bs, (Segment(0, 1.0), Segment(1, 1.0)), delta_window=1000)
    a, cost = brute_force_multi(inst)
    assert a.maps() == [{0: 0}, {0: 0}]
    assert cost == pytest.approx(multi_objective(inst, a))


def test_multi_guard():
    inst = generate_instance(10, seed=0)
    with pytest.raises(SizeGuardError):
        brute_force_multi(inst)


def test_permutation_cost():
    assert permutation_cost(np.array([[1.0, 2.0], [3.0, 4.0]]), (1, 0)) == 5.0
