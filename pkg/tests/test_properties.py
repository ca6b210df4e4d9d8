from fractions import Fraction as F

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from naive import naive_optimum
from onlinebound import (
    AcceptEdge, BinCovering, BinPacking, Direction, DualBinPacking, Edge, Interval, Item, Job, Makespan,
    OpenNewBin, Reject, SeatReservation, Matching, prefix_profile, problem_for, replay, run_online,
    solve_bounded, solve_unconstrained,
)
from onlinebound.formats import format_rational, parse_rational, sequence_from_json, sequence_to_json
from onlinebound.seatres import fits_somewhere

SETTINGS = settings(max_examples=150, deadline=None, suppress_health_check=[HealthCheck.too_slow])

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=1000)
eighths = st.integers(1, 8).map(lambda k: Item(F(k, 8)))
items = st.lists(eighths, max_size=7)


@st.composite
def intervals(draw, k):
    a = draw(st.integers(1, k - 1))
    return Interval(a, draw(st.integers(a + 1, k)))


@st.composite
def seat_cases(draw):
    k = draw(st.integers(3, 7))
    seats = draw(st.integers(1, 3))
    return SeatReservation(k, seats), draw(st.lists(intervals(k), max_size=6))


@st.composite
def edges(draw):
    u, v = draw(st.lists(st.integers(1, 6), min_size=2, max_size=2, unique=True))
    return Edge(u, v, draw(st.integers(-1, 4).map(lambda w: F(w, 2))))


@SETTINGS
@given(rationals)
def test_rational_round_trip(x):
    assert parse_rational(format_rational(x)) == x


@SETTINGS
@given(st.lists(st.fractions(min_value=F(1, 100), max_value=10, max_denominator=100).map(Job), max_size=8))
def test_sequence_round_trip(seq):
    assert sequence_from_json(sequence_to_json(seq)) == seq


@SETTINGS
@given(items, st.sampled_from(["dual-first-fit", "dual-best-fit", "dual-worst-fit", "unfair-first-fit"]))
def test_runs_are_deterministic_and_values_recomputable(seq, algorithm):
    inst = DualBinPacking(2)
    trace = run_online(inst, algorithm, seq)
    assert trace == run_online(inst, algorithm, seq)
    problem = problem_for(inst)
    for t in range(1, len(seq) + 1):
        state, _ = replay(inst, seq[:t], trace.decisions[:t])
        assert problem.value(state) == trace.values[t - 1]


@SETTINGS
@given(items, st.sampled_from(["dual-first-fit", "dual-best-fit", "dual-worst-fit"]))
def test_dual_policies_are_fair(seq, algorithm):
    inst = DualBinPacking(2)
    trace = run_online(inst, algorithm, seq)
    for t, (item, decision) in enumerate(zip(seq, trace.decisions)):
        if decision == Reject():
            state, _ = replay(inst, seq[:t], trace.decisions[:t])
            assert all(load + item.size > 1 for load in state.loads)


@SETTINGS
@given(items, st.sampled_from(["dual-first-fit", "dual-best-fit", "dual-worst-fit"]), st.data())
def test_dual_policies_are_rejection_invariant(seq, algorithm, data):
    inst = DualBinPacking(2)
    trace = run_online(inst, algorithm, seq)
    rejected = [i for i, d in enumerate(trace.decisions) if d == Reject()]
    dropped = set(data.draw(st.lists(st.sampled_from(rejected), unique=True)) if rejected else [])
    kept = [i for i in range(len(seq)) if i not in dropped]
    again = run_online(inst, algorithm, [seq[i] for i in kept])
    assert list(again.decisions) == [trace.decisions[i] for i in kept]


@SETTINGS
@given(items, st.sampled_from(["first-fit", "best-fit", "worst-fit"]))
def test_classic_policies_are_any_fit(seq, algorithm):
    trace = run_online(BinPacking(), algorithm, seq)
    for t, (item, decision) in enumerate(zip(seq, trace.decisions)):
        if decision == OpenNewBin():
            state, _ = replay(BinPacking(), seq[:t], trace.decisions[:t])
            assert all(load + item.size > 1 for load in state.loads)


@SETTINGS
@given(items)
def test_accommodating_sequences_have_full_bounded_optimum(seq):
    inst = DualBinPacking(2)
    if solve_unconstrained(inst, seq).value != len(seq):
        return
    for algorithm in ("dual-first-fit", "dual-best-fit", "dual-worst-fit"):
        profile = prefix_profile(run_online(inst, algorithm, seq), Direction.MAX)
        assert solve_bounded(inst, seq, profile).value == len(seq)


@SETTINGS
@given(seat_cases(), st.sampled_from(["seat-first-fit", "seat-best-fit"]))
def test_seat_policies_fair_and_within_two_over_k(case, algorithm):
    inst, seq = case
    trace = run_online(inst, algorithm, seq)
    for t, (request, decision) in enumerate(zip(seq, trace.decisions)):
        if decision == Reject():
            state, _ = replay(inst, seq[:t], trace.decisions[:t])
            assert not fits_somewhere(state, request)
    bounded = solve_bounded(inst, seq, prefix_profile(trace, Direction.MAX))
    assert trace.final_value >= F(2, inst.k) * bounded.value


@SETTINGS
@given(seat_cases(), st.sampled_from(["seat-first-fit", "seat-best-fit"]))
def test_oracle_matches_naive_for_seats(case, algorithm):
    inst, seq = case
    profile = prefix_profile(run_online(inst, algorithm, seq), Direction.MAX)
    assert solve_bounded(inst, seq, profile).value == naive_optimum(inst, seq, profile.values)
    assert solve_unconstrained(inst, seq).value == naive_optimum(inst, seq)


@SETTINGS
@given(st.lists(eighths, max_size=6), st.sampled_from(["first-fit", "best-fit", "worst-fit"]))
def test_oracle_matches_naive_for_bin_packing(seq, algorithm):
    profile = prefix_profile(run_online(BinPacking(), algorithm, seq), Direction.MIN)
    assert solve_bounded(BinPacking(), seq, profile).value == naive_optimum(BinPacking(), seq, profile.values)
    assert solve_unconstrained(BinPacking(), seq).value == naive_optimum(BinPacking(), seq)


@SETTINGS
@given(st.lists(st.integers(1, 8).map(lambda k: Item(F(k, 8))), max_size=6))
def test_oracle_matches_naive_for_covering(seq):
    profile = prefix_profile(run_online(BinCovering(), "covering-greedy", seq), Direction.MAX)
    assert solve_bounded(BinCovering(), seq, profile).value == naive_optimum(BinCovering(), seq, profile.values)
    assert solve_unconstrained(BinCovering(), seq).value == naive_optimum(BinCovering(), seq)


@SETTINGS
@given(st.lists(edges(), max_size=8))
def test_matching_witness_follows_greedy_acceptances(seq):
    trace = run_online(Matching(), "matching-greedy", seq)
    result = solve_bounded(Matching(), seq, prefix_profile(trace, Direction.MAX))
    assert result.value == trace.final_value
    for online, offline in zip(trace.decisions, result.witness.decisions):
        if online == AcceptEdge():
            assert offline == AcceptEdge()


@SETTINGS
@given(st.lists(st.integers(1, 8).map(lambda k: Job(F(k, 4))), max_size=6), st.integers(2, 3))
def test_ordering_of_optima(seq, m):
    inst = Makespan(m)
    trace = run_online(inst, "greedy-identical", seq)
    bounded = solve_bounded(inst, seq, prefix_profile(trace, Direction.MIN)).value
    assert solve_unconstrained(inst, seq).value <= bounded <= trace.final_value
