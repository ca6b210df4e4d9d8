"""Acceptance criteria, one test per criterion; exact rational comparisons throughout."""

from fractions import Fraction

import pytest

from naive import naive_optimum
from onlinebound import (
    Direction, Reject, check_witness, direction_of, prefix_profile, replay, run_online,
    solve_bounded, solve_unconstrained,
)
from onlinebound.adversary import (
    gen_covering_lb, gen_fast_lb, gen_greedy_fastties_counter, gen_makespan_adaptive_lb,
    gen_santa_related_adaptive, gen_seatres_lb, gen_threshold_counter, gen_uff_lb, play,
)
from onlinebound.harness import ExperimentSpec, fit_asymptotic, run_experiment
from onlinebound.packing import accommodating_subsequence, is_accommodating
from onlinebound.seatres import fits_somewhere
from onlinebound.verify import CORPORA, check_corpus, generate

F = Fraction


def corpus_ok(name, minimum):
    report = check_corpus(name)
    assert report.checked >= minimum
    assert report.unresolved == 0
    assert not report.failures, [(ev.case, ev.a, ev.opt_a) for ev in report.failures[:3]]


@pytest.mark.criterion(1, "makespan Greedy lower bound 2 - 1/(m-1), oracle-confirmed for m in {3,4}")
def test_makespan_greedy_lower_bound():
    report = run_experiment(ExperimentSpec("makespan-greedy-lb", sweep=[{"m": m} for m in (3, 4, 5, 6)]))
    assert [r.ratio for r in report.rows] == [F(3, 2), F(5, 3), F(7, 4), F(9, 5)]
    assert [r.ratio for r in report.rows] == [2 - F(1, m - 1) for m in (3, 4, 5, 6)]
    for row in report.rows[:2]:
        assert row.opt_source.startswith("oracle")
    assert report.exit_code == 0


@pytest.mark.criterion(2, "Greedy <= (2 - 1/(m-1)) OPT_A on 1000 random identical-machine instances")
def test_makespan_greedy_upper_bound():
    corpus_ok("greedy-identical", 1000)


@pytest.mark.criterion(3, "Greedy = OPT_Greedy on 1000 random two-related-machine instances")
def test_two_related_ratio_one():
    corpus_ok("greedy-related", 1000)


@pytest.mark.criterion(4, "fast-tie Greedy: makespan 5/2 against OPT_A 2 at s = 2")
def test_fastties_above_one():
    out = play(gen_greedy_fastties_counter(2))
    assert out.trace.final_value == F(5, 2)
    bounded = solve_bounded(out.generated.instance, out.sequence, out.profile)
    assert bounded.complete and bounded.value == 2
    assert out.witness.final_value == 2


@pytest.mark.criterion(5, "Fast ratio (s+1)/s on <s^2, s> and the bound on 500 random instances")
def test_fast():
    for s in (F(3, 2), F(2), F(5, 2)):
        out = play(gen_fast_lb(s))
        bounded = solve_bounded(out.generated.instance, out.sequence, out.profile)
        assert bounded.complete
        assert out.trace.final_value / bounded.value == (s + 1) / s
    corpus_ok("fast", 500)


@pytest.mark.criterion(6, "adaptive construction forces A >= 4 against a verified witness of 3")
def test_adaptive_four_thirds():
    for m in (3, 4):
        for algorithm in ("greedy-identical", "threshold-4-3", "fast"):
            out = play(gen_makespan_adaptive_lb(m, algorithm))
            assert out.trace.final_value >= 4, (m, algorithm)
            assert check_witness(out.generated.instance, out.sequence, out.profile, out.witness) == 3
            assert out.trace.final_value / out.witness.final_value >= F(4, 3)


@pytest.mark.criterion(7, "threshold-4-3 reaches 17/12 on the six-job sequence, optimum 1")
def test_threshold_counterexample():
    out = play(gen_threshold_counter())
    assert out.trace.final_value == F(17, 12)
    assert solve_unconstrained(out.generated.instance, out.sequence).value == 1


@pytest.mark.criterion(8, "Santa greedy = OPT_A on 1000 random identical-machine instances")
def test_santa_identical_ratio_one():
    corpus_ok("santa-identical", 1000)


@pytest.mark.criterion(9, "Santa related: adaptive ratio <= 1/s and G >= OPT_G / s on 500 instances")
def test_santa_related():
    for s in (F(3, 2), F(2)):
        out = play(gen_santa_related_adaptive(s))
        bounded = solve_bounded(out.generated.instance, out.sequence, out.profile)
        assert bounded.complete
        assert out.trace.final_value / bounded.value <= 1 / s
    corpus_ok("santa-related", 500)


@pytest.mark.criterion(10, "Any-Fit: A = 3(n-1)+cA, OPT_A = 2(n-1)+cO, fitted c = 3/2")
def test_anyfit_three_halves():
    ns = range(2, 7)
    for algorithm in ("first-fit", "best-fit", "worst-fit"):
        report = run_experiment(ExperimentSpec("anyfit-lb", algorithm, [{"n": n} for n in ns], opt_source="witness"))
        c_a = {r.a - 3 * (r.params["n"] - 1) for r in report.rows}
        c_o = {r.opt_a - 2 * (r.params["n"] - 1) for r in report.rows}
        assert len(c_a) == 1 and len(c_o) == 1, algorithm
        fit = fit_asymptotic(report.rows)
        assert fit.c == F(3, 2) and not fit.warnings
        small = run_experiment(ExperimentSpec("anyfit-lb", algorithm, [{"n": 2}], opt_source="both"))
        assert small.rows[0].opt_source == "oracle=witness"


@pytest.mark.criterion(11, "bin covering q=10, L=10: greedy 5 against witness 10, zero prefixes")
def test_bin_covering():
    out = play(gen_covering_lb(10, 10))
    assert out.trace.final_value == 5
    assert out.witness.final_value == 10
    assert out.trace.final_value / out.witness.final_value == F(1, 2)
    assert out.trace.values[:10] == (0,) * 10
    assert out.witness.values[:10] == (0,) * 10


@pytest.mark.criterion(12, "dual packing: I' accommodating, ALG(I') = ALG(I), OPT(I') = OPT_ALG(I)")
def test_accommodating_equivalence():
    for algorithm in ("dual-first-fit", "dual-best-fit", "dual-worst-fit"):
        cases = generate(algorithm)
        assert len(cases) >= 300
        for case in cases:
            instance, seq = case.instance, case.sequence
            trace = run_online(instance, algorithm, seq)
            bounded = solve_bounded(instance, seq, prefix_profile(trace, Direction.MAX))
            assert bounded.complete
            reduced = accommodating_subsequence(instance, seq, trace, bounded.witness)
            assert is_accommodating(instance, reduced)
            assert run_online(instance, algorithm, reduced).final_value == trace.final_value
            assert solve_unconstrained(instance, reduced).value == bounded.value


@pytest.mark.criterion(13, "Unfair-First-Fit ratio 2n/(2n+(n-1)(1/2-2e)/e), strictly decreasing")
def test_uff_ratio_to_zero():
    ratios = []
    for n in (2, 3, 4):
        out = play(gen_uff_lb(n))
        eps = F(1, 24 * n)
        expected = F(2 * n) / (2 * n + (n - 1) * (F(1, 2) - 2 * eps) / eps)
        assert check_witness(out.generated.instance, out.sequence, out.profile, out.witness) == out.witness.final_value
        ratio = out.trace.final_value / out.witness.final_value
        assert ratio == expected
        if n == 2:
            bounded = solve_bounded(out.generated.instance, out.sequence, out.profile)
            assert bounded.complete and bounded.value == out.witness.final_value
        ratios.append(ratio)
    assert ratios[0] > ratios[1] > ratios[2]


@pytest.mark.criterion(14, "dual First-Fit and Best-Fit never below 1/2 of OPT_A on the random corpus")
def test_imported_half_bound():
    corpus_ok("dual-first-fit", 300)
    corpus_ok("dual-best-fit", 300)


@pytest.mark.criterion(15, "seat reservation ratio <= 11/(k+7), witness checked, algorithm fair")
def test_seat_reservation():
    for k in (12, 16):
        out = play(gen_seatres_lb(k, 8, "seat-first-fit"))
        instance = out.generated.instance
        value = check_witness(instance, out.sequence, out.profile, out.witness)
        assert out.trace.final_value / value <= F(11, k + 7)
        for t, (request, decision) in enumerate(zip(out.sequence, out.trace.decisions)):
            if decision == Reject():
                state, _ = replay(instance, out.sequence[:t], out.trace.decisions[:t])
                assert not fits_somewhere(state, request)


@pytest.mark.criterion(16, "edge-arrival matching greedy = OPT_A on 500 random sequences")
def test_matching_ratio_one():
    corpus_ok("matching", 500)


@pytest.mark.criterion(17, "oracle equals naive enumeration on every corpus case with <= 6 requests")
def test_oracle_soundness():
    checked = 0
    for name in CORPORA:
        for case in generate(name):
            if len(case) > 6:
                continue
            instance, seq = case.instance, case.sequence
            profile = prefix_profile(run_online(instance, case.algorithm, seq), direction_of(instance))
            assert solve_bounded(instance, seq, profile).value == naive_optimum(instance, seq, profile.values)
            assert solve_unconstrained(instance, seq).value == naive_optimum(instance, seq)
            checked += 1
    assert checked >= 1000
