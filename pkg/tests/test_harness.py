import io
import json
from fractions import Fraction as F
from pathlib import Path

import pytest

from onlinebound import Direction, Job, Makespan, SearchConfig
from onlinebound.harness import (
    ExperimentSpec, InvariantViolation, RatioReport, Row, check_ordering, emit_report, fit_asymptotic,
    run_experiment,
)

GOLDEN = Path(__file__).parent / "golden" / "makespan_greedy_lb.csv"


def sweep(key, values):
    return [{key: v} for v in values]


def test_makespan_sweep_ratios():
    report = run_experiment(ExperimentSpec("makespan-greedy-lb", sweep=sweep("m", (3, 4, 5))))
    assert [r.ratio for r in report.rows] == [F(3, 2), F(5, 3), F(7, 4)]
    assert all(r.opt_source == "oracle=witness" for r in report.rows)
    assert report.exit_code == 0


def test_anyfit_rows_and_fit():
    report = run_experiment(ExperimentSpec("anyfit-lb", "first-fit", sweep("n", (2, 3, 4)), opt_source="witness"))
    assert [r.ratio for r in report.rows] == [F(7, 5), F(10, 7), F(13, 9)]
    fit = fit_asymptotic(report.rows)
    assert (fit.c, fit.alpha) == (F(3, 2), F(-1, 2))
    assert not fit.warnings


def test_fit_needs_distinct_extremes():
    report = run_experiment(ExperimentSpec("makespan-adaptive-lb", sweep=sweep("m", (3, 4)), opt_source="witness"))
    with pytest.raises(ValueError, match="same OPT_A"):
        fit_asymptotic(report.rows)


def test_fit_needs_two_rows():
    row = Row({"n": 2}, F(7), F(5), None, F(7, 5), "witness")
    with pytest.raises(ValueError):
        fit_asymptotic([row])


def test_uff_fit_flags_nonaffine_rows():
    report = run_experiment(ExperimentSpec("uff-lb", sweep=sweep("n", (2, 3, 4)), opt_source="witness", fit=True))
    assert report.fitted is not None
    assert 0 < report.fitted.c < F(1, 20)
    assert report.fitted.warnings


def test_fit_failure_becomes_report_warning():
    report = run_experiment(ExperimentSpec("makespan-adaptive-lb", sweep=sweep("m", (3, 4)),
                                           opt_source="witness", fit=True))
    assert report.fitted is None and report.warnings


def test_empty_sequence_ratio_is_one():
    report = run_experiment(ExperimentSpec(instance=Makespan(2), sequence=[], algorithm="greedy-identical"))
    assert report.rows[0].ratio == 1 and report.rows[0].a == 0


def test_instance_and_sequence_mode():
    seq = [Job(2), Job(1), Job(1), Job(2)]
    report = run_experiment(ExperimentSpec(instance=Makespan(3), sequence=seq, algorithm="greedy-identical"))
    row = report.rows[0]
    assert (row.a, row.opt_a, row.opt, row.opt_source) == (3, 2, 2, "oracle")


def test_unresolved_row():
    spec = ExperimentSpec("seatres-lb", sweep=[{"k": 16, "seats": 8}], opt_source="oracle",
                          config=SearchConfig(node_budget=500))
    report = run_experiment(spec)
    assert report.rows[0].opt_a is None and report.exit_code == 2
    text = emit_report(report, "csv")
    assert "UNRESOLVED" in text


def test_witness_fallback_when_oracle_gives_up():
    spec = ExperimentSpec("seatres-lb", sweep=[{"k": 16, "seats": 8}], config=SearchConfig(node_budget=500))
    row = run_experiment(spec).rows[0]
    assert row.opt_source == "witness" and row.ratio <= F(11, 23)


def test_ordering_invariant():
    check_ordering(Direction.MIN, F(3), F(2), F(2))
    check_ordering(Direction.MAX, F(1), F(2), F(3))
    with pytest.raises(InvariantViolation):
        check_ordering(Direction.MIN, F(2), F(3), None)
    with pytest.raises(InvariantViolation):
        check_ordering(Direction.MAX, F(1), F(2), F(1))


@pytest.mark.parametrize("kwargs", [
    {"construction": "fast-lb", "sweep": []},
    {"construction": "fast-lb", "opt_source": "guess"},
    {"instance": Makespan(2)},
    {"construction": "no-such-construction"},
    {"construction": "fast-lb", "algorithm": "no-such-algorithm"},
])
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        ExperimentSpec(**kwargs)


def test_golden_csv():
    report = run_experiment(ExperimentSpec("makespan-greedy-lb", sweep=sweep("m", (3, 4, 5))))
    assert emit_report(report, "csv") == GOLDEN.read_text()


def test_one_row_csv_is_byte_stable(tmp_path):
    spec = ExperimentSpec("fast-lb", sweep=[{"s": F(3, 2)}])
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_report(run_experiment(spec), "csv", first)
    emit_report(run_experiment(spec), "csv", second)
    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines == ["params,A,OPT_A,OPT,ratio,opt_source", "s=3/2,5/2,3/2,3/2,5/3,oracle=witness"]


def test_json_and_markdown():
    report = run_experiment(ExperimentSpec("anyfit-lb", sweep=sweep("n", (2, 3)), opt_source="witness", fit=True))
    data = json.loads(emit_report(report, "json"))
    assert data["direction"] == "min"
    assert data["rows"][0]["ratio"] == "7/5" and data["rows"][0]["params"] == {"n": 2}
    assert data["fitted"] == {"c": "3/2", "alpha": "-1/2", "warnings": []}
    md = emit_report(report, "markdown")
    assert md.startswith("| params | A | OPT_A | OPT | ratio | opt_source |")
    assert "c = 3/2, alpha = -1/2" in md


def test_stream_destination_and_bad_format():
    report = RatioReport(Direction.MIN, [Row({}, F(1), F(1), F(1), F(1), "oracle")])
    buf = io.StringIO()
    emit_report(report, "csv", buf)
    assert buf.getvalue().endswith(",1,1,1,1,oracle\n")
    with pytest.raises(ValueError):
        emit_report(report, "xml")
