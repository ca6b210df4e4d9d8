"""Experiment runs: algorithm value, bounded optimum, ratios, reports."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .adversary import CONSTRUCTIONS, build, play
from .core import ALGORITHMS, Direction, direction_of, prefix_profile, run_online
from .formats import format_rational
from .oracle import SearchConfig, Status, solve_bounded, solve_unconstrained

log = logging.getLogger(__name__)

UNRESOLVED = "UNRESOLVED"
OPT_SOURCES = ("oracle", "witness", "both")


class InvariantViolation(AssertionError):
    """An ordering between online value, bounded optimum and optimum failed."""


@dataclass
class ExperimentSpec:
    construction: str | None = None
    algorithm: str | None = None
    sweep: list[dict] = field(default_factory=lambda: [{}])
    config: SearchConfig = field(default_factory=SearchConfig)
    opt_source: str = "both"
    instance: object = None
    sequence: list | None = None
    compute_opt: bool = True
    fit: bool = False

    def __post_init__(self):
        if not self.sweep:
            raise ValueError("sweep must not be empty")
        if self.opt_source not in OPT_SOURCES:
            raise ValueError(f"opt_source must be one of {OPT_SOURCES}")
        if self.construction is None and (self.instance is None or self.sequence is None or self.algorithm is None):
            raise ValueError("give a construction id, or an instance, a sequence and an algorithm")
        if self.construction is not None and self.construction not in CONSTRUCTIONS:
            raise ValueError(f"unknown construction {self.construction!r}")
        if self.algorithm is not None and self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")


@dataclass
class Row:
    params: dict
    a: Fraction
    opt_a: Fraction | None
    opt: Fraction | None
    ratio: Fraction | None
    opt_source: str
    instance: object = field(default=None, repr=False, compare=False)
    sequence: list = field(default_factory=list, repr=False, compare=False)

    @property
    def resolved(self) -> bool:
        return self.opt_a is not None


@dataclass
class Fit:
    c: Fraction
    alpha: Fraction
    warnings: list[str] = field(default_factory=list)


@dataclass
class RatioReport:
    direction: Direction
    rows: list[Row]
    fitted: Fit | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if all(r.resolved for r in self.rows) else 2


def strict_ratio(a: Fraction, opt_a: Fraction, empty: bool = False) -> Fraction | None:
    if empty or a == opt_a:
        return Fraction(1)
    if opt_a == 0:
        return None
    return a / opt_a


def check_ordering(direction: Direction, a, opt_a, opt) -> None:
    chain = [x for x in (opt, opt_a, a) if x is not None]
    if direction is Direction.MAX:
        chain.reverse()
    if any(x > y for x, y in zip(chain, chain[1:])):
        raise InvariantViolation(f"ordering violated for {direction.name}: A={a} OPT_A={opt_a} OPT={opt}")


def _point(spec: ExperimentSpec, params: dict) -> Row:
    if spec.construction is not None:
        outcome = play(build(spec.construction, params, spec.algorithm))
        instance, sequence, trace = outcome.generated.instance, outcome.sequence, outcome.trace
        profile, witness = outcome.profile, outcome.witness
    else:
        instance, sequence = spec.instance, list(spec.sequence)
        trace = run_online(instance, spec.algorithm, sequence)
        profile, witness = prefix_profile(trace, direction_of(instance)), None
    direction = profile.direction
    a = trace.final_value

    oracle_value = opt = None
    if spec.opt_source in ("oracle", "both"):
        bounded = solve_bounded(instance, sequence, profile, spec.config)
        if bounded.status is Status.INFEASIBLE:
            raise InvariantViolation(f"bounded optimum infeasible under the algorithm's own profile at {params}")
        if bounded.complete:
            oracle_value = bounded.value
        else:
            log.warning("oracle budget exhausted at %s after %d nodes", params, bounded.nodes_explored)
        if spec.compute_opt:
            free = solve_unconstrained(instance, sequence, spec.config)
            if free.complete:
                opt = free.value

    witness_value = None
    if witness is not None and spec.opt_source in ("witness", "both"):
        witness_value = witness.final_value

    if oracle_value is not None:
        if witness_value is not None and not direction.better_or_equal(oracle_value, witness_value):
            raise InvariantViolation(f"witness {witness_value} beats the exact bounded optimum {oracle_value}")
        opt_a = oracle_value
        source = "oracle=witness" if witness_value == oracle_value else "oracle"
    elif witness_value is not None:
        opt_a, source = witness_value, "witness"
    else:
        opt_a, source = None, UNRESOLVED

    check_ordering(direction, a, opt_a, opt)
    ratio = None if opt_a is None else strict_ratio(a, opt_a, empty=not sequence)
    return Row(dict(params), a, opt_a, opt, ratio, source, instance, list(sequence))


def run_experiment(spec: ExperimentSpec) -> RatioReport:
    rows = [_point(spec, params) for params in spec.sweep]
    if spec.construction is not None:
        direction = direction_of(build(spec.construction, spec.sweep[0], spec.algorithm).instance)
    else:
        direction = direction_of(spec.instance)
    report = RatioReport(direction, rows)
    if spec.fit:
        try:
            report.fitted = fit_asymptotic(rows)
        except ValueError as exc:
            report.warnings.append(f"no asymptotic fit: {exc}")
    return report


def fit_asymptotic(rows) -> Fit:
    """Affine fit ``A = c * OPT_A + alpha`` through the first and last resolved rows."""
    usable = [r for r in rows if r.opt_a is not None]
    if len(usable) < 2:
        raise ValueError("need at least two resolved rows")
    first, last = usable[0], usable[-1]
    if first.opt_a == last.opt_a:
        raise ValueError("extreme rows share the same OPT_A value")
    c = (last.a - first.a) / (last.opt_a - first.opt_a)
    alpha = last.a - c * last.opt_a
    warnings = [
        f"row {r.params} deviates from the affine fit: A={r.a}, fit gives {c * r.opt_a + alpha}"
        for r in usable[1:-1] if c * r.opt_a + alpha != r.a
    ]
    return Fit(c, alpha, warnings)


# -- output

COLUMNS = ("params", "A", "OPT_A", "OPT", "ratio", "opt_source")


def _cell(x) -> str:
    return "" if x is None else format_rational(x)


def _params(params: dict) -> str:
    return ";".join(f"{k}={format_rational(v) if isinstance(v, Fraction) else v}" for k, v in params.items())


def _row_cells(row: Row) -> list[str]:
    opt_a = _cell(row.opt_a) if row.resolved else UNRESOLVED
    ratio = UNRESOLVED if not row.resolved else ("inf" if row.ratio is None else _cell(row.ratio))
    return [_params(row.params), _cell(row.a), opt_a, _cell(row.opt), ratio, row.opt_source]


def report_to_json(report: RatioReport) -> dict:
    return {
        "direction": report.direction.value,
        "rows": [dict(zip(COLUMNS, _row_cells(r))) | {"params": {k: _cell(v) if isinstance(v, Fraction) else v
                                                                   for k, v in r.params.items()}}
                 for r in report.rows],
        "fitted": None if report.fitted is None else {
            "c": _cell(report.fitted.c), "alpha": _cell(report.fitted.alpha),
            "warnings": report.fitted.warnings},
        "warnings": report.warnings,
    }


def render_report(report: RatioReport, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in report.rows:
            writer.writerow(_row_cells(row))
        return buf.getvalue()
    if fmt == "json":
        return json.dumps(report_to_json(report), indent=2) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        lines += ["| " + " | ".join(_row_cells(r)) + " |" for r in report.rows]
        if report.fitted is not None:
            lines += ["", f"fitted: c = {_cell(report.fitted.c)}, alpha = {_cell(report.fitted.alpha)}"]
            lines += [f"- warning: {w}" for w in report.fitted.warnings]
        lines += [f"- warning: {w}" for w in report.warnings]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")


def emit_report(report: RatioReport, fmt: str = "csv", destination=None) -> str:
    text = render_report(report, fmt)
    if destination is not None:
        if hasattr(destination, "write"):
            destination.write(text)
        else:
            Path(destination).write_text(text)
    return text
