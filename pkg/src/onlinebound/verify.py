"""Seeded random corpora and the ratio properties each one must satisfy.

Every case is run online, its bounded optimum is solved exactly and the
corpus property is checked on the pair ``(A, OPT_A)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import (
    DualBinPacking, Edge, Item, Job, Makespan, Matching, Santa, direction_of,
    prefix_profile, run_online,
)
from .oracle import SearchConfig, solve_bounded

QUARTERS = tuple(Fraction(k, 4) for k in range(1, 5))
EIGHTHS = tuple(Fraction(k, 8) for k in range(1, 9))
RELATED_SIZES = tuple(Fraction(k, 4) for k in range(1, 13))
HALF_WEIGHTS = tuple(Fraction(w, 2) for w in range(-1, 5))


@dataclass(frozen=True)
class Case:
    instance: object
    algorithm: str
    sequence: tuple

    def __len__(self):
        return len(self.sequence)


def _jobs(rng: random.Random, sizes, max_len: int) -> tuple:
    return tuple(Job(rng.choice(sizes)) for _ in range(rng.randint(1, max_len)))


def makespan_identical_case(rng: random.Random) -> Case:
    grid = rng.choice((QUARTERS, EIGHTHS))
    return Case(Makespan(rng.choice((3, 4))), "greedy-identical", _jobs(rng, grid, 8))


def makespan_related_case(rng: random.Random) -> Case:
    s = rng.choice((Fraction(3, 2), Fraction(2), Fraction(3)))
    return Case(Makespan.related(s), "greedy-related", _jobs(rng, RELATED_SIZES, 7))


def fast_case(rng: random.Random) -> Case:
    s = rng.choice((Fraction(3, 2), Fraction(2), Fraction(5, 2)))
    return Case(Makespan.related(s), "fast", _jobs(rng, RELATED_SIZES, 7))


def santa_identical_case(rng: random.Random) -> Case:
    return Case(Santa(rng.choice((2, 3, 4))), "santa-greedy", _jobs(rng, EIGHTHS, 7))


def santa_related_case(rng: random.Random) -> Case:
    s = rng.choice((Fraction(3, 2), Fraction(2)))
    return Case(Santa.related(s), "santa-least-loaded", _jobs(rng, RELATED_SIZES, 7))


def dual_case(algorithm: str) -> Callable[[random.Random], Case]:
    def make(rng: random.Random) -> Case:
        items = tuple(Item(rng.choice(EIGHTHS)) for _ in range(rng.randint(1, 7)))
        return Case(DualBinPacking(2), algorithm, items)
    make.__name__ = f"dual_case[{algorithm}]"
    return make


def matching_case(rng: random.Random) -> Case:
    vertices = rng.randint(2, 8)
    edges = []
    for _ in range(rng.randint(1, 10)):
        u, v = rng.sample(range(1, vertices + 1), 2)
        edges.append(Edge(u, v, rng.choice(HALF_WEIGHTS)))
    return Case(Matching(), "matching-greedy", tuple(edges))


def _greedy_identical_bound(case, a, opt_a):
    m = case.instance.m
    return a <= (2 - Fraction(1, m - 1)) * opt_a


def _fast_bound(case, a, opt_a):
    s = case.instance.speeds[0] / case.instance.speeds[1]
    return a <= (s + 1) / s * opt_a


def _santa_related_bound(case, a, opt_a):
    s = case.instance.speeds[0] / case.instance.speeds[1]
    return a >= opt_a / s


def _equal(case, a, opt_a):
    return a == opt_a


def _half(case, a, opt_a):
    return 2 * a >= opt_a


def _ordered(case, a, opt_a):
    return True


@dataclass(frozen=True)
class Corpus:
    name: str
    make: Callable[[random.Random], Case]
    holds: Callable[[Case, Fraction, Fraction], bool]
    claim: str
    default_count: int


CORPORA: dict[str, Corpus] = {c.name: c for c in (
    Corpus("greedy-identical", makespan_identical_case, _greedy_identical_bound,
           "Greedy <= (2 - 1/(m-1)) OPT_A", 1000),
    Corpus("greedy-related", makespan_related_case, _equal, "Greedy = OPT_A on two related machines", 1000),
    Corpus("fast", fast_case, _fast_bound, "Fast <= ((s+1)/s) OPT_A", 500),
    Corpus("santa-identical", santa_identical_case, _equal, "santa greedy = OPT_A", 1000),
    Corpus("santa-related", santa_related_case, _santa_related_bound, "G >= OPT_G / s", 500),
    Corpus("dual-first-fit", dual_case("dual-first-fit"), _half, "FF >= OPT_FF / 2", 300),
    Corpus("dual-best-fit", dual_case("dual-best-fit"), _half, "BF >= OPT_BF / 2", 300),
    Corpus("dual-worst-fit", dual_case("dual-worst-fit"), _ordered, "ordering only", 300),
    Corpus("matching", matching_case, _equal, "greedy = OPT_A", 500),
)}


def generate(corpus: Corpus | str, count: int | None = None, seed: int = 0) -> list[Case]:
    corpus = CORPORA[corpus] if isinstance(corpus, str) else corpus
    rng = random.Random(f"{corpus.name}:{seed}")
    return [corpus.make(rng) for _ in range(corpus.default_count if count is None else count)]


@dataclass
class Evaluated:
    case: Case
    a: Fraction
    opt_a: Fraction | None


def evaluate(case: Case, config: SearchConfig | None = None) -> Evaluated:
    trace = run_online(case.instance, case.algorithm, case.sequence)
    profile = prefix_profile(trace, direction_of(case.instance))
    result = solve_bounded(case.instance, case.sequence, profile, config)
    return Evaluated(case, trace.final_value, result.value if result.complete else None)


@dataclass
class CorpusReport:
    name: str
    claim: str
    checked: int = 0
    unresolved: int = 0
    failures: list[Evaluated] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.unresolved


def check_corpus(corpus: Corpus | str, count: int | None = None, seed: int = 0,
                 config: SearchConfig | None = None) -> CorpusReport:
    corpus = CORPORA[corpus] if isinstance(corpus, str) else corpus
    report = CorpusReport(corpus.name, corpus.claim)
    for case in generate(corpus, count, seed):
        ev = evaluate(case, config)
        report.checked += 1
        if ev.opt_a is None:
            report.unresolved += 1
            continue
        ordered = direction_of(case.instance).better_or_equal(ev.opt_a, ev.a)
        if not ordered or not corpus.holds(case, ev.a, ev.opt_a):
            report.failures.append(ev)
    return report
