"""Exact offline optimum, unconstrained or bounded by an online prefix profile.

Depth-first search over offline decision sequences. The value of a search
node ``(t, state)`` is the best final objective reachable from ``state`` after
``t`` requests while every later prefix stays within the profile; it depends
only on the canonical form of ``state``, which is what the memo is keyed on.
Children whose admissible bound cannot strictly beat an earlier sibling are
skipped, so the first optimal child in enumeration order always survives and
the reconstructed witness is the lexicographically smallest optimal one.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import (
    DecisionTrace, Direction, IllegalDecision, PrefixProfile, problem_for,
)

BUDGET_ENV = "ONLINEBOUND_NODE_BUDGET"
DEFAULT_NODE_BUDGET = 2_000_000


def default_budget() -> int | None:
    raw = os.environ.get(BUDGET_ENV, "").strip().lower()
    if not raw:
        return DEFAULT_NODE_BUDGET
    if raw in ("none", "unlimited", "inf"):
        return None
    return int(raw)


class Status(enum.Enum):
    COMPLETE = "complete"
    BUDGET_EXHAUSTED = "budget-exhausted"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class SearchConfig:
    node_budget: int | None = field(default_factory=default_budget)
    canonicalize: bool = True
    memoize: bool = True

    def __post_init__(self):
        if self.node_budget is not None and self.node_budget <= 0:
            raise ValueError("node budget must be positive")


@dataclass(frozen=True)
class OracleResult:
    value: Fraction | None
    witness: DecisionTrace | None
    nodes_explored: int
    status: Status

    @property
    def complete(self) -> bool:
        return self.status is Status.COMPLETE


class BudgetExhausted(RuntimeError):
    pass


class WitnessError(ValueError):
    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step


def enumerate_decisions(instance, state, request, canonicalize: bool = True, problem=None) -> list:
    """Legal decisions for ``request``; with ``canonicalize``, one per class of symmetric outcomes."""
    problem = problem or problem_for(instance)
    legal = problem.legal(state, request)
    if not canonicalize:
        return legal
    seen = set()
    out = []
    for decision in legal:
        key = problem.canonical(problem.apply(state, request, decision))
        if key not in seen:
            seen.add(key)
            out.append(decision)
    return out


class _Search:
    def __init__(self, instance, requests, profile: PrefixProfile | None, config: SearchConfig):
        self.problem = problem_for(instance)
        for r in requests:
            self.problem.check_request(r)
        self.instance = instance
        self.requests = list(requests)
        self.config = config
        self.minimize = self.problem.direction is Direction.MIN
        self.limits = None
        if profile is not None:
            if len(profile) != len(self.requests):
                raise ValueError(f"profile has {len(profile)} values for {len(self.requests)} requests")
            self.limits = [self.cost(v) for v in profile.values]
        self.summaries = [self.problem.summarize(self.requests[t:]) for t in range(len(self.requests) + 1)]
        self.memo: dict = {}
        self.nodes = 0
        self.incumbent: Fraction | None = None

    # all comparisons are on costs: the objective for MIN, its negation for MAX
    def cost(self, value: Fraction) -> Fraction:
        return value if self.minimize else -value

    def admissible(self, t: int, state) -> bool:
        if self.limits is None or t == 0:
            return True
        return self.cost(self.problem.value(state)) <= self.limits[t - 1]

    def optimistic(self, t: int, state) -> Fraction | None:
        b = self.problem.bound(state, self.summaries[t])
        return None if b is None else self.cost(b)

    def children(self, t: int, state):
        request = self.requests[t]
        for decision in enumerate_decisions(self.instance, state, request, self.config.canonicalize, self.problem):
            child = self.problem.apply(state, request, decision)
            if self.admissible(t + 1, child):
                yield decision, child

    def key(self, t, state):
        return t, (self.problem.canonical(state) if self.config.canonicalize else state)

    def best(self, t: int, state) -> Fraction | None:
        """Optimal cost-to-go from ``state`` after ``t`` requests; ``None`` if infeasible."""
        key = self.key(t, state) if self.config.memoize else None
        if key is not None and key in self.memo:
            return self.memo[key]
        self.nodes += 1
        if self.config.node_budget is not None and self.nodes > self.config.node_budget:
            raise BudgetExhausted
        if t == len(self.requests):
            result = self.cost(self.problem.value(state))
        else:
            result = None
            final_limit = self.limits[-1] if self.limits else None
            for _, child in self.children(t, state):
                b = self.optimistic(t + 1, child)
                if b is not None:
                    if result is not None and b >= result:
                        continue
                    if final_limit is not None and b > final_limit:
                        continue
                v = self.best(t + 1, child)
                if v is None:
                    continue
                if self.incumbent is None or v < self.incumbent:
                    self.incumbent = v
                if result is None or v < result:
                    result = v
        if key is not None:
            self.memo[key] = result
        return result

    def witness(self, target: Fraction) -> DecisionTrace:
        state = self.problem.initial()
        steps = []
        for t in range(len(self.requests)):
            for decision, child in self.children(t, state):
                b = self.optimistic(t + 1, child)
                if b is not None and b > target:
                    continue
                if self.best(t + 1, child) == target:
                    state = child
                    steps.append((decision, self.problem.value(child)))
                    break
            else:  # pragma: no cover - would mean the search itself is inconsistent
                raise AssertionError(f"no optimal continuation at step {t + 1}")
        return DecisionTrace(tuple(steps), self.problem.value(state))

    def run(self) -> OracleResult:
        root = self.problem.initial()
        try:
            cost = self.best(0, root)
            if cost is None:
                return OracleResult(None, None, self.nodes, Status.INFEASIBLE)
            trace = self.witness(cost)
        except BudgetExhausted:
            value = None if self.incumbent is None else self.cost(self.incumbent)
            return OracleResult(value, None, self.nodes, Status.BUDGET_EXHAUSTED)
        return OracleResult(self.cost(cost), trace, self.nodes, Status.COMPLETE)


def solve_unconstrained(instance, sequence: Sequence, config: SearchConfig | None = None) -> OracleResult:
    return _Search(instance, sequence, None, config or SearchConfig()).run()


def solve_bounded(instance, sequence: Sequence, profile: PrefixProfile,
                  config: SearchConfig | None = None) -> OracleResult:
    """Best offline solution never worse than ``profile`` on any prefix."""
    direction = problem_for(instance).direction
    if profile.direction is not direction:
        raise ValueError(f"profile direction {profile.direction} does not match {direction}")
    return _Search(instance, sequence, profile, config or SearchConfig()).run()


def check_witness(instance, sequence: Sequence, profile: PrefixProfile | None, trace) -> Fraction:
    """Replay an offline trace, validating legality and the prefix envelope; return its value."""
    problem = problem_for(instance)
    decisions = list(getattr(trace, "decisions", trace))
    if len(decisions) != len(sequence):
        raise ValueError(f"trace has {len(decisions)} decisions for {len(sequence)} requests")
    if profile is not None and len(profile) != len(sequence):
        raise ValueError("profile length differs from sequence length")
    state = problem.initial()
    for t, (request, decision) in enumerate(zip(sequence, decisions), start=1):
        problem.check_request(request)
        try:
            state = problem.apply(state, request, decision)
        except IllegalDecision as exc:
            raise WitnessError(t, f"illegal decision {decision!r}: {exc}") from None
        value = problem.value(state)
        if profile is not None and not profile.admits(t, value):
            raise WitnessError(t, f"offline value {value} is worse than the online value {profile.values[t - 1]}")
    return problem.value(state)
