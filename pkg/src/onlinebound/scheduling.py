"""Makespan and Santa Claus scheduling on identical or uniformly related machines.

Load always means completion time, ``assigned[i] / speeds[i]``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AssignMachine, Direction, IllegalDecision, Job, Makespan, Problem, Santa,
    register_algorithm, register_problem,
)

FOUR_THIRDS = Fraction(4, 3)


@dataclass(frozen=True)
class SchedState:
    assigned: tuple[Fraction, ...]
    speeds: tuple[Fraction, ...]

    @classmethod
    def empty(cls, speeds) -> "SchedState":
        return cls((Fraction(0),) * len(speeds), tuple(speeds))

    def completion(self, i: int) -> Fraction:
        return self.assigned[i] / self.speeds[i]

    @property
    def completions(self) -> list[Fraction]:
        return [a / s for a, s in zip(self.assigned, self.speeds)]

    def add(self, i: int, size: Fraction) -> "SchedState":
        assigned = list(self.assigned)
        assigned[i] += size
        return SchedState(tuple(assigned), self.speeds)


def makespan(state: SchedState) -> Fraction:
    return max(state.completions, default=Fraction(0))


def min_load(state: SchedState) -> Fraction:
    return min(state.completions, default=Fraction(0))


class SchedPolicy(enum.Enum):
    GREEDY_IDENTICAL = "greedy-identical"
    GREEDY_RELATED_SLOW_TIES = "greedy-related"
    GREEDY_RELATED_FAST_TIES = "greedy-related-fastties"
    FAST = "fast"
    SANTA_GREEDY = "santa-greedy"
    SANTA_LEAST_LOADED = "santa-least-loaded"
    THRESHOLD_4_3 = "threshold-4-3"


_RELATED = (SchedPolicy.GREEDY_RELATED_SLOW_TIES, SchedPolicy.GREEDY_RELATED_FAST_TIES)
_SANTA = (SchedPolicy.SANTA_GREEDY, SchedPolicy.SANTA_LEAST_LOADED)


def _check_policy(policy: SchedPolicy, instance) -> None:
    if policy in _SANTA:
        if not isinstance(instance, Santa):
            raise ValueError(f"{policy.value} needs a Santa Claus instance")
        return
    if not isinstance(instance, Makespan):
        raise ValueError(f"{policy.value} needs a makespan instance")
    if policy in _RELATED and instance.m != 2:
        raise ValueError(f"{policy.value} is defined for two related machines")
    if policy is SchedPolicy.THRESHOLD_4_3 and not instance.identical:
        raise ValueError("threshold-4-3 needs identical machines")


def _least_loaded(state: SchedState) -> int:
    loads = state.completions
    return loads.index(min(loads))


def schedule_step(policy: SchedPolicy, instance, state: SchedState, job: Job,
                  prefix_opt: Fraction | None = None) -> AssignMachine:
    """Machine chosen by ``policy`` for ``job``.

    ``prefix_opt`` is the optimal makespan of the revealed prefix (current job
    included) and is required by, and only by, the 4/3-threshold policy.
    """
    _check_policy(policy, instance)
    if (policy is SchedPolicy.THRESHOLD_4_3) != (prefix_opt is not None):
        raise ValueError("prefix_opt is required by threshold-4-3 and only by it")
    m = len(state.assigned)

    if policy in (SchedPolicy.GREEDY_IDENTICAL, SchedPolicy.SANTA_GREEDY, SchedPolicy.SANTA_LEAST_LOADED):
        return AssignMachine(_least_loaded(state))

    if policy is SchedPolicy.FAST:
        return AssignMachine(0)

    current = makespan(state)
    if policy in _RELATED:
        results = [max(current, (state.assigned[i] + job.size) / state.speeds[i]) for i in range(m)]
        best = min(results)
        ties = [i for i in range(m) if results[i] == best]
        return AssignMachine(ties[-1] if policy is SchedPolicy.GREEDY_RELATED_SLOW_TIES else ties[0])

    # THRESHOLD_4_3: most loaded machine that keeps the makespan within 4/3 of the prefix optimum
    limit = FOUR_THIRDS * prefix_opt
    for i in sorted(range(m), key=lambda i: (-state.completion(i), i)):
        if max(current, (state.assigned[i] + job.size) / state.speeds[i]) <= limit:
            return AssignMachine(i)
    return AssignMachine(_least_loaded(state))


# -- problem semantics

class _SchedProblem(Problem):
    request_type = Job

    def initial(self):
        return SchedState.empty(self.instance.speeds)

    def legal(self, state, request):
        return [AssignMachine(i) for i in range(self.instance.m)]

    def apply(self, state, request, decision):
        if not isinstance(decision, AssignMachine) or not 0 <= decision.index < self.instance.m:
            raise IllegalDecision(f"{decision!r} is not a machine of {self.instance!r}")
        return state.add(decision.index, request.size)

    def canonical(self, state):
        # only machines of equal speed are interchangeable
        return tuple(sorted(zip(state.speeds, state.assigned)))

    def summarize(self, remaining):
        return (sum((r.size for r in remaining), Fraction(0)),
                max((r.size for r in remaining), default=Fraction(0)))


@register_problem(Makespan)
class MakespanProblem(_SchedProblem):
    direction = Direction.MIN

    def value(self, state):
        return makespan(state)

    def bound(self, state, summary):
        total, largest = summary
        speeds = state.speeds
        return max(makespan(state), largest / speeds[0],
                   (sum(state.assigned) + total) / sum(speeds))


@register_problem(Santa)
class SantaProblem(_SchedProblem):
    direction = Direction.MAX

    def value(self, state):
        return min_load(state)

    def bound(self, state, summary):
        total, _ = summary
        return (sum(state.assigned) + total) / sum(state.speeds)


# -- registered online algorithms

def _policy_algorithm(policy: SchedPolicy, family):
    def decide(instance, state, request, prefix):
        return schedule_step(policy, instance, state, request)
    register_algorithm(policy.value, (family,), accepts=lambda inst: _accepts(policy, inst))(decide)


def _accepts(policy, instance) -> bool:
    try:
        _check_policy(policy, instance)
    except ValueError:
        return False
    return True


for _p in (SchedPolicy.GREEDY_IDENTICAL, SchedPolicy.GREEDY_RELATED_SLOW_TIES,
           SchedPolicy.GREEDY_RELATED_FAST_TIES, SchedPolicy.FAST):
    _policy_algorithm(_p, Makespan)
for _p in _SANTA:
    _policy_algorithm(_p, Santa)


@register_algorithm(SchedPolicy.THRESHOLD_4_3.value, (Makespan,),
                    accepts=lambda inst: _accepts(SchedPolicy.THRESHOLD_4_3, inst))
def _threshold(instance, state, request, prefix):
    from .oracle import solve_unconstrained

    result = solve_unconstrained(instance, prefix)
    if result.value is None or result.status.value != "complete":
        raise RuntimeError("threshold-4-3 could not obtain the exact prefix optimum")
    return schedule_step(SchedPolicy.THRESHOLD_4_3, instance, state, request, result.value)
