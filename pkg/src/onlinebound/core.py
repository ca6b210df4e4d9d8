"""Shared vocabulary: exact numbers, instances, requests, decisions, traces.

Every quantity is a :class:`fractions.Fraction`. Problem families plug in
through :class:`Problem` subclasses registered with :func:`register_problem`;
online policies register through :func:`register_algorithm`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Sequence

Rational = Fraction


def make_rational(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


def as_rational(x: Any) -> Fraction:
    """Exact conversion from int, Fraction or a ``"p/q"`` string. Floats are refused."""
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} {x!r} to an exact rational")


class Direction(enum.Enum):
    MIN = "min"
    MAX = "max"

    def better_or_equal(self, a: Fraction, b: Fraction) -> bool:
        """True when value ``a`` is at least as good as ``b``."""
        return a <= b if self is Direction.MIN else a >= b


# --------------------------------------------------------------------------
# instances

def _speeds(m: int, speeds) -> tuple[Fraction, ...]:
    if speeds is None:
        return (Fraction(1),) * m
    return tuple(as_rational(s) for s in speeds)


@dataclass(frozen=True)
class _Machines:
    m: int
    speeds: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one machine")
        speeds = _speeds(self.m, self.speeds)
        if len(speeds) != self.m:
            raise ValueError(f"{len(speeds)} speeds given for {self.m} machines")
        if any(s <= 0 for s in speeds):
            raise ValueError("speeds must be positive")
        if any(a < b for a, b in zip(speeds, speeds[1:])):
            raise ValueError("speeds must be listed fastest first")
        object.__setattr__(self, "speeds", speeds)

    @property
    def identical(self) -> bool:
        return len(set(self.speeds)) == 1

    @classmethod
    def related(cls, s, slow=1):
        return cls(2, (as_rational(s), as_rational(slow)))


@dataclass(frozen=True)
class Makespan(_Machines):
    pass


@dataclass(frozen=True)
class Santa(_Machines):
    pass


@dataclass(frozen=True)
class BinPacking:
    pass


@dataclass(frozen=True)
class BinCovering:
    pass


@dataclass(frozen=True)
class DualBinPacking:
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one bin")


@dataclass(frozen=True)
class SeatReservation:
    k: int
    seats: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("need at least two stations")
        if self.seats < 1:
            raise ValueError("need at least one seat")


@dataclass(frozen=True)
class Matching:
    pass


ProblemInstance = Makespan | Santa | BinPacking | BinCovering | DualBinPacking | SeatReservation | Matching


# --------------------------------------------------------------------------
# requests

@dataclass(frozen=True)
class Job:
    size: Fraction

    def __post_init__(self):
        object.__setattr__(self, "size", as_rational(self.size))
        if self.size <= 0:
            raise ValueError(f"job size must be positive, got {self.size}")


@dataclass(frozen=True)
class Item:
    size: Fraction

    def __post_init__(self):
        object.__setattr__(self, "size", as_rational(self.size))
        if not 0 < self.size <= 1:
            raise ValueError(f"item size must lie in (0, 1], got {self.size}")


@dataclass(frozen=True)
class Interval:
    """Half-open station interval ``[start, end)``."""

    start: int
    end: int

    def __post_init__(self):
        if not 1 <= self.start < self.end:
            raise ValueError(f"bad interval [{self.start}, {self.end})")

    def overlaps(self, other: "Interval") -> bool:
        return self.start < other.end and other.start < self.end

    @property
    def length(self) -> int:
        return self.end - self.start


@dataclass(frozen=True)
class Edge:
    u: int
    v: int
    weight: Fraction

    def __post_init__(self):
        object.__setattr__(self, "weight", as_rational(self.weight))
        if self.u == self.v:
            raise ValueError("self-loops are not allowed")


Request = Job | Item | Interval | Edge


# --------------------------------------------------------------------------
# decisions (indices are 0-based)

@dataclass(frozen=True)
class AssignMachine:
    index: int


@dataclass(frozen=True)
class AssignBin:
    index: int


@dataclass(frozen=True)
class OpenNewBin:
    pass


@dataclass(frozen=True)
class Reject:
    pass


@dataclass(frozen=True)
class AssignSeat:
    index: int


@dataclass(frozen=True)
class AcceptEdge:
    pass


@dataclass(frozen=True)
class RejectEdge:
    pass


Decision = AssignMachine | AssignBin | OpenNewBin | Reject | AssignSeat | AcceptEdge | RejectEdge


class IllegalDecision(ValueError):
    pass


class RequestMismatch(ValueError):
    pass


# --------------------------------------------------------------------------
# traces

@dataclass(frozen=True)
class DecisionTrace:
    steps: tuple[tuple[Decision, Fraction], ...]
    final_value: Fraction

    @property
    def decisions(self) -> tuple[Decision, ...]:
        return tuple(d for d, _ in self.steps)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for _, v in self.steps)

    def __len__(self):
        return len(self.steps)


@dataclass(frozen=True)
class PrefixProfile:
    direction: Direction
    values: tuple[Fraction, ...]

    def __len__(self):
        return len(self.values)

    def admits(self, t: int, value: Fraction) -> bool:
        """Whether an offline value after ``t`` requests (``t >= 1``) respects the envelope."""
        return self.direction.better_or_equal(value, self.values[t - 1])


def prefix_profile(trace: DecisionTrace, direction: Direction) -> PrefixProfile:
    return PrefixProfile(direction, trace.values)


# --------------------------------------------------------------------------
# problem semantics

class Problem:
    """Semantics of one problem family for a fixed instance.

    Subclasses supply the state machine; states are immutable and hashable.
    """

    direction: Direction
    request_type: type

    def __init__(self, instance):
        self.instance = instance

    def check_request(self, request) -> None:
        if not isinstance(request, self.request_type):
            raise RequestMismatch(
                f"{type(self.instance).__name__} expects {self.request_type.__name__}, "
                f"got {type(request).__name__}"
            )

    def initial(self):
        raise NotImplementedError

    def legal(self, state, request) -> list:
        """Every legal offline decision, in canonical order."""
        raise NotImplementedError

    def apply(self, state, request, decision):
        raise NotImplementedError

    def value(self, state) -> Fraction:
        raise NotImplementedError

    def canonical(self, state) -> Hashable:
        """Key under which symmetric states coincide."""
        return state

    def summarize(self, remaining: Sequence) -> Any:
        return None

    def bound(self, state, summary) -> Fraction | None:
        """Optimistic final value reachable from ``state``; ``None`` when unknown."""
        return None


_PROBLEMS: dict[type, type[Problem]] = {}


def register_problem(instance_type: type):
    def deco(cls):
        _PROBLEMS[instance_type] = cls
        return cls
    return deco


def problem_for(instance) -> Problem:
    _load_families()
    try:
        cls = _PROBLEMS[type(instance)]
    except KeyError:
        raise TypeError(f"unknown problem instance {instance!r}") from None
    return cls(instance)


def direction_of(instance) -> Direction:
    return problem_for(instance).direction


def _load_families():
    # the family modules register themselves on import
    from . import graphs, packing, scheduling, seatres  # noqa: F401


# --------------------------------------------------------------------------
# online algorithms

@dataclass(frozen=True)
class Algorithm:
    """A deterministic online policy.

    ``decide(instance, state, request, prefix)`` sees the current state and the
    requests revealed so far (``prefix`` includes ``request``).
    """

    name: str
    decide: Callable[..., Decision]
    families: tuple[type, ...] = ()
    accepts: Callable[[Any], bool] | None = field(default=None, compare=False)

    def check_instance(self, instance) -> None:
        if self.families and not isinstance(instance, self.families):
            raise ValueError(f"algorithm {self.name!r} does not apply to {type(instance).__name__}")
        if self.accepts is not None and not self.accepts(instance):
            raise ValueError(f"algorithm {self.name!r} is not legal for {instance!r}")


ALGORITHMS: dict[str, Algorithm] = {}


def register_algorithm(name: str, families: Iterable[type], accepts=None):
    def deco(fn):
        ALGORITHMS[name] = Algorithm(name, fn, tuple(families), accepts)
        return fn
    return deco


def get_algorithm(algorithm: str | Algorithm) -> Algorithm:
    if isinstance(algorithm, Algorithm):
        return algorithm
    _load_families()
    try:
        return ALGORITHMS[algorithm]
    except KeyError:
        raise KeyError(f"unknown algorithm id {algorithm!r}") from None


class OnlineRun:
    """Feeds requests one at a time to an algorithm, recording its trace."""

    def __init__(self, instance, algorithm: str | Algorithm):
        self.instance = instance
        self.algorithm = get_algorithm(algorithm)
        self.algorithm.check_instance(instance)
        self.problem = problem_for(instance)
        self.state = self.problem.initial()
        self.requests: list = []
        self.steps: list[tuple[Decision, Fraction]] = []

    def feed(self, request) -> Decision:
        self.problem.check_request(request)
        self.requests.append(request)
        decision = self.algorithm.decide(self.instance, self.state, request, tuple(self.requests))
        try:
            self.state = self.problem.apply(self.state, request, decision)
        except IllegalDecision as exc:
            raise IllegalDecision(
                f"{self.algorithm.name} made an illegal decision at step {len(self.requests)}: {exc}"
            ) from None
        self.steps.append((decision, self.problem.value(self.state)))
        return decision

    @property
    def decisions(self) -> tuple[Decision, ...]:
        return tuple(d for d, _ in self.steps)

    @property
    def trace(self) -> DecisionTrace:
        final = self.steps[-1][1] if self.steps else self.problem.value(self.problem.initial())
        return DecisionTrace(tuple(self.steps), final)


def run_online(instance, algorithm: str | Algorithm, sequence: Iterable) -> DecisionTrace:
    run = OnlineRun(instance, algorithm)
    for request in sequence:
        run.feed(request)
    return run.trace


def replay(instance, sequence: Sequence, decisions: Sequence[Decision]):
    """Apply ``decisions`` to ``sequence``; return (final state, per-prefix values)."""
    problem = problem_for(instance)
    state = problem.initial()
    values = []
    for t, (request, decision) in enumerate(zip(sequence, decisions), start=1):
        problem.check_request(request)
        try:
            state = problem.apply(state, request, decision)
        except IllegalDecision as exc:
            raise IllegalDecision(f"step {t}: {exc}") from None
        values.append(problem.value(state))
    return state, values
