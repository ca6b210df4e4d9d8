"""Explicit and adaptive adversarial sequences, each with a scripted offline witness.

A script maps the requests emitted so far and the algorithm's decisions on
them to the next request (``None`` ends the sequence). A witness builder maps
the finished sequence and the algorithm's decisions to an offline decision
list, which :func:`play` validates against the algorithm's prefix profile.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .core import (
    AssignBin, AssignMachine, AssignSeat, BinCovering, BinPacking,
    DecisionTrace, DualBinPacking, Edge, Interval, Item, Job, Makespan, Matching,
    OnlineRun, OpenNewBin, PrefixProfile, Reject, Santa, SeatReservation,
    as_rational, direction_of, get_algorithm, prefix_profile, replay,
)
from .oracle import check_witness
from .scheduling import makespan

Script = Callable[[tuple, tuple], object]
WitnessBuilder = Callable[[tuple, tuple], list]


@dataclass
class GeneratedInstance:
    name: str
    instance: object
    script: Script
    witness: WitnessBuilder | None = None
    algorithm: str | None = None
    params: dict = field(default_factory=dict)
    expected_ratio: Fraction | None = None


@dataclass
class Outcome:
    generated: GeneratedInstance
    sequence: list
    trace: DecisionTrace
    profile: PrefixProfile
    witness: DecisionTrace | None


def static(requests) -> Script:
    requests = list(requests)

    def script(emitted, decisions):
        return requests[len(emitted)] if len(emitted) < len(requests) else None
    return script


def play(generated: GeneratedInstance, algorithm=None, verify: bool = True) -> Outcome:
    """Run the construction against ``algorithm`` (default: the construction's own)."""
    algorithm = algorithm or generated.algorithm
    if algorithm is None:
        raise ValueError(f"{generated.name} needs an algorithm")
    run = OnlineRun(generated.instance, algorithm)
    while (request := generated.script(tuple(run.requests), run.decisions)) is not None:
        run.feed(request)
    trace = run.trace
    profile = prefix_profile(trace, direction_of(generated.instance))
    witness = None
    if generated.witness is not None:
        decisions = generated.witness(tuple(run.requests), run.decisions)
        if verify:
            check_witness(generated.instance, run.requests, profile, decisions)
        _, values = replay(generated.instance, run.requests, decisions)
        final = values[-1] if values else trace.final_value
        witness = DecisionTrace(tuple(zip(decisions, values)), final)
    return Outcome(generated, list(run.requests), trace, profile, witness)


# -- makespan

def gen_makespan_greedy_lb(m: int, algorithm="greedy-identical") -> GeneratedInstance:
    if m < 2:
        raise ValueError("m >= 2")
    units = (m - 1) * (m - 2)
    jobs = [Job(m - 1)] + [Job(1)] * units + [Job(m - 1)]

    def witness(emitted, decisions):
        # big job alone; unit jobs fill machines 1..m-2 to m-1; last big job on the spare machine
        return ([AssignMachine(0)] + [AssignMachine(1 + j // (m - 1)) for j in range(units)]
                + [AssignMachine(m - 1)])
    return GeneratedInstance("makespan-greedy-lb", Makespan(m), static(jobs), witness, algorithm,
                             {"m": m}, Fraction(2 * m - 3, m - 1))


def gen_makespan_adaptive_lb(m: int, algorithm="greedy-identical") -> GeneratedInstance:
    if m < 3:
        raise ValueError("m >= 3")
    instance = Makespan(m)
    opening = [Job(3)] * (m - 2) + [Job(1), Job(1)]

    def branch(emitted, decisions):
        state, _ = replay(instance, emitted[:m], decisions[:m])
        if makespan(state) >= 4:
            return "stop"
        return "stacked" if decisions[m - 2] == decisions[m - 1] else "spread"

    def script(emitted, decisions):
        if len(emitted) < m:
            return opening[len(emitted)]
        tail = {"stop": [], "stacked": [Job(2), Job(2)], "spread": [Job(3)]}[branch(emitted, decisions)]
        i = len(emitted) - m
        return tail[i] if i < len(tail) else None

    def witness(emitted, decisions):
        out = [AssignMachine(i) for i in range(m - 2)]
        kind = branch(emitted, decisions)
        if kind == "spread":
            return out + [AssignMachine(m - 2), AssignMachine(m - 2), AssignMachine(m - 1)]
        out += [AssignMachine(m - 2), AssignMachine(m - 1)]
        if kind == "stacked":
            out += [AssignMachine(m - 2), AssignMachine(m - 1)]
        return out
    return GeneratedInstance("makespan-adaptive-lb", instance, script, witness, algorithm, {"m": m})


def gen_greedy_fastties_counter(s, algorithm="greedy-related-fastties") -> GeneratedInstance:
    s = as_rational(s)
    if s <= 1:
        raise ValueError("s > 1")
    jobs = [Job(s - 1), Job(1), Job(s + 1)]

    def witness(emitted, decisions):
        return [AssignMachine(0), AssignMachine(1), AssignMachine(0)]
    return GeneratedInstance("greedy-fastties-counter", Makespan.related(s), static(jobs), witness,
                             algorithm, {"s": s}, min(2 + 1 / s, s + 1) / 2)


def gen_fast_lb(s, algorithm="fast") -> GeneratedInstance:
    s = as_rational(s)
    if s <= 1:
        raise ValueError("s > 1")

    def witness(emitted, decisions):
        return [AssignMachine(0), AssignMachine(1)]
    return GeneratedInstance("fast-lb", Makespan.related(s), static([Job(s * s), Job(s)]), witness,
                             algorithm, {"s": s}, (s + 1) / s)


THRESHOLD_SEQUENCE = [Fraction(3, 4), Fraction(1, 4), Fraction(5, 12), Fraction(1, 6),
                      Fraction(7, 12), Fraction(5, 6)]


def gen_threshold_counter(algorithm="threshold-4-3") -> GeneratedInstance:
    def witness(emitted, decisions):
        return [AssignMachine(i) for i in (0, 0, 1, 2, 1, 2)]
    return GeneratedInstance("threshold-counter", Makespan(3), static(Job(x) for x in THRESHOLD_SEQUENCE),
                             witness, algorithm, {}, Fraction(17, 12))


def gen_santa_related_adaptive(s, algorithm="santa-least-loaded") -> GeneratedInstance:
    s = as_rational(s)
    if s <= 1:
        raise ValueError("s > 1")

    def script(emitted, decisions):
        if not emitted:
            return Job(1)
        if len(emitted) == 1:
            return Job(s) if decisions[0] == AssignMachine(0) else Job(1 / s)
        return None

    def witness(emitted, decisions):
        if decisions[0] == AssignMachine(0):
            return [AssignMachine(1), AssignMachine(0)]
        return [AssignMachine(0), AssignMachine(1)]
    return GeneratedInstance("santa-related-adaptive", Santa.related(s), script, witness, algorithm, {"s": s})


# -- bin packing and covering

def gen_anyfit_lb(n: int, algorithm="first-fit") -> GeneratedInstance:
    if n < 2:
        raise ValueError("n >= 2")
    eps = Fraction(1, 24 * n)
    half = Fraction(1, 2)
    first = [Fraction(2, 3), Fraction(5, 12), Fraction(1, 4)]
    second = {
        0: [Fraction(1, 3), Fraction(1, 3), half - n * eps, half + n * eps],
        1: [Fraction(7, 12)],
    }
    last = []
    for i in range(n - 1, 0, -1):
        last += [half - i * eps, half - i * eps, half + i * eps, half + i * eps]

    def case(decisions):
        placed = decisions[2]
        if placed not in (AssignBin(0), AssignBin(1)):
            raise ValueError(f"{placed!r} for the 1/4 item: the algorithm is not Any-Fit")
        return placed.index

    def sizes(decisions):
        return first + (second[case(decisions)] if len(decisions) >= 3 else []) + last

    def script(emitted, decisions):
        if len(emitted) < 3:
            return Item(first[len(emitted)])
        full = sizes(decisions)
        return Item(full[len(emitted)]) if len(emitted) < len(full) else None

    def witness(emitted, decisions):
        if case(decisions) == 0:
            out = [OpenNewBin(), OpenNewBin(), AssignBin(1), AssignBin(1), AssignBin(0),
                   OpenNewBin(), AssignBin(2)]
            base = 3
        else:
            out = [OpenNewBin(), OpenNewBin(), AssignBin(0), AssignBin(1)]
            base = 2
        for g in range(n - 1):
            b = base + 2 * g
            out += [OpenNewBin(), OpenNewBin(), AssignBin(b), AssignBin(b + 1)]
        return out
    return GeneratedInstance("anyfit-lb", BinPacking(), script, witness, algorithm, {"n": n})


def gen_uff_lb(n: int, algorithm="unfair-first-fit") -> GeneratedInstance:
    if n < 2:
        raise ValueError("n >= 2")
    eps = Fraction(1, 24 * n)
    half = Fraction(1, 2)
    per_bin = int((half - 2 * eps) / eps)
    tail = (n - 1) * per_bin
    items = [Item(1 - eps), Item(eps), Item(half + eps)] * n + [Item(eps)] * tail

    def witness(emitted, decisions):
        out = [AssignBin(0), AssignBin(0), AssignBin(1)]
        for r in range(1, n):
            out += [Reject(), AssignBin(r), AssignBin(r + 1) if r + 1 < n else Reject()]
        return out + [AssignBin(1 + j // per_bin) for j in range(tail)]
    ratio = Fraction(2 * n) / (2 * n + (n - 1) * (half - 2 * eps) / eps)
    return GeneratedInstance("uff-lb", DualBinPacking(n), static(items), witness, algorithm,
                             {"n": n}, ratio)


def gen_covering_lb(q: int, L: int, algorithm="covering-greedy") -> GeneratedInstance:
    if not (q >= L >= 2 and q % L == 0):
        raise ValueError("need q >= L >= 2 with L dividing q")
    delta = Fraction(1, q + 1)
    group = q // L
    items = [Item(delta)] * q + [Item(1 - group * delta)] * L

    def witness(emitted, decisions):
        small = [OpenNewBin() if j % group == 0 else AssignBin(j // group) for j in range(q)]
        return small + [AssignBin(i) for i in range(L)]
    ratio = Fraction(1 + (L - 1) // 2, L)
    return GeneratedInstance("covering-lb", BinCovering(), static(items), witness, algorithm,
                             {"q": q, "L": L}, ratio)


# -- seat reservation

def gen_seatres_lb(k: int, seats: int, algorithm="seat-first-fit") -> GeneratedInstance:
    n = seats
    if n % 4 or n <= 0:
        raise ValueError("seat count must be a positive multiple of 4")
    if k < 8:
        raise ValueError("k >= 8")
    instance = SeatReservation(k, seats)
    opening = [Interval(k - 3, k - 2), Interval(k - 1, k)] * (n // 2)
    closing = [Interval(1, k - 2)] * (n // 4) + [Interval(1, k - 3)] * (3 * n // 4)
    for i in range(1, k - 3):
        closing += [Interval(i, i + 1)] * (n // 4)

    def doubled(emitted, decisions) -> int:
        state, _ = replay(instance, emitted[:n], decisions[:n])
        return sum(1 for seat in state.seats if len(seat) == 2)

    def case_one(emitted, decisions) -> bool:
        return doubled(emitted, decisions) >= n // 4

    def middle(emitted, decisions):
        if case_one(emitted, decisions):
            return [Interval(k - 2, k)] * (n // 2) + [Interval(k - 3, k - 1)] * (n // 2)
        return [Interval(k - 3, k)] * (n // 2)

    def script(emitted, decisions):
        if len(emitted) < n:
            return opening[len(emitted)]
        full = opening + middle(emitted, decisions) + closing
        return full[len(emitted)] if len(emitted) < len(full) else None

    def witness(emitted, decisions):
        if case_one(emitted, decisions):
            out = [AssignSeat(j) for j in range(n)]
            out += [AssignSeat(2 * c) for c in range(n // 2)]
            out += [AssignSeat(2 * c + 1) for c in range(n // 2)]
        else:
            out = [AssignSeat(j // 2) for j in range(n)]
            out += [AssignSeat(n // 2 + c) for c in range(n // 2)]
        out += [Reject()] * (n // 4)
        out += [AssignSeat(c) for c in range(3 * n // 4)]
        for _ in range(1, k - 3):
            out += [AssignSeat(3 * n // 4 + c) for c in range(n // 4)]
        return out
    return GeneratedInstance("seatres-lb", instance, script, witness, algorithm, {"k": k, "seats": seats})


# -- matching

WEIGHT_GRID = tuple(Fraction(w, 2) for w in range(-1, 5))


def gen_matching_edge_arrival_random(seed: int, size: int, vertices: int = 8,
                                     algorithm="matching-greedy") -> GeneratedInstance:
    """Reproducible random edge-arrival sequence.

    The algorithm's own decisions serve as the witness; any online solution
    is feasible for the bounded optimum, and for the greedy it is tight.
    """
    rng = random.Random(seed)
    edges = []
    for _ in range(size):
        u, v = rng.sample(range(1, vertices + 1), 2)
        edges.append(Edge(u, v, rng.choice(WEIGHT_GRID)))

    def witness(emitted, decisions):
        return list(decisions)
    return GeneratedInstance("matching-random", Matching(), static(edges), witness, algorithm,
                             {"seed": seed, "size": size})


# -- registry

@dataclass(frozen=True)
class Construction:
    factory: Callable[..., GeneratedInstance]
    params: tuple[str, ...]


CONSTRUCTIONS: dict[str, Construction] = {
    "makespan-greedy-lb": Construction(gen_makespan_greedy_lb, ("m",)),
    "makespan-adaptive-lb": Construction(gen_makespan_adaptive_lb, ("m",)),
    "greedy-fastties-counter": Construction(gen_greedy_fastties_counter, ("s",)),
    "fast-lb": Construction(gen_fast_lb, ("s",)),
    "threshold-counter": Construction(gen_threshold_counter, ()),
    "santa-related-adaptive": Construction(gen_santa_related_adaptive, ("s",)),
    "anyfit-lb": Construction(gen_anyfit_lb, ("n",)),
    "uff-lb": Construction(gen_uff_lb, ("n",)),
    "seatres-lb": Construction(gen_seatres_lb, ("k", "seats")),
    "covering-lb": Construction(gen_covering_lb, ("q", "L")),
    "matching-random": Construction(gen_matching_edge_arrival_random, ("seed", "size")),
}


def build(construction: str, params: dict, algorithm=None) -> GeneratedInstance:
    try:
        spec = CONSTRUCTIONS[construction]
    except KeyError:
        raise KeyError(f"unknown construction {construction!r}") from None
    missing = [p for p in spec.params if p not in params]
    if missing:
        raise ValueError(f"{construction} needs parameter(s) {', '.join(missing)}")
    kwargs = {p: params[p] for p in spec.params}
    if algorithm is not None:
        get_algorithm(algorithm)
        kwargs["algorithm"] = algorithm
    return spec.factory(**kwargs)
