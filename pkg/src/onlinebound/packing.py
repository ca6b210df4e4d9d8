"""Classic bin packing, bin covering and dual bin packing (n unit bins, unit values)."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AssignBin, BinCovering, BinPacking, Direction, DualBinPacking, IllegalDecision,
    Item, OpenNewBin, Problem, Reject, register_algorithm, register_problem,
)

ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class BinState:
    """Bin contents.

    Classic and covering states hold one load per opened bin; dual states hold
    exactly ``n`` loads. ``accepted`` counts placed items, ``seen`` all requests.
    """

    loads: tuple[Fraction, ...]
    accepted: int = 0
    seen: int = 0

    def fits(self, i: int, size: Fraction) -> bool:
        return self.loads[i] + size <= ONE

    def place(self, i: int, size: Fraction) -> "BinState":
        loads = list(self.loads)
        loads[i] += size
        return BinState(tuple(loads), self.accepted + 1, self.seen + 1)

    def open(self, size: Fraction) -> "BinState":
        return BinState(self.loads + (size,), self.accepted + 1, self.seen + 1)

    def skip(self) -> "BinState":
        return BinState(self.loads, self.accepted, self.seen + 1)


def bins_used(state: BinState) -> Fraction:
    return Fraction(len(state.loads))


def covered_bins(state: BinState) -> Fraction:
    return Fraction(sum(1 for load in state.loads if load >= ONE))


def accepted_count(state: BinState) -> Fraction:
    return Fraction(state.accepted)


class PackPolicy(enum.Enum):
    FIRST_FIT = "first-fit"
    BEST_FIT = "best-fit"
    WORST_FIT = "worst-fit"
    COVERING_GREEDY = "covering-greedy"
    DUAL_FIRST_FIT = "dual-first-fit"
    DUAL_BEST_FIT = "dual-best-fit"
    DUAL_WORST_FIT = "dual-worst-fit"
    UNFAIR_FIRST_FIT = "unfair-first-fit"


CLASSIC_POLICIES = (PackPolicy.FIRST_FIT, PackPolicy.BEST_FIT, PackPolicy.WORST_FIT)
FAIR_DUAL_POLICIES = (PackPolicy.DUAL_FIRST_FIT, PackPolicy.DUAL_BEST_FIT, PackPolicy.DUAL_WORST_FIT)
_FAMILY = {
    **{p: BinPacking for p in CLASSIC_POLICIES},
    PackPolicy.COVERING_GREEDY: BinCovering,
    **{p: DualBinPacking for p in FAIR_DUAL_POLICIES},
    PackPolicy.UNFAIR_FIRST_FIT: DualBinPacking,
}
_RULE = {
    PackPolicy.FIRST_FIT: "first", PackPolicy.DUAL_FIRST_FIT: "first",
    PackPolicy.UNFAIR_FIRST_FIT: "first",
    PackPolicy.BEST_FIT: "best", PackPolicy.DUAL_BEST_FIT: "best",
    PackPolicy.WORST_FIT: "worst", PackPolicy.DUAL_WORST_FIT: "worst",
}


def _choose(state: BinState, size: Fraction, rule: str) -> int | None:
    candidates = [i for i in range(len(state.loads)) if state.fits(i, size)]
    if not candidates:
        return None
    if rule == "first":
        return candidates[0]
    if rule == "best":
        return min(candidates, key=lambda i: (-state.loads[i], i))
    return min(candidates, key=lambda i: (state.loads[i], i))


def pack_step(policy: PackPolicy, instance, state: BinState, item: Item):
    if not isinstance(instance, _FAMILY[policy]):
        raise ValueError(f"{policy.value} does not apply to {type(instance).__name__}")

    if policy is PackPolicy.COVERING_GREEDY:
        if not state.loads or state.loads[-1] >= ONE:
            return OpenNewBin()
        return AssignBin(len(state.loads) - 1)

    if policy is PackPolicy.UNFAIR_FIRST_FIT and item.size > HALF:
        # reject while the accepted count stays at least 2/3 of the prefix length
        if 3 * state.accepted >= 2 * (state.seen + 1):
            return Reject()

    index = _choose(state, item.size, _RULE[policy])
    if index is not None:
        return AssignBin(index)
    return OpenNewBin() if isinstance(instance, BinPacking) else Reject()


# -- problem semantics

class _PackProblem(Problem):
    request_type = Item

    def initial(self):
        return BinState(())


@register_problem(BinPacking)
class BinPackingProblem(_PackProblem):
    direction = Direction.MIN

    def legal(self, state, request):
        fitting = [AssignBin(i) for i in range(len(state.loads)) if state.fits(i, request.size)]
        return fitting + [OpenNewBin()]

    def apply(self, state, request, decision):
        if isinstance(decision, OpenNewBin):
            return state.open(request.size)
        if isinstance(decision, AssignBin) and 0 <= decision.index < len(state.loads):
            if not state.fits(decision.index, request.size):
                raise IllegalDecision(f"item {request.size} overflows bin {decision.index}")
            return state.place(decision.index, request.size)
        raise IllegalDecision(f"{decision!r} is not legal in bin packing here")

    def value(self, state):
        return bins_used(state)

    def canonical(self, state):
        return tuple(sorted(state.loads))

    def summarize(self, remaining):
        return sum((r.size for r in remaining), Fraction(0))

    def bound(self, state, summary):
        return Fraction(max(len(state.loads), math.ceil(sum(state.loads) + summary)))


@register_problem(BinCovering)
class BinCoveringProblem(_PackProblem):
    direction = Direction.MAX

    def legal(self, state, request):
        return [AssignBin(i) for i in range(len(state.loads))] + [OpenNewBin()]

    def apply(self, state, request, decision):
        if isinstance(decision, OpenNewBin):
            return state.open(request.size)
        if isinstance(decision, AssignBin) and 0 <= decision.index < len(state.loads):
            return state.place(decision.index, request.size)
        raise IllegalDecision(f"{decision!r} is not legal in bin covering here")

    def value(self, state):
        return covered_bins(state)

    def canonical(self, state):
        # contents beyond a full cover never matter again
        return tuple(sorted(min(load, ONE) for load in state.loads))

    def summarize(self, remaining):
        return sum((r.size for r in remaining), Fraction(0))

    def bound(self, state, summary):
        open_total = sum((load for load in state.loads if load < ONE), Fraction(0))
        return covered_bins(state) + math.floor(open_total + summary)


@register_problem(DualBinPacking)
class DualBinPackingProblem(_PackProblem):
    direction = Direction.MAX

    def initial(self):
        return BinState((Fraction(0),) * self.instance.n)

    def legal(self, state, request):
        fitting = [AssignBin(i) for i in range(len(state.loads)) if state.fits(i, request.size)]
        return fitting + [Reject()]

    def apply(self, state, request, decision):
        if isinstance(decision, Reject):
            return state.skip()
        if isinstance(decision, AssignBin) and 0 <= decision.index < len(state.loads):
            if not state.fits(decision.index, request.size):
                raise IllegalDecision(f"item {request.size} overflows bin {decision.index}")
            return state.place(decision.index, request.size)
        raise IllegalDecision(f"{decision!r} is not legal in dual bin packing")

    def value(self, state):
        return accepted_count(state)

    def canonical(self, state):
        return tuple(sorted(state.loads)), state.accepted

    def summarize(self, remaining):
        return sorted(r.size for r in remaining)

    def bound(self, state, summary):
        # the most items that could still fit, ignoring bin boundaries
        room = len(state.loads) - sum(state.loads)
        count = 0
        for size in summary:
            if size > room:
                break
            room -= size
            count += 1
        return Fraction(state.accepted + count)


# -- registered online algorithms

def _register(policy: PackPolicy):
    @register_algorithm(policy.value, (_FAMILY[policy],))
    def decide(instance, state, request, prefix):
        return pack_step(policy, instance, state, request)


for _p in PackPolicy:
    _register(_p)


# -- accommodating sequences

def is_accommodating(instance: DualBinPacking, sequence, config=None) -> bool:
    from .oracle import BudgetExhausted, Status, solve_unconstrained

    result = solve_unconstrained(instance, sequence, config)
    if result.status is not Status.COMPLETE:
        raise BudgetExhausted(f"oracle stopped after {result.nodes_explored} nodes")
    return result.value == len(sequence)


def accommodating_subsequence(instance: DualBinPacking, sequence, alg_trace, opt_trace) -> list[Item]:
    """Accommodating subsequence with the same algorithm value and optimum.

    Items packed by the offline trace but not the online one are paired, in
    arrival order, with items packed online but not offline; each such offline
    item is swapped for its partner. The result keeps the original order.
    """
    from .core import replay

    sequence = list(sequence)
    alg = list(getattr(alg_trace, "decisions", alg_trace))
    opt = list(getattr(opt_trace, "decisions", opt_trace))
    if not len(alg) == len(opt) == len(sequence):
        raise ValueError("traces and sequence differ in length")
    replay(instance, sequence, alg)
    replay(instance, sequence, opt)

    alg_packed = {i for i, d in enumerate(alg) if isinstance(d, AssignBin)}
    opt_packed = {i for i, d in enumerate(opt) if isinstance(d, AssignBin)}
    only_opt = sorted(opt_packed - alg_packed)
    only_alg = sorted(alg_packed - opt_packed)
    if len(only_alg) > len(only_opt):
        raise ValueError("offline trace packs fewer items than the online trace")
    for o, a in zip(only_opt, only_alg):
        if o > a:
            raise ValueError(f"offline-only item {o} arrives after online-only item {a}; "
                             "offline trace is not prefix-dominant")
    kept = (opt_packed - set(only_opt[:len(only_alg)])) | set(only_alg)
    return [sequence[i] for i in sorted(kept)]
