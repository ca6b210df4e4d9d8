"""Unit-price seat reservation: ``k`` stations, a fixed number of seats."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AssignSeat, Direction, IllegalDecision, Interval, Problem, Reject, RequestMismatch,
    SeatReservation, register_algorithm, register_problem,
)

Span = tuple[int, int]


@dataclass(frozen=True)
class SeatState:
    seats: tuple[tuple[Span, ...], ...]
    accepted: int = 0

    @classmethod
    def empty(cls, count: int) -> "SeatState":
        return cls(((),) * count)

    def fits(self, seat: int, request: Interval) -> bool:
        return all(not (a < request.end and request.start < b) for a, b in self.seats[seat])

    def occupied(self, seat: int) -> int:
        return sum(b - a for a, b in self.seats[seat])

    def place(self, seat: int, request: Interval) -> "SeatState":
        seats = list(self.seats)
        seats[seat] = tuple(sorted(seats[seat] + ((request.start, request.end),)))
        return SeatState(tuple(seats), self.accepted + 1)


def fits_somewhere(state: SeatState, request: Interval) -> bool:
    return any(state.fits(i, request) for i in range(len(state.seats)))


class SeatPolicy(enum.Enum):
    SEAT_FIRST_FIT = "seat-first-fit"
    SEAT_BEST_FIT = "seat-best-fit"


def seat_step(policy: SeatPolicy, instance: SeatReservation, state: SeatState, request: Interval):
    candidates = [i for i in range(len(state.seats)) if state.fits(i, request)]
    if not candidates:
        return Reject()
    if policy is SeatPolicy.SEAT_FIRST_FIT:
        return AssignSeat(candidates[0])
    # least empty length left on the seat after placement
    return AssignSeat(min(candidates, key=lambda i: (-state.occupied(i), i)))


@register_problem(SeatReservation)
class SeatReservationProblem(Problem):
    direction = Direction.MAX
    request_type = Interval

    def check_request(self, request):
        super().check_request(request)
        if request.end > self.instance.k:
            raise RequestMismatch(f"interval [{request.start}, {request.end}) exceeds k={self.instance.k}")

    def initial(self):
        return SeatState.empty(self.instance.seats)

    def legal(self, state, request):
        return [AssignSeat(i) for i in range(len(state.seats)) if state.fits(i, request)] + [Reject()]

    def apply(self, state, request, decision):
        if isinstance(decision, Reject):
            return state
        if isinstance(decision, AssignSeat) and 0 <= decision.index < len(state.seats):
            if not state.fits(decision.index, request):
                raise IllegalDecision(
                    f"[{request.start}, {request.end}) overlaps an interval on seat {decision.index}")
            return state.place(decision.index, request)
        raise IllegalDecision(f"{decision!r} is not legal in seat reservation")

    def value(self, state):
        return Fraction(state.accepted)

    def canonical(self, state):
        return tuple(sorted(state.seats)), state.accepted

    def summarize(self, remaining):
        return len(remaining)

    def bound(self, state, summary):
        return Fraction(state.accepted + summary)


for _p in SeatPolicy:
    def _decide(instance, state, request, prefix, _policy=_p):
        return seat_step(_policy, instance, state, request)
    register_algorithm(_p.value, (SeatReservation,))(_decide)
