"""Weighted matching with edges arriving online."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AcceptEdge, Direction, Edge, IllegalDecision, Matching, Problem, RejectEdge,
    register_algorithm, register_problem,
)


@dataclass(frozen=True)
class MatchState:
    matched: frozenset = frozenset()
    total_weight: Fraction = Fraction(0)
    accepted_edges: tuple[Edge, ...] = ()

    def exposed(self, edge: Edge) -> bool:
        return edge.u not in self.matched and edge.v not in self.matched


def matching_greedy_step(state: MatchState, edge: Edge):
    if state.exposed(edge) and edge.weight > 0:
        return AcceptEdge()
    return RejectEdge()


@register_algorithm("matching-greedy", (Matching,))
def _greedy(instance, state, request, prefix):
    return matching_greedy_step(state, request)


@register_problem(Matching)
class MatchingProblem(Problem):
    direction = Direction.MAX
    request_type = Edge

    def initial(self):
        return MatchState()

    def legal(self, state, request):
        return ([AcceptEdge()] if state.exposed(request) else []) + [RejectEdge()]

    def apply(self, state, request, decision):
        if isinstance(decision, RejectEdge):
            return state
        if isinstance(decision, AcceptEdge):
            if not state.exposed(request):
                raise IllegalDecision(f"edge {request.u}-{request.v} touches a matched vertex")
            return MatchState(state.matched | {request.u, request.v},
                              state.total_weight + request.weight,
                              state.accepted_edges + (request,))
        raise IllegalDecision(f"{decision!r} is not a matching decision")

    def value(self, state):
        return state.total_weight

    def canonical(self, state):
        return state.matched, state.total_weight

    def summarize(self, remaining):
        return sum((max(r.weight, Fraction(0)) for r in remaining), Fraction(0))

    def bound(self, state, summary):
        return state.total_weight + summary
