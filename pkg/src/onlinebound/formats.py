"""JSON encodings for instances, request sequences, decisions and oracle results.

Rationals travel as strings (``"5/12"``; integers as ``"3"``) so a round trip
through a file is exact.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .core import (
    AcceptEdge, AssignBin, AssignMachine, AssignSeat, BinCovering, BinPacking,
    DecisionTrace, DualBinPacking, Edge, Interval, Item, Job, Makespan, Matching,
    OpenNewBin, Reject, RejectEdge, Santa, SeatReservation, as_rational,
)


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_rational(text) -> Fraction:
    if isinstance(text, float):
        raise TypeError("floats are not accepted; write rationals as \"p/q\" strings")
    return as_rational(text)


# -- requests

def request_to_json(request):
    if isinstance(request, Job):
        return {"job": format_rational(request.size)}
    if isinstance(request, Item):
        return {"item": format_rational(request.size)}
    if isinstance(request, Interval):
        return {"interval": [request.start, request.end]}
    if isinstance(request, Edge):
        return {"edge": [request.u, request.v, format_rational(request.weight)]}
    raise TypeError(f"not a request: {request!r}")


def request_from_json(obj):
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"request objects have exactly one key, got {obj!r}")
    (kind, payload), = obj.items()
    if kind == "job":
        return Job(parse_rational(payload))
    if kind == "item":
        return Item(parse_rational(payload))
    if kind == "interval":
        a, b = payload
        return Interval(int(a), int(b))
    if kind == "edge":
        u, v, w = payload
        return Edge(int(u), int(v), parse_rational(w))
    raise ValueError(f"unknown request kind {kind!r}")


def sequence_to_json(sequence) -> list:
    return [request_to_json(r) for r in sequence]


def sequence_from_json(data) -> list:
    if not isinstance(data, list):
        raise ValueError("a sequence file holds a JSON array")
    return [request_from_json(r) for r in data]


# -- instances

_PROBLEM_NAMES = {
    Makespan: "makespan",
    Santa: "santa",
    BinPacking: "bin-packing",
    BinCovering: "bin-covering",
    DualBinPacking: "dual-bin-packing",
    SeatReservation: "seat-reservation",
    Matching: "matching",
}
_BY_NAME = {v: k for k, v in _PROBLEM_NAMES.items()}


def instance_to_json(instance) -> dict:
    name = _PROBLEM_NAMES[type(instance)]
    out = {"problem": name}
    if isinstance(instance, (Makespan, Santa)):
        out["m"] = instance.m
        out["speeds"] = [format_rational(s) for s in instance.speeds]
    elif isinstance(instance, DualBinPacking):
        out["n"] = instance.n
    elif isinstance(instance, SeatReservation):
        out["k"] = instance.k
        out["seats"] = instance.seats
    return out


def instance_from_json(obj: dict):
    try:
        cls = _BY_NAME[obj["problem"]]
    except KeyError:
        raise ValueError(f"unknown or missing problem in {obj!r}") from None
    if cls in (Makespan, Santa):
        speeds = obj.get("speeds")
        return cls(int(obj["m"]), None if speeds is None else [parse_rational(s) for s in speeds])
    if cls is DualBinPacking:
        return cls(int(obj["n"]))
    if cls is SeatReservation:
        return cls(int(obj["k"]), int(obj["seats"]))
    return cls()


# -- decisions

def decision_to_json(decision) -> str:
    if isinstance(decision, AssignMachine):
        return f"machine:{decision.index}"
    if isinstance(decision, AssignBin):
        return f"bin:{decision.index}"
    if isinstance(decision, AssignSeat):
        return f"seat:{decision.index}"
    if isinstance(decision, OpenNewBin):
        return "new-bin"
    if isinstance(decision, Reject):
        return "reject"
    if isinstance(decision, AcceptEdge):
        return "accept-edge"
    if isinstance(decision, RejectEdge):
        return "reject-edge"
    raise TypeError(f"not a decision: {decision!r}")


def decision_from_json(text: str):
    simple = {"new-bin": OpenNewBin(), "reject": Reject(),
              "accept-edge": AcceptEdge(), "reject-edge": RejectEdge()}
    if text in simple:
        return simple[text]
    kind, _, index = text.partition(":")
    cls = {"machine": AssignMachine, "bin": AssignBin, "seat": AssignSeat}.get(kind)
    if cls is None or not index.isdigit():
        raise ValueError(f"unknown decision {text!r}")
    return cls(int(index))


def trace_to_json(trace: DecisionTrace | None):
    if trace is None:
        return None
    return {
        "steps": [{"decision": decision_to_json(d), "value": format_rational(v)} for d, v in trace.steps],
        "final": format_rational(trace.final_value),
    }


def trace_from_json(obj) -> DecisionTrace:
    steps = tuple((decision_from_json(s["decision"]), parse_rational(s["value"])) for s in obj["steps"])
    return DecisionTrace(steps, parse_rational(obj["final"]))


def oracle_result_to_json(result) -> dict:
    return {
        "value": None if result.value is None else format_rational(result.value),
        "witness": None if result.witness is None else [decision_to_json(d) for d in result.witness.decisions],
        "nodes": result.nodes_explored,
        "status": result.status.value,
    }


# -- files

def load_json(path):
    return json.loads(Path(path).read_text())


def dump_json(obj, path=None) -> str:
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def load_instance(path):
    return instance_from_json(load_json(path))


def load_sequence(path):
    return sequence_from_json(load_json(path))
