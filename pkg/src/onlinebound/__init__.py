"""Online bounded analysis: online algorithms measured against the best
offline solution that is never worse than the algorithm on any prefix."""

from .core import (
    ALGORITHMS, AcceptEdge, Algorithm, AssignBin, AssignMachine, AssignSeat,
    BinCovering, BinPacking, DecisionTrace, Direction, DualBinPacking, Edge,
    IllegalDecision, Interval, Item, Job, Makespan, Matching, OnlineRun,
    OpenNewBin, PrefixProfile, Reject, RejectEdge, RequestMismatch, Santa,
    SeatReservation, as_rational, direction_of, get_algorithm, make_rational,
    prefix_profile, problem_for, replay, run_online,
)
from .oracle import (
    OracleResult, SearchConfig, Status, WitnessError, check_witness,
    enumerate_decisions, solve_bounded, solve_unconstrained,
)

__version__ = "0.1.0"

# the family modules register their problems and algorithms on import
from . import graphs, packing, scheduling, seatres  # noqa: E402,F401
