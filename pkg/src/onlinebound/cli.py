"""Command line entry point: ``onlinebound {run,oracle,reproduce,verify,list}``."""

from __future__ import annotations

import argparse
import itertools
import logging
import sys
from pathlib import Path

from . import __version__
from .adversary import CONSTRUCTIONS
from .core import ALGORITHMS, direction_of, prefix_profile, run_online
from .formats import (
    dump_json, format_rational, instance_to_json, load_instance, load_sequence,
    oracle_result_to_json, parse_rational, sequence_to_json, trace_to_json,
)
from .harness import ExperimentSpec, InvariantViolation, emit_report, run_experiment
from .oracle import SearchConfig, Status, default_budget, solve_bounded, solve_unconstrained
from .verify import CORPORA, check_corpus

PARAM_TYPES = {"m": int, "n": int, "k": int, "seats": int, "q": int, "L": int,
               "seed": int, "size": int, "s": parse_rational}


def _budget(text: str) -> int | None:
    if text.strip().lower() in ("none", "unlimited", "inf"):
        return None
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("budget must be positive")
    return value


def _config(args) -> SearchConfig:
    budget = default_budget() if args.budget is None else args.budget
    return SearchConfig(node_budget=budget, canonicalize=not args.no_symmetry)


def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=_budget, default=None,
                   help="oracle node budget ('none' for unlimited); overrides ONLINEBOUND_NODE_BUDGET")
    p.add_argument("--no-symmetry", action="store_true", help="disable symmetry reduction and state merging")


def _values(key: str, text: str) -> list:
    convert = PARAM_TYPES.get(key)
    if convert is None:
        raise SystemExit(f"unknown parameter {key!r}")
    return [convert(v.strip()) for v in text.split(",") if v.strip()]


def sweep_points(args) -> list[dict]:
    """Cartesian product of the parameter flags and ``--sweep key=v1,v2`` entries, in flag order."""
    axes: dict[str, list] = {}
    for key in PARAM_TYPES:
        raw = getattr(args, key, None)
        if raw is not None:
            axes[key] = _values(key, raw)
    for entry in args.sweep or []:
        key, sep, raw = entry.partition("=")
        if not sep:
            raise SystemExit(f"--sweep expects key=v1,v2,... (got {entry!r})")
        axes[key.strip()] = _values(key.strip(), raw)
    if not axes:
        return [{}]
    return [dict(zip(axes, combo)) for combo in itertools.product(*axes.values())]


def cmd_run(args) -> int:
    instance = load_instance(args.instance)
    sequence = load_sequence(args.sequence)
    trace = run_online(instance, args.algorithm, sequence)
    out = {"algorithm": args.algorithm, "instance": instance_to_json(instance), "trace": trace_to_json(trace)}
    text = dump_json(out, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args) -> int:
    instance = load_instance(args.instance)
    sequence = load_sequence(args.sequence)
    config = _config(args)
    if args.algorithm:
        trace = run_online(instance, args.algorithm, sequence)
        result = solve_bounded(instance, sequence, prefix_profile(trace, direction_of(instance)), config)
    else:
        result = solve_unconstrained(instance, sequence, config)
    out = oracle_result_to_json(result)
    if args.algorithm:
        out["online_value"] = format_rational(trace.final_value)
    text = dump_json(out, args.out)
    if args.out is None:
        sys.stdout.write(text)
    return {Status.COMPLETE: 0, Status.BUDGET_EXHAUSTED: 2, Status.INFEASIBLE: 1}[result.status]


def _dump_sequences(directory: str, construction: str, report) -> None:
    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    for row in report.rows:
        tag = "-".join(f"{k}={format_rational(v) if not isinstance(v, int) else v}".replace("/", "_")
                       for k, v in row.params.items())
        stem = construction + (f"-{tag}" if tag else "")
        dump_json(instance_to_json(row.instance), root / f"{stem}.instance.json")
        dump_json(sequence_to_json(row.sequence), root / f"{stem}.sequence.json")


def cmd_reproduce(args) -> int:
    spec = ExperimentSpec(construction=args.construction, algorithm=args.algorithm,
                          sweep=sweep_points(args), config=_config(args),
                          opt_source=args.opt, compute_opt=not args.skip_opt, fit=args.fit)
    report = run_experiment(spec)
    if args.dump_sequence:
        _dump_sequences(args.dump_sequence, args.construction, report)
    text = emit_report(report, args.format, args.out)
    if args.out is None:
        sys.stdout.write(text)
    for warning in report.warnings + (report.fitted.warnings if report.fitted else []):
        print(f"warning: {warning}", file=sys.stderr)
    return report.exit_code


def cmd_verify(args) -> int:
    names = args.corpus or list(CORPORA)
    config = _config(args)
    status = 0
    for name in names:
        report = check_corpus(name, args.count, args.seed, config)
        verdict = "ok" if report.ok else "FAIL"
        print(f"{verdict:4} {name:18} {report.checked:5} cases  unresolved={report.unresolved}  "
              f"failures={len(report.failures)}  [{report.claim}]")
        for ev in report.failures[:5]:
            print(f"     counterexample: {ev.case.instance} {sequence_to_json(ev.case.sequence)} "
                  f"A={ev.a} OPT_A={ev.opt_a}")
        if report.failures:
            status = 1
        elif report.unresolved and status == 0:
            status = 2
    return status


def cmd_list(args) -> int:
    print("constructions:")
    for name, c in CONSTRUCTIONS.items():
        print(f"  {name:26} params: {', '.join(c.params) or '-'}")
    print("algorithms:")
    for name, alg in ALGORITHMS.items():
        print(f"  {name:26} {', '.join(f.__name__ for f in alg.families)}")
    print("corpora:")
    for name, corpus in CORPORA.items():
        print(f"  {name:26} {corpus.claim}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="onlinebound", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run an online algorithm and dump its trace")
    p.add_argument("--instance", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--algorithm", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--out")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("oracle", help="solve the offline optimum, bounded by an algorithm if given")
    p.add_argument("--instance", required=True)
    p.add_argument("--sequence", required=True)
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS),
                   help="bound the optimum by this algorithm's prefix values")
    p.add_argument("--out")
    _add_search_flags(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("reproduce", help="play an adversarial construction and report ratios")
    p.add_argument("--construction", required=True, choices=sorted(CONSTRUCTIONS))
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS))
    for key in PARAM_TYPES:
        p.add_argument(f"--{key}", metavar="V[,V...]")
    p.add_argument("--sweep", action="append", metavar="KEY=V1,V2", help="extra sweep axis (repeatable)")
    p.add_argument("--opt", choices=("oracle", "witness", "both"), default="both",
                   help="where OPT_A comes from")
    p.add_argument("--skip-opt", action="store_true", help="do not solve the unconstrained optimum")
    p.add_argument("--fit", action="store_true", help="fit A = c * OPT_A + alpha over the sweep")
    p.add_argument("--format", choices=("csv", "json", "markdown"), default="csv")
    p.add_argument("--out")
    p.add_argument("--dump-sequence", metavar="DIR", help="write each emitted instance and sequence here")
    _add_search_flags(p)
    p.set_defaults(func=cmd_reproduce)

    p = sub.add_parser("verify", help="check ratio properties on the seeded random corpora")
    p.add_argument("--corpus", action="append", choices=sorted(CORPORA))
    p.add_argument("--count", type=int, help="cases per corpus (default: corpus size)")
    p.add_argument("--seed", type=int, default=0)
    _add_search_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", help="list constructions, algorithms and corpora")
    p.set_defaults(func=cmd_list)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
