"""Command line front end.

Subcommands: sample, solve, expand-check, process, experiment.
Exit codes: 0 success, 2 bad input, 3 counterexample found, 4 solver or
budget failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import BudgetError, CounterexampleError, InputError, SolverError
from .hypergraph import read_hypergraph
from .matching import (
    cover_to_text, has_perfect_fractional_matching, matching_to_text,
    nu_star, tau_star,
)
from .expansion import PartiteExpansionParams, check_prop3_hypothesis, check_prop6_hypothesis
from .models import HostModel, run_process, sample_kout
from .experiments import (
    ExperimentConfig, experiment_implication_sweep, experiment_kout_pfm,
    experiment_stopping_time,
)


def _vs(members) -> str:
    """Vertex set as sorted space-separated ids; empty set prints as ''."""
    return " ".join(str(v) for v in sorted(members))


def _parse_k_range(text: str) -> tuple:
    try:
        a, b = text.split("..")
        return (int(a), int(b))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k range as a..b, got {text!r}")


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fracmatch")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("sample", help="draw a k-out random hypergraph")
    sp.add_argument("--host", choices=("complete", "partite"), default="complete")
    sp.add_argument("--n", type=int, required=True,
                    help="vertex count (complete) or block size (partite)")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")

    sp = sub.add_parser("solve", help="exact or float matching/cover numbers")
    sp.add_argument("path", help="hypergraph text file")
    sp.add_argument("--mode", choices=("exact", "float"), default="exact")
    sp.add_argument("--out")

    sp = sub.add_parser("expand-check", help="brute-force expansion hypotheses")
    sp.add_argument("path", help="hypergraph text file")
    sp.add_argument("--strict", action="store_true",
                    help="use the strict size bound (r-1)|X| - 1")
    sp.add_argument("--epsilon", type=Fraction)
    sp.add_argument("--lambda", dest="lam", type=Fraction)
    sp.add_argument("--budget", type=int)

    sp = sub.add_parser("process", help="run the sequential edge process")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--steps", type=int,
                    help="stop after this many edges instead of at T")
    sp.add_argument("--out")

    sp = sub.add_parser("experiment", help="Monte Carlo campaigns, CSV output")
    sp.add_argument("kind", choices=("kout-pfm", "implication", "stopping"))
    sp.add_argument("--host", choices=("complete", "partite"), default="complete")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--k-range", type=_parse_k_range,
                    help="inclusive sweep a..b")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=("exact", "float", "auto"), default="auto")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--out")
    return p


def _cmd_sample(args) -> int:
    host = HostModel(args.host, args.n, args.r)
    sample = sample_kout(host, args.k, args.seed)
    trailer = (f"# host = {args.host}\n# k = {args.k}\n"
               f"# seed = {args.seed}\n")
    text = sample.union.to_text() + trailer
    _emit(text, args.out)
    return 0


def _cmd_solve(args) -> int:
    h = read_hypergraph(args.path)
    value, matching = nu_star(h, args.mode)
    tau, cover = tau_star(h, args.mode)
    perfect = has_perfect_fractional_matching(h, args.mode)
    text = (matching_to_text(value, matching) + cover_to_text(tau, cover)
            + f"# perfect = {'true' if perfect else 'false'}\n")
    _emit(text, args.out)
    return 0


def _cmd_expand_check(args) -> int:
    h = read_hypergraph(args.path)
    if h.partition is not None:
        if args.epsilon is not None or args.lam is not None:
            params = PartiteExpansionParams(
                args.epsilon if args.epsilon is not None
                else PartiteExpansionParams.defaults(h.r).epsilon,
                args.lam if args.lam is not None
                else PartiteExpansionParams.defaults(h.r).lam)
        else:
            params = PartiteExpansionParams.defaults(h.r)
        report = check_prop6_hypothesis(h, params, budget=args.budget)
        kind = "block expansion condition"
    else:
        report = check_prop3_hypothesis(h, strict=args.strict, budget=args.budget)
        kind = ("independent-set expansion (strict)" if args.strict
                else "independent-set expansion")
    if report.verdict:
        scope = "exhaustive" if report.exhaustive else "sampled"
        print(f"{kind} holds ({report.pairs_checked} pairs checked, {scope})")
    else:
        x, y = report.witness
        print(f"{kind} fails: X = [{_vs(x)}] is blocked by Y = [{_vs(y)}]")
    print(f"verdict={'true' if report.verdict else 'false'}")
    if report.witness is not None:
        print(f"witness_x={_vs(report.witness[0])}")
        print(f"witness_y={_vs(report.witness[1])}")
    print(f"pairs_checked={report.pairs_checked}")
    print(f"exhaustive={'true' if report.exhaustive else 'false'}")
    return 0


def _cmd_process(args) -> int:
    stop = args.steps if args.steps is not None else "at_T"
    trace = run_process(args.n, args.r, args.seed, stop=stop)
    lines = [f"# seed = {args.seed}", "# host = complete",
             f"# T = {'' if trace.T is None else trace.T}"]
    for t, mark in enumerate(trace.xi):
        lines.append(f"# xi {t} {mark!r}")
    text = trace.hypergraph().to_text() + "\n".join(lines) + "\n"
    _emit(text, args.out)
    return 0


def _cmd_experiment(args) -> int:
    config = ExperimentConfig(
        subcommand=args.kind, n=args.n, r=args.r, host=args.host,
        k=args.k, k_range=args.k_range, trials=args.trials, seed=args.seed,
        mode=args.mode, out=args.out, budget=args.budget)
    runner = {"kout-pfm": experiment_kout_pfm,
              "implication": experiment_implication_sweep,
              "stopping": experiment_stopping_time}[args.kind]
    result = runner(config)
    if args.out is None:
        sys.stdout.write(result.csv)
    else:
        for key in sorted(result.summary):
            print(f"{key} = {result.summary[key]}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"sample": _cmd_sample, "solve": _cmd_solve,
               "expand-check": _cmd_expand_check, "process": _cmd_process,
               "experiment": _cmd_experiment}[args.command]
    try:
        return handler(args)
    except (InputError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CounterexampleError as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        if exc.dump_path is not None:
            print(f"instance written to {exc.dump_path}", file=sys.stderr)
        return 3
    except (SolverError, BudgetError) as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
