"""Command-line front end: generate instances, run selectors, sweep curves.

Subcommands
-----------
gen     write a graph file for a policy-generated instance
select  run one selector on a graph file, print a CSV record
sweep   greedy-vs-optimal comparison curves over k and seeds, as CSV

CSV schema (header always written unless suppressed):
    topology,metric,policy,n,k,seed,method,leaders,objective,ratio,elapsed_s
The ratio column is greedy/optimal for coherence and optimal/greedy for
convergence (>= 1 always reads "greedy no better than optimal"); it is
filled on every row of a (k, seed) cell when both methods ran, else empty.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, TextIO

from .errors import MalformedInput, TooLarge
from .graphs import (
    GraphSpec,
    Metric,
    Topology,
    format_graph,
    parse_graph,
    skewed_policy,
    uniform_policy,
)
from .selectors import (
    Method,
    SelectionResult,
    brute_force,
    greedy,
    greedy_curve,
    optimal_curve,
    optimal_select,
)

CSV_FIELDS = (
    "topology", "metric", "policy", "n", "k", "seed", "method",
    "leaders", "objective", "ratio", "elapsed_s",
)

METHOD_ORDER = (Method.OPTIMAL_DP, Method.GREEDY, Method.BRUTE_FORCE)


class Policy(Enum):
    UNIFORM = "uniform"
    SKEWED = "skewed"


@dataclass(frozen=True)
class SweepConfig:
    """Parameters of one greedy-vs-optimal sweep."""

    topology: Topology
    metric: Metric
    n: int
    k_values: tuple[int, ...]
    policy: Policy
    seeds: tuple[int, ...]
    methods: tuple[Method, ...]

    def __post_init__(self):
        if not self.k_values:
            raise MalformedInput("no k values")
        if any(b <= a for a, b in zip(self.k_values, self.k_values[1:])):
            raise MalformedInput("k values must be strictly increasing")
        if not self.seeds:
            raise MalformedInput("no seeds")
        if not self.methods:
            raise MalformedInput("no methods")


def generate(topology: Topology, n: int, metric: Metric, policy: Policy,
             seed: int) -> GraphSpec:
    if policy is Policy.UNIFORM:
        return uniform_policy(topology, n, metric, seed)
    return skewed_policy(topology, n, metric)


def _format_row(spec: GraphSpec, policy: str, seed: str, k: int,
                result: SelectionResult, ratio: Optional[float]) -> dict[str, str]:
    return {
        "topology": spec.topology.value,
        "metric": spec.metric.value,
        "policy": policy,
        "n": str(spec.n),
        "k": str(k),
        "seed": seed,
        "method": result.method.value,
        "leaders": ";".join(str(v) for v in result.leaders.members),
        "objective": f"{result.objective.value:.12g}",
        "ratio": "" if ratio is None else f"{ratio:.12g}",
        "elapsed_s": f"{result.elapsed:.6g}",
    }


def _write_rows(out: TextIO, rows: list[dict[str, str]], header: bool) -> None:
    writer = csv.DictWriter(out, fieldnames=CSV_FIELDS, lineterminator="\n")
    if header:
        writer.writeheader()
    writer.writerows(rows)


def ratio_of(metric: Metric, optimal_value: float, greedy_value: float) -> float:
    """Relative greedy performance, oriented so >= 1 means optimal is at
    least as good."""
    if metric is Metric.COHERENCE:
        return greedy_value / optimal_value
    return optimal_value / greedy_value


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(args: argparse.Namespace) -> int:
    spec = generate(Topology(args.topology), args.n, Metric(args.metric),
                    Policy(args.policy), args.seed)
    text = format_graph(spec)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_select(args: argparse.Namespace) -> int:
    with open(args.graph, encoding="utf-8") as fh:
        spec = parse_graph(fh.read())
    method = Method(args.method)
    if method is Method.OPTIMAL_DP:
        result = optimal_select(spec, args.k)
    elif method is Method.GREEDY:
        result = greedy(spec, args.k)
    else:
        result = brute_force(spec, args.k)
    row = _format_row(spec, policy="", seed="", k=args.k, result=result, ratio=None)
    _write_rows(sys.stdout, [row], header=not args.csv)
    return 0


def run_sweep(config: SweepConfig, out: TextIO) -> None:
    """Run every (seed, method) once (selectors share work across k) and
    write rows in (k, seed, method) order."""
    ks = config.k_values
    cells: dict[tuple[int, int, Method], SelectionResult] = {}
    spec_by_seed: dict[int, GraphSpec] = {}
    for seed in config.seeds:
        spec = generate(config.topology, config.n, config.metric,
                        config.policy, seed)
        spec_by_seed[seed] = spec
        for method in METHOD_ORDER:
            if method not in config.methods:
                continue
            if method is Method.OPTIMAL_DP:
                results = optimal_curve(spec, ks)
            elif method is Method.GREEDY:
                results = greedy_curve(spec, ks)
            else:
                results = {k: brute_force(spec, k) for k in ks}
            for k in ks:
                cells[(k, seed, method)] = results[k]

    rows: list[dict[str, str]] = []
    for k in ks:
        for seed in config.seeds:
            opt = cells.get((k, seed, Method.OPTIMAL_DP))
            grd = cells.get((k, seed, Method.GREEDY))
            ratio = None
            if opt is not None and grd is not None:
                ratio = ratio_of(config.metric, opt.objective.value,
                                 grd.objective.value)
            for method in METHOD_ORDER:
                result = cells.get((k, seed, method))
                if result is None:
                    continue
                rows.append(_format_row(spec_by_seed[seed], config.policy.value,
                                        str(seed), k, result, ratio))
    _write_rows(out, rows, header=True)


def cmd_sweep(args: argparse.Namespace) -> int:
    try:
        seeds = tuple(int(tok) for tok in args.seeds.split(","))
        methods = tuple(Method(tok) for tok in args.methods.split(","))
    except ValueError as exc:
        raise MalformedInput(str(exc)) from None
    if args.k_min < 1 or args.k_max < args.k_min:
        raise MalformedInput(f"bad k range [{args.k_min}, {args.k_max}]")
    config = SweepConfig(
        topology=Topology(args.topology),
        metric=Metric(args.metric),
        n=args.n,
        k_values=tuple(range(args.k_min, args.k_max + 1)),
        policy=Policy(args.policy),
        seeds=seeds,
        methods=methods,
    )
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            run_sweep(config, fh)
    else:
        run_sweep(config, sys.stdout)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leadersel",
        description="Optimal k-leader selection in path and ring consensus networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file for a weight policy")
    gen.add_argument("--topology", required=True, choices=["path", "ring"])
    gen.add_argument("--n", required=True, type=int)
    gen.add_argument("--metric", required=True, choices=["coherence", "convergence"])
    gen.add_argument("--policy", required=True, choices=["uniform", "skewed"])
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None)
    gen.set_defaults(func=cmd_gen)

    select = sub.add_parser("select", help="run one selector on a graph file")
    select.add_argument("--graph", required=True)
    select.add_argument("--k", required=True, type=int)
    select.add_argument("--method", required=True,
                        choices=["optimal", "greedy", "brute"])
    select.add_argument("--csv", action="store_true",
                        help="suppress the header row (stream-friendly)")
    select.set_defaults(func=cmd_select)

    sweep = sub.add_parser("sweep", help="greedy-vs-optimal curves as CSV")
    sweep.add_argument("--topology", required=True, choices=["path", "ring"])
    sweep.add_argument("--n", required=True, type=int)
    sweep.add_argument("--metric", required=True, choices=["coherence", "convergence"])
    sweep.add_argument("--policy", required=True, choices=["uniform", "skewed"])
    sweep.add_argument("--k-min", required=True, type=int, dest="k_min")
    sweep.add_argument("--k-max", required=True, type=int, dest="k_max")
    sweep.add_argument("--seeds", required=True,
                       help="comma-separated 64-bit seeds, one instance each")
    sweep.add_argument("--methods", default="optimal,greedy",
                       help="comma-separated subset of optimal,greedy,brute")
    sweep.add_argument("--out", default=None)
    sweep.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
