"""``mis`` command line.

Exit codes: 0 success, 2 input error, 3 invariant violation during a run.
"""

from __future__ import annotations

import argparse
import json
import sys

from .applications import (
    brute_force_cc_opt,
    cc_cost,
    cc_pivot,
    greedy_coloring,
    greedy_maximal_matching,
    read_signed,
)
from .dependency import build_dependency_dag, dependency_length
from .experiments import (
    ExperimentConfig,
    lower_bound_layout,
    lower_bound_rounds,
    lower_bound_threshold,
    records_to_csv,
    run_trials,
)
from .graph import GraphError, read_edge_list
from .mis import (
    InvariantViolation,
    luby,
    parallel_greedy,
    sequential_greedy,
    slowed_parallel_greedy,
    verify_mis,
)
from .permutation import random_permutation
from .rng import RngStream

EXIT_INPUT = 2
EXIT_INVARIANT = 3

# stream indices used by single-instance commands
PERM_STREAM = 0
ALGO_STREAM = 1


def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _perm_for(n: int, seed: int):
    return random_permutation(n, RngStream(seed, PERM_STREAM))


def cmd_run(args) -> int:
    g = read_edge_list(args.input)
    if args.algo == "luby":
        run = luby(g, RngStream(args.seed, ALGO_STREAM))
    else:
        algo = {"parallel": parallel_greedy, "sequential": sequential_greedy, "slowed": slowed_parallel_greedy}
        run = algo[args.algo](g, _perm_for(g.n, args.seed))
    if not verify_mis(g, run.in_mis):
        raise InvariantViolation("output is not a maximal independent set")
    print(run.to_json())
    return 0


def cmd_bench(args) -> int:
    cfg = ExperimentConfig(
        workload=args.workload,
        n_values=tuple(args.n) if args.n else (),
        p_or_param=args.p_times_n,
        trials=args.trials,
        master_seed=args.seed,
        beta=args.beta,
        algorithms=tuple(args.algorithms.split(",")),
        input_path=args.input,
        dep_max_n=args.dep_max_n,
        timing=args.timing,
        workers=args.workers,
    )
    text = records_to_csv(run_trials(cfg))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_lowerbound(args) -> int:
    l, c = lower_bound_layout(args.n)
    need = lower_bound_threshold(args.n)
    rounds = lower_bound_rounds(args.n, args.trials, args.seed)
    hits = sum(r >= need for r in rounds)
    print(json.dumps({
        "n": args.n, "layers": l + 1, "components": c, "threshold": need,
        "trials": args.trials, "fraction": hits / args.trials, "rounds": rounds,
    }))
    return 0


def cmd_depgraph(args) -> int:
    g = read_edge_list(args.input)
    perm = _perm_for(g.n, args.seed)
    dag = build_dependency_dag(g, perm)
    with open(args.dot, "w", encoding="utf-8") as fh:
        fh.write(dag.to_dot())
    print(json.dumps({"n": g.n, "arcs": len(dag.src), "dependency_length": dependency_length(dag)}))
    return 0


def cmd_cluster(args) -> int:
    s = read_signed(args.signed)
    c = cc_pivot(s, _perm_for(s.n, args.seed))
    out = c.to_dict(cc_cost(s, c))
    if args.oracle:
        out["opt"] = brute_force_cc_opt(s)
    print(json.dumps(out))
    return 0


def cmd_match(args) -> int:
    g = read_edge_list(args.input)
    m, rounds = greedy_maximal_matching(g, RngStream(args.seed, ALGO_STREAM))
    if not m.is_valid(g):
        raise InvariantViolation("output is not a maximal matching")
    lines = [f"{g.n} {len(m.edges)}"] + [f"{u} {v}" for u, v in m.edges.tolist()]
    sys.stdout.write("\n".join(lines) + "\n")
    print(f"# rounds {rounds}", file=sys.stderr)
    return 0


def cmd_color(args) -> int:
    g = read_edge_list(args.input)
    delta = g.max_degree if args.delta is None else args.delta
    col, rounds = greedy_coloring(g, delta, RngStream(args.seed, ALGO_STREAM))
    if not col.is_proper(g, delta + 1):
        raise InvariantViolation("output is not a proper coloring")
    lines = [str(g.n)] + [f"{v} {c}" for v, c in enumerate(col.color.tolist())]
    sys.stdout.write("\n".join(lines) + "\n")
    print(f"# rounds {rounds}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mis", description="Parallel randomized greedy MIS toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="run one MIS algorithm on an edge-list file")
    r.add_argument("--input", required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--algo", choices=["parallel", "sequential", "slowed", "luby"], default="parallel")
    r.set_defaults(func=cmd_run)

    b = sub.add_parser("bench", help="seeded round-complexity sweep to CSV")
    b.add_argument("--workload", choices=["gnp", "lower_bound", "file"], default="gnp")
    b.add_argument("--n", type=_int_list)
    b.add_argument("--p-times-n", type=float, default=8.0)
    b.add_argument("--trials", type=int, default=30)
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--beta", type=float, default=0.005)
    b.add_argument("--algorithms", default="parallel,luby")
    b.add_argument("--input")
    b.add_argument("--dep-max-n", type=int, default=2**18)
    b.add_argument("--timing", action="store_true", help="fill wall_ms (output is then not reproducible)")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bench)

    lb = sub.add_parser("lowerbound", help="layered-clique lower-bound experiment")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--trials", type=int, required=True)
    lb.add_argument("--seed", type=int, required=True)
    lb.set_defaults(func=cmd_lowerbound)

    d = sub.add_parser("depgraph", help="export the dependency DAG as DOT")
    d.add_argument("--input", required=True)
    d.add_argument("--seed", type=int, required=True)
    d.add_argument("--dot", required=True)
    d.set_defaults(func=cmd_depgraph)

    c = sub.add_parser("cluster", help="CC-Pivot correlation clustering")
    c.add_argument("--signed", required=True)
    c.add_argument("--seed", type=int, required=True)
    c.add_argument("--oracle", action="store_true")
    c.set_defaults(func=cmd_cluster)

    m = sub.add_parser("match", help="randomized greedy maximal matching")
    m.add_argument("--input", required=True)
    m.add_argument("--seed", type=int, required=True)
    m.set_defaults(func=cmd_match)

    k = sub.add_parser("color", help="randomized greedy (delta+1)-coloring")
    k.add_argument("--input", required=True)
    k.add_argument("--delta", type=int)
    k.add_argument("--seed", type=int, required=True)
    k.set_defaults(func=cmd_color)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GraphError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
