"""Seeded batch experiments, scaling fits and the lower-bound measurement."""

from __future__ import annotations

import csv
import io
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .applications import greedy_coloring, greedy_maximal_matching
from .dependency import (
    build_dependency_dag,
    dependency_length,
    longest_increasing_path,
    max_suffix_degree,
)
from .generators import gen_gnp, gen_lower_bound_graph, lower_bound_layers, lower_bound_layout
from .graph import Graph, read_edge_list
from .mis import InvariantViolation, luby, parallel_greedy, sequential_greedy, slowed_parallel_greedy
from .permutation import random_permutation
from .rng import RngStream, derive_index

WORKLOADS = ("gnp", "lower_bound", "file")
ALGORITHMS = ("parallel", "slowed", "luby", "matching", "coloring")
CSV_COLUMNS = ("n", "m", "trial", "algorithm", "rounds", "mis_size", "dep_len", "inc_path", "suffix_deg", "wall_ms")

# child stream tags under each trial stream
GRAPH_STREAM, PERM_STREAM, LUBY_STREAM, MATCH_STREAM, COLOR_STREAM = 1, 2, 3, 4, 5


@dataclass(frozen=True)
class ExperimentConfig:
    """One sweep.  For ``gnp`` the parameter is the expected degree scale ``p * n``."""

    workload: str = "gnp"
    n_values: tuple[int, ...] = (1024,)
    p_or_param: float = 8.0
    trials: int = 1
    master_seed: int = 0
    beta: float = 0.005
    algorithms: tuple[str, ...] = ("parallel",)
    input_path: str | None = None
    dep_max_n: int = 2**18
    timing: bool = False
    workers: int = 1

    def __post_init__(self):
        if self.workload not in WORKLOADS:
            raise ValueError(f"unknown workload {self.workload!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.workload != "file":
            if not self.n_values:
                raise ValueError("n_values must be non-empty")
            if list(self.n_values) != sorted(self.n_values):
                raise ValueError("n_values must be ascending")
        elif not self.input_path:
            raise ValueError("file workload needs input_path")
        bad = set(self.algorithms) - set(ALGORITHMS)
        if bad or not self.algorithms:
            raise ValueError(f"unknown algorithms {sorted(bad)}")
        if not 0.0 < self.beta < 1.0:
            raise ValueError("beta must lie in (0, 1)")


@dataclass(frozen=True)
class TrialRecord:
    n: int
    m: int
    trial: int
    algorithm: str
    rounds: int
    mis_size: int
    dep_len: int | None = None
    inc_path: int | None = None
    suffix_deg: int | None = None
    wall_ms: float | None = field(default=None, compare=False)

    def row(self) -> list[str]:
        out = []
        for k in CSV_COLUMNS:
            v = getattr(self, k)
            if v is None:
                out.append("")
            elif isinstance(v, float):
                out.append(f"{v:.3f}")
            else:
                out.append(str(v))
        return out


def trial_stream(master_seed: int, n: int, trial: int) -> RngStream:
    """Per-trial stream keyed only on ``(master_seed, n, trial)``."""
    return RngStream(master_seed, derive_index(n, trial))


def workload_graph(cfg: ExperimentConfig, n: int, rng: RngStream) -> Graph:
    if cfg.workload == "gnp":
        return gen_gnp(n, min(1.0, cfg.p_or_param / n) if n else 0.0, rng.spawn(GRAPH_STREAM))
    if cfg.workload == "lower_bound":
        return gen_lower_bound_graph(n)
    return read_edge_list(cfg.input_path)


def _one_trial(cfg: ExperimentConfig, n: int, trial: int) -> list[TrialRecord]:
    rng = trial_stream(cfg.master_seed, n, trial)
    g = workload_graph(cfg, n, rng)
    perm = random_permutation(g.n, rng.spawn(PERM_STREAM))
    clock = time.perf_counter
    records = []

    def record(algorithm, t0, **kw):
        ms = (clock() - t0) * 1000.0 if cfg.timing else None
        records.append(TrialRecord(g.n, g.m, trial, algorithm, wall_ms=ms, **kw))

    for algo in cfg.algorithms:
        t0 = clock()
        if algo == "parallel":
            run = parallel_greedy(g, perm)
            seq = sequential_greedy(g, perm)
            dep = None
            if g.n <= cfg.dep_max_n:
                dep = dependency_length(build_dependency_dag(g, perm, seq))
            inc = longest_increasing_path(g, perm)
            sfx = max_suffix_degree(g, perm, cfg.beta, seq)
            if dep is not None and 2 * run.num_rounds > dep + 1:
                raise InvariantViolation(f"n={g.n} trial={trial}: {run.num_rounds} rounds > ({dep}+1)/2")
            if run.num_rounds > inc:
                raise InvariantViolation(f"n={g.n} trial={trial}: {run.num_rounds} rounds > increasing path {inc}")
            record(algo, t0, rounds=run.num_rounds, mis_size=int(run.in_mis.sum()),
                   dep_len=dep, inc_path=inc, suffix_deg=sfx)
        elif algo == "slowed":
            run = slowed_parallel_greedy(g, perm)
            record(algo, t0, rounds=run.num_rounds, mis_size=int(run.in_mis.sum()))
        elif algo == "luby":
            run = luby(g, rng.spawn(LUBY_STREAM))
            record(algo, t0, rounds=run.num_rounds, mis_size=int(run.in_mis.sum()))
        elif algo == "matching":
            match, rounds = greedy_maximal_matching(g, rng.spawn(MATCH_STREAM))
            record(algo, t0, rounds=rounds, mis_size=len(match.edges))
        elif algo == "coloring":
            _, rounds = greedy_coloring(g, g.max_degree, rng.spawn(COLOR_STREAM))
            record(algo, t0, rounds=rounds, mis_size=g.n)
    return records


def _task(args):
    return _one_trial(*args)


def run_trials(cfg: ExperimentConfig) -> list[TrialRecord]:
    """All records of a sweep, sorted by ``(n, trial, algorithm)``."""
    if cfg.workload == "file":
        if not Path(cfg.input_path).is_file():
            raise FileNotFoundError(f"cannot read {cfg.input_path}")
        n_values = (read_edge_list(cfg.input_path).n,)
    else:
        n_values = cfg.n_values
    tasks = [(cfg, n, t) for n in n_values for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            chunks = list(pool.map(_task, tasks))
    else:
        chunks = [_task(t) for t in tasks]
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.n, r.trial, r.algorithm))
    return records


def records_to_csv(records: list[TrialRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow(r.row())
    return buf.getvalue()


def records_from_csv(text: str) -> list[TrialRecord]:
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        kw = {}
        for k in CSV_COLUMNS:
            v = row[k]
            if k == "algorithm":
                kw[k] = v
            elif v == "":
                kw[k] = None
            else:
                kw[k] = float(v) if k == "wall_ms" else int(v)
        out.append(TrialRecord(**kw))
    return out


def median_rounds(records: list[TrialRecord], algorithm: str = "parallel") -> dict[int, float]:
    by_n: dict[int, list[int]] = {}
    for r in records:
        if r.algorithm == algorithm:
            by_n.setdefault(r.n, []).append(r.rounds)
    return {n: float(np.median(v)) for n, v in sorted(by_n.items())}


def fit_log_scaling(records: list[TrialRecord], algorithm: str = "parallel") -> tuple[float, float, float]:
    """Least squares of the per-n median rounds against ``log2 n``: ``(slope, intercept, r2)``.

    With zero spread in the medians, ``r2`` is 1 when the fit is exact.
    """
    med = median_rounds(records, algorithm)
    if len(med) < 3:
        raise ValueError(f"need at least 3 distinct n values, got {len(med)}")
    x = np.log2(np.array(list(med), dtype=np.float64))
    y = np.array(list(med.values()))
    slope, intercept = np.polyfit(x, y, 1)
    ss_res = float(np.sum((y - (slope * x + intercept)) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        r2 = 1.0 if ss_res < 1e-18 else 0.0
    else:
        r2 = 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def lower_bound_threshold(n: int) -> int:
    l, _ = lower_bound_layout(n)
    return math.ceil((l + 1) / 2)


def lower_bound_rounds(n: int, trials: int, master_seed: int) -> list[int]:
    g = gen_lower_bound_graph(n)
    return [
        parallel_greedy(g, random_permutation(n, trial_stream(master_seed, n, t).spawn(PERM_STREAM))).num_rounds
        for t in range(trials)
    ]


def lower_bound_experiment(n: int, trials: int, master_seed: int) -> float:
    """Fraction of trials whose parallel run needs at least ``ceil((l+1)/2)`` rounds."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    need = lower_bound_threshold(n)
    rounds = lower_bound_rounds(n, trials, master_seed)
    return sum(r >= need for r in rounds) / trials


def has_increasing_layer_path(layers: list[np.ndarray], pos: np.ndarray) -> bool:
    """Whether some path top layer -> ... -> layer 0 visits strictly increasing positions.

    Consecutive layers are completely joined, so greedily taking the earliest
    usable position in each layer decides existence.
    """
    last = -1
    for layer in reversed(layers):
        p = pos[layer]
        p = p[p > last]
        if not len(p):
            return False
        last = int(p.min())
    return True


def layer_path_frequency(n: int, trials: int, master_seed: int) -> float:
    """Monte Carlo frequency of an increasing layer path in the first component."""
    layers = lower_bound_layers(n)[0]
    hits = 0
    for t in range(trials):
        perm = random_permutation(n, trial_stream(master_seed, n, t).spawn(PERM_STREAM))
        hits += has_increasing_layer_path(layers, perm.inverse)
    return hits / trials


def config_dict(cfg: ExperimentConfig) -> dict:
    return asdict(cfg)
