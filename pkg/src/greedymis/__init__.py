"""Parallel randomized greedy MIS: algorithms, dependency analysis and experiments."""

from .applications import (
    Clustering,
    Coloring,
    Matching,
    SignedCompleteGraph,
    brute_force_cc_opt,
    cc_cost,
    cc_pivot,
    greedy_coloring,
    greedy_maximal_matching,
)
from .dependency import (
    DependencyDag,
    build_dependency_dag,
    check_round_bound,
    dependency_length,
    longest_increasing_path,
    max_suffix_degree,
)
from .experiments import ExperimentConfig, TrialRecord, fit_log_scaling, lower_bound_experiment, run_trials
from .generators import coloring_reduction_graph, gen_gnp, gen_lower_bound_graph, line_graph
from .graph import Graph, GraphError, build_graph
from .mis import MisRun, luby, parallel_greedy, sequential_greedy, slowed_parallel_greedy, verify_mis
from .permutation import Permutation, random_permutation
from .rng import RngStream

__version__ = "0.1.0"
