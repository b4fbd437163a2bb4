"""Metric dimension of graphs: resolving sets, exact and heuristic solvers,
and seeded G(n, p) experiments."""

from .errors import Disconnected, MetridimError, NotFound
from .generators import complete, cycle, derive_trial_seed, gnp, path
from .graph import Graph, all_pairs_distances, bfs_distances, build_graph, diameter, is_connected
from .resolver import build_pair_cover, distance_vector, distinguishes, is_resolving
from .solvers import (SolveResult, estimate_resolve_probability, exact_beta, exhaustive_beta,
                      greedy_resolving, random_resolving, topdeg_resolving)
from .theory import compute_regime, predict_beta, predict_diameter

__version__ = "0.1.0"
