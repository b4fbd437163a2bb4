"""Exact, approximate and randomized metric-dimension solvers.

``exhaustive_beta`` is the brute-force oracle: it checks landmark vectors
directly and never touches the pair-cover masks, so it stays independent of
``exact_beta``, which runs branch-and-bound over the pair-cover instance.
"""

from __future__ import annotations

import math
import time
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import BudgetExhausted, NotFound, TooLargeForOracle, WOutOfRange
from .generators import derive_trial_seed, make_rng
from .graph import Graph, connected_distances
from .resolver import (DEFAULT_PAIR_COVER_MAX_N, PairCoverInstance, build_pair_cover,
                       check_resolving)

DEFAULT_ORACLE_MAX_N = 12


@dataclass(frozen=True)
class SolveResult:
    algorithm: str
    beta_estimate: int
    witness: tuple[int, ...]
    certified: bool
    nodes_explored: int
    elapsed: float  # seconds

    def to_dict(self) -> dict:
        d = asdict(self)
        d["witness"] = list(self.witness)
        return d


def _finish(algorithm: str, dist: np.ndarray, chosen: Iterable[int], certified: bool,
            nodes: int, t0: float) -> SolveResult:
    witness = tuple(sorted(int(v) for v in chosen))
    if not check_resolving(dist, witness):
        raise RuntimeError(f"{algorithm} produced a non-resolving set {witness}")
    return SolveResult(algorithm, len(witness), witness, certified, nodes,
                       time.perf_counter() - t0)


def exhaustive_beta(g: Graph, max_n: int = DEFAULT_ORACLE_MAX_N) -> SolveResult:
    """Smallest resolving set by enumerating subsets in order of size."""
    if g.n > max_n:
        raise TooLargeForOracle(f"exhaustive search capped at n={max_n}, got {g.n}")
    t0 = time.perf_counter()
    dist = connected_distances(g)
    columns = dist.T.tolist()
    n = g.n
    nodes = 0
    for k in range(1, n):
        for R in combinations(range(n), k):
            nodes += 1
            seen = set(zip(*(columns[r] for r in R)))
            if len(seen) == n:
                return _finish("exhaustive", dist, R, True, nodes, t0)
    raise AssertionError("V minus a vertex always resolves")  # pragma: no cover


def _iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _greedy_cover(inst: PairCoverInstance) -> list[int]:
    uncovered = inst.full
    chosen: list[int] = []
    masks = inst.masks
    while uncovered:
        best_v, best_gain = -1, 0
        for v, m in enumerate(masks):
            gain = (m & uncovered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen.append(best_v)
        uncovered &= ~masks[best_v]
    return chosen


def greedy_resolving(g: Graph, max_n: int = DEFAULT_PAIR_COVER_MAX_N) -> SolveResult:
    """Greedy set cover over vertex pairs; ties go to the smallest vertex id."""
    t0 = time.perf_counter()
    inst = build_pair_cover(g, max_n)
    chosen = _greedy_cover(inst)
    return _finish("greedy", inst.dist, chosen, False, len(chosen), t0)


class _Stop(Exception):
    pass


def exact_beta(g: Graph, node_cap: int | None = None, time_cap_ms: float | None = None,
               strict: bool = False, max_n: int = DEFAULT_PAIR_COVER_MAX_N) -> SolveResult:
    """Minimum resolving set by branch-and-bound over the pair cover.

    Starts from the greedy cover, always branches on the uncovered pair with
    the fewest eligible distinguishing vertices, and prunes with
    ``ceil(uncovered / best single gain)``.  If a cap is hit the best set so
    far is returned with ``certified=False`` (or ``BudgetExhausted`` is raised
    when ``strict``).
    """
    t0 = time.perf_counter()
    inst = build_pair_cover(g, max_n)
    masks = inst.masks
    coverers = inst.coverers
    n = inst.n
    best = _greedy_cover(inst)
    nodes = 0
    deadline = None if time_cap_ms is None else t0 + time_cap_ms / 1000.0

    def search(chosen: list[int], uncovered: int, allowed: int) -> None:
        nonlocal best, nodes
        nodes += 1
        if node_cap is not None and nodes > node_cap:
            raise _Stop
        if deadline is not None and (nodes & 255) == 0 and time.perf_counter() > deadline:
            raise _Stop
        if not uncovered:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        depth = len(chosen)
        if depth + 1 >= len(best):
            return
        gains = {}
        max_gain = 0
        for v in _iter_bits(allowed):
            gain = (masks[v] & uncovered).bit_count()
            if gain:
                gains[v] = gain
                if gain > max_gain:
                    max_gain = gain
        if not max_gain:
            return
        if depth + -(-uncovered.bit_count() // max_gain) >= len(best):
            return
        pivot_cover, pivot_count = 0, n + 1
        for k in _iter_bits(uncovered):
            c = coverers[k] & allowed
            cnt = c.bit_count()
            if cnt < pivot_count:
                pivot_cover, pivot_count = c, cnt
                if cnt <= 1:
                    break
        if pivot_count == 0:
            return
        order = sorted(_iter_bits(pivot_cover), key=lambda v: (-gains[v], v))
        for v in order:
            chosen.append(v)
            search(chosen, uncovered & ~masks[v], allowed & ~(1 << v))
            chosen.pop()
            # later branches must avoid v: those covers were explored already
            allowed &= ~(1 << v)

    try:
        search([], inst.full, (1 << n) - 1)
        certified = True
    except _Stop:
        certified = False
    result = _finish("exact", inst.dist, best, certified, nodes, t0)
    if strict and not certified:
        raise BudgetExhausted(result)
    return result


def _check_size(w: int, n: int, name: str = "w") -> None:
    if not 1 <= w <= n - 1:
        raise WOutOfRange(f"{name}={w} must lie in 1..{n - 1}")


def random_resolving(g: Graph, w: int, max_attempts: int = 100, seed: int = 0) -> SolveResult:
    """First uniform ``w``-subset (from the seeded stream) that resolves ``g``.

    Raises ``NotFound`` after ``max_attempts`` failures.
    """
    _check_size(w, g.n)
    t0 = time.perf_counter()
    dist = connected_distances(g)
    rng = make_rng(seed)
    witness = None
    for attempt in range(1, max_attempts + 1):
        R = np.sort(rng.choice(g.n, size=w, replace=False))
        verdict = check_resolving(dist, R)
        if verdict:
            return _finish("random", dist, R, False, attempt, t0)
        witness = verdict.witness
    raise NotFound(f"no resolving {w}-subset in {max_attempts} attempts",
                   attempts=max_attempts, witness=witness)


def top_degree_vertices(g: Graph, k: int) -> tuple[int, ...]:
    order = np.lexsort((np.arange(g.n), -g.degrees))
    return tuple(sorted(int(v) for v in order[:k]))


def topdeg_resolving(g: Graph, k: int) -> SolveResult:
    """The ``k`` highest-degree vertices (ties to smaller ids), if they resolve."""
    _check_size(k, g.n, "k")
    t0 = time.perf_counter()
    dist = connected_distances(g)
    R = top_degree_vertices(g, k)
    verdict = check_resolving(dist, R)
    if not verdict:
        raise NotFound(f"top-{k} degree set does not resolve", attempts=1,
                       witness=verdict.witness, candidate=R)
    return _finish("topdeg", dist, R, False, 1, t0)


def estimate_resolve_probability(g: Graph, w: int, trials: int, seed: int = 0) -> float:
    """Fraction of ``trials`` uniform ``w``-subsets that resolve ``g``.

    Trial ``t`` draws its subset from ``derive_trial_seed(seed, t)``.
    """
    _check_size(w, g.n)
    if trials < 1:
        raise ValueError("trials must be positive")
    dist = connected_distances(g)
    hits = 0
    for t in range(trials):
        rng = make_rng(derive_trial_seed(seed, t))
        R = np.sort(rng.choice(g.n, size=w, replace=False))
        hits += bool(check_resolving(dist, R))
    return hits / trials


def greedy_bound_factor(n: int) -> float:
    """Set-cover guarantee ``H(|U|) <= ln C(n, 2) + 1`` for the greedy cover."""
    return math.log(n * (n - 1) / 2) + 1
