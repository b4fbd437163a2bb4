"""Seeded random graphs, standard families and per-trial seed derivation.

Random streams use NumPy's PCG64 bit generator seeded directly with the
64-bit seed.  ``gnp`` draws one uniform double per unordered pair, in
lexicographic order ``(0,1), (0,2), ..., (n-2, n-1)``, and keeps the pair iff
the draw is below ``p``.  Changing either the generator or the draw order is a
breaking change for every stored seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NTooSmall
from .graph import Graph, _from_canonical_pairs, build_graph

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# Uniform draws generated per block when sampling G(n, p).
_GNP_BLOCK = 1 << 22


def splitmix64_mix(z: int) -> int:
    """The SplitMix64 output finaliser (a bijection on 64-bit words)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def derive_trial_seed(master: int, trial_index: int) -> int:
    """Seed for trial ``trial_index`` of an experiment seeded with ``master``.

    This is the ``trial_index + 1``-th output of a SplitMix64 generator whose
    state starts at ``master``: ``mix(master + (trial_index + 1) * GAMMA)``.
    For a fixed master, distinct indices give distinct seeds (up to 2**64).
    """
    if trial_index < 0:
        raise ValueError("trial_index must be non-negative")
    return splitmix64_mix((master & MASK64) + (trial_index + 1) * GOLDEN_GAMMA)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed & MASK64))


@dataclass(frozen=True)
class GnpParams:
    n: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if self.n < 2:
            raise NTooSmall(self.n)
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")


def gnp(n: int, p: float, seed: int = 0) -> Graph:
    """Sample G(n, p) from the seeded pair-by-pair Bernoulli stream."""
    params = GnpParams(n, p, seed)
    return sample_gnp(params)


def sample_gnp(params: GnpParams) -> Graph:
    n, p = params.n, params.p
    rng = make_rng(params.seed)
    us, vs = [], []
    u = 0
    while u < n - 1:
        # rows u..stop-1 hold (n-1-u) + ... pairs; take rows until the block fills
        stop = u + 1
        count = n - 1 - u
        while stop < n - 1 and count + (n - 1 - stop) <= _GNP_BLOCK:
            count += n - 1 - stop
            stop += 1
        draws = rng.random(count)
        hits = np.flatnonzero(draws < p)
        if hits.size:
            rows = np.arange(u, stop, dtype=np.int64)
            row_start = np.concatenate([[0], np.cumsum(n - 1 - rows)[:-1]])
            r = np.searchsorted(row_start, hits, side="right") - 1
            src = rows[r]
            us.append(src)
            vs.append(src + 1 + (hits - row_start[r]))
        u = stop
    if us:
        return _from_canonical_pairs(n, np.concatenate(us), np.concatenate(vs))
    return _from_canonical_pairs(n, np.empty(0, np.int64), np.empty(0, np.int64))


def path(n: int) -> Graph:
    if n < 2:
        raise NTooSmall(n)
    return build_graph(n, [(v, v + 1) for v in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise NTooSmall(n, 3)
    return build_graph(n, [(v, (v + 1) % n) for v in range(n)])


def complete(n: int) -> Graph:
    if n < 2:
        raise NTooSmall(n)
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)


def relabel(g: Graph, perm) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    e = g.edges()
    return build_graph(g.n, perm[e] if e.size else e)
