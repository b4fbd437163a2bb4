"""Landmark distance vectors, resolving-set checks and the pair-cover view.

A set ``R`` resolves ``G`` iff for every unordered pair ``{x, y}`` some
landmark ``v`` in ``R`` has ``dist(v, x) != dist(v, y)``.  ``build_pair_cover``
turns that into a set-cover instance: the universe is the ``C(n, 2)`` pairs in
lexicographic order and vertex ``v`` owns the mask of pairs it distinguishes.
Masks are Python ints used as packed bitsets (bit ``k`` = pair ``k``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import EmptyLandmarkSet, TooLargeForOracle, VertexOutOfRange
from .graph import Graph, bfs_distances, connected_distances

DEFAULT_PAIR_COVER_MAX_N = 512


def _landmarks(R: Iterable[int], n: int) -> tuple[int, ...]:
    out = tuple(sorted(set(int(v) for v in R)))
    for v in out:
        if not 0 <= v < n:
            raise VertexOutOfRange(v, n)
    return out


@dataclass(frozen=True)
class LandmarkVector:
    landmarks: tuple[int, ...]
    coords: tuple[int, ...]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a resolving-set check; truthy iff the set resolves."""

    resolving: bool
    witness: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.resolving


def distance_vector(g: Graph, R: Iterable[int], v: int) -> LandmarkVector:
    R = _landmarks(R, g.n)
    if not R:
        raise EmptyLandmarkSet("landmark set is empty")
    if not 0 <= v < g.n:
        raise VertexOutOfRange(v, g.n)
    dist = connected_distances(g)
    return LandmarkVector(R, tuple(int(dist[v, r]) for r in R))


def check_resolving(dist: np.ndarray, R: Sequence[int]) -> Verdict:
    """Resolving check against a precomputed connected distance matrix."""
    n = dist.shape[0]
    if len(R) == 0:
        # every vertex has the empty vector
        return Verdict(n < 2, None if n < 2 else (0, 1))
    rows = np.ascontiguousarray(dist[:, list(R)])
    _, inverse, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
    if counts.size == n:
        return Verdict(True)
    inverse = inverse.reshape(-1)
    dup = counts[inverse] > 1
    x = int(np.flatnonzero(dup)[0])
    same = np.flatnonzero(inverse == inverse[x])
    return Verdict(False, (x, int(same[1])))


def is_resolving(g: Graph, R: Iterable[int]) -> Verdict:
    """Check ``R``; on failure the witness is the lexicographically first
    pair ``(x, y)``, ``x < y``, with identical landmark vectors."""
    R = _landmarks(R, g.n)
    return check_resolving(connected_distances(g), R)


def pair_index(n: int, x: int, y: int) -> int:
    if x > y:
        x, y = y, x
    return x * (2 * n - x - 1) // 2 + (y - x - 1)


@dataclass(frozen=True, eq=False)
class PairCoverInstance:
    n: int
    dist: np.ndarray = field(repr=False)
    masks: tuple[int, ...] = field(repr=False)

    @property
    def n_pairs(self) -> int:
        return self.n * (self.n - 1) // 2

    @property
    def full(self) -> int:
        return (1 << self.n_pairs) - 1

    @cached_property
    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in range(x + 1, self.n)]

    def pair_index(self, x: int, y: int) -> int:
        return pair_index(self.n, x, y)

    def mask_pairs(self, v: int) -> list[tuple[int, int]]:
        m = self.masks[v]
        return [p for k, p in enumerate(self.pairs) if m >> k & 1]

    def covers(self, R: Iterable[int]) -> bool:
        acc = 0
        for v in R:
            acc |= self.masks[v]
        return acc == self.full

    @cached_property
    def coverers(self) -> tuple[int, ...]:
        """For each pair, the bitset of vertices distinguishing it."""
        xs, ys = np.triu_indices(self.n, 1)
        hit = self.dist[:, xs] != self.dist[:, ys]  # (n, n_pairs)
        packed = np.packbits(hit.T, axis=1, bitorder="little")
        return tuple(int.from_bytes(row.tobytes(), "little") for row in packed)


def build_pair_cover(g: Graph, max_n: int = DEFAULT_PAIR_COVER_MAX_N) -> PairCoverInstance:
    if g.n > max_n:
        raise TooLargeForOracle(f"pair cover needs C(n,2)*n bits; n={g.n} exceeds cap {max_n}")
    dist = connected_distances(g)
    return pair_cover_from_distances(dist)


def pair_cover_from_distances(dist: np.ndarray) -> PairCoverInstance:
    n = dist.shape[0]
    xs, ys = np.triu_indices(n, 1)
    masks = []
    for v in range(n):
        row = dist[v]
        bits = np.packbits(row[xs] != row[ys], bitorder="little")
        masks.append(int.from_bytes(bits.tobytes(), "little"))
    return PairCoverInstance(n, dist, tuple(masks))


def distinguishes(g: Graph | PairCoverInstance, v: int, pair: tuple[int, int]) -> bool:
    x, y = pair
    n = g.n
    for u in (v, x, y):
        if not 0 <= u < n:
            raise VertexOutOfRange(u, n)
    if x == y:
        return False
    if isinstance(g, PairCoverInstance):
        return bool(g.masks[v] >> g.pair_index(x, y) & 1)
    row = bfs_distances(g, v)
    return bool(row[x] != row[y])
