"""Immutable simple undirected graphs and hop-distance machinery.

Graphs are stored in CSR form (``indptr``/``indices``) with every neighbour
list sorted ascending, so iteration order is deterministic.  Distances are
``int32`` hop counts; vertices that cannot be reached carry ``UNREACHABLE``.
"""

from __future__ import annotations

import io
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import Disconnected, NTooSmall, SelfLoop, VertexOutOfRange

UNREACHABLE = np.iinfo(np.int32).max

# Above this many vertices the dense level-synchronous all-pairs BFS would need
# too much memory; fall back to one sparse BFS per source.
DENSE_APSP_MAX_N = 4096


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    indptr: np.ndarray
    indices: np.ndarray
    _degrees: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.indptr.flags.writeable = False
        self.indices.flags.writeable = False
        deg = np.diff(self.indptr)
        deg.flags.writeable = False
        object.__setattr__(self, "_degrees", deg)

    @property
    def m(self) -> int:
        return int(self.indices.shape[0]) // 2

    @property
    def degrees(self) -> np.ndarray:
        return self._degrees

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    @property
    def adjacency(self) -> list[tuple[int, ...]]:
        """Sorted neighbour tuples, one per vertex."""
        return [tuple(int(u) for u in self.neighbors(v)) for v in range(self.n)]

    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self._degrees)
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep].astype(np.int64)], axis=1)

    def edge_list(self) -> list[tuple[int, int]]:
        return [(int(u), int(v)) for u, v in self.edges()]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n and np.array_equal(self.indptr, other.indptr)
                and np.array_equal(self.indices, other.indices))

    def __hash__(self) -> int:
        return hash((self.n, self.indices.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def _from_canonical_pairs(n: int, us: np.ndarray, vs: np.ndarray) -> Graph:
    """Build from unique pairs with ``us < vs`` (no validation)."""
    src = np.concatenate([us, vs]).astype(np.int64)
    dst = np.concatenate([vs, us]).astype(np.int64)
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=n), out=indptr[1:])
    return Graph(n, indptr, dst.astype(np.int32))


def build_graph(n: int, edges: Iterable[Sequence[int]] | np.ndarray) -> Graph:
    """Build a graph on ``0..n-1``, collapsing duplicate edges.

    >>> build_graph(3, [(0, 1), (1, 0), (1, 2)]).m
    2
    """
    if n < 2:
        raise NTooSmall(n)
    arr = np.asarray(list(edges) if not isinstance(edges, np.ndarray) else edges, dtype=np.int64)
    if arr.size == 0:
        arr = arr.reshape(0, 2)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("edges must be pairs")
    bad = (arr < 0) | (arr >= n)
    if bad.any():
        raise VertexOutOfRange(int(arr[bad][0]), n)
    loops = arr[:, 0] == arr[:, 1]
    if loops.any():
        raise SelfLoop(int(arr[loops][0, 0]))
    lo = np.minimum(arr[:, 0], arr[:, 1])
    hi = np.maximum(arr[:, 0], arr[:, 1])
    keys = np.unique(lo * n + hi)
    return _from_canonical_pairs(n, keys // n, keys % n)


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise VertexOutOfRange(v, g.n)


def _expand(g: Graph, frontier: np.ndarray) -> np.ndarray:
    """All neighbours (with repeats) of the vertices in ``frontier``."""
    starts = g.indptr[frontier]
    lens = g.indptr[frontier + 1] - starts
    total = int(lens.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    offsets = np.repeat(starts - np.cumsum(lens) + lens, lens)
    return g.indices[offsets + np.arange(total)]


def bfs_distances(g: Graph, source: int, max_depth: int | None = None) -> np.ndarray:
    """Hop distances from ``source``; unreached vertices hold ``UNREACHABLE``.

    With ``max_depth`` the search stops after that many layers.
    """
    return multi_source_distances(g, [source], max_depth)


def multi_source_distances(g: Graph, sources, max_depth: int | None = None) -> np.ndarray:
    """Distance from each vertex to the nearest of ``sources``."""
    frontier = np.unique(np.asarray(sources, dtype=np.int64))
    for v in frontier:
        _check_vertex(g, int(v))
    dist = np.full(g.n, UNREACHABLE, dtype=np.int32)
    dist[frontier] = 0
    depth = 0
    while frontier.size and (max_depth is None or depth < max_depth):
        depth += 1
        nb = _expand(g, frontier)
        nb = np.unique(nb[dist[nb] == UNREACHABLE])
        dist[nb] = depth
        frontier = nb
    return dist


def dense_adjacency(g: Graph, dtype=np.float32) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=dtype)
    e = g.edges()
    a[e[:, 0], e[:, 1]] = 1
    a[e[:, 1], e[:, 0]] = 1
    return a


def all_pairs_distances(g: Graph) -> np.ndarray:
    """``n x n`` matrix of hop distances; row ``v`` equals ``bfs_distances(g, v)``.

    Runs a BFS from every source simultaneously, one matrix product per layer.
    """
    n = g.n
    if n > DENSE_APSP_MAX_N:
        return np.stack([bfs_distances(g, v) for v in range(n)])
    a = dense_adjacency(g)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int32)
    np.fill_diagonal(dist, 0)
    reached = np.eye(n, dtype=bool)
    frontier = np.eye(n, dtype=np.float32)
    depth = 0
    while True:
        depth += 1
        new = (frontier @ a > 0) & ~reached
        if not new.any():
            break
        dist[new] = depth
        reached |= new
        frontier = new.astype(np.float32)
    return dist


def is_connected(g: Graph) -> bool:
    return bool((bfs_distances(g, 0) != UNREACHABLE).all())


def require_connected(g: Graph) -> None:
    if not is_connected(g):
        raise Disconnected()


def connected_distances(g: Graph) -> np.ndarray:
    """All-pairs distances, raising ``Disconnected`` instead of returning sentinels."""
    dist = all_pairs_distances(g)
    if (dist == UNREACHABLE).any():
        raise Disconnected()
    return dist


def diameter(g: Graph) -> int:
    return int(connected_distances(g).max())


# --- edge-list text format -------------------------------------------------
#
#   n <count>
#   # comment
#   u v
#   ...

def format_edge_list(g: Graph) -> str:
    out = io.StringIO()
    out.write(f"n {g.n}\n")
    for u, v in g.edges():
        out.write(f"{u} {v}\n")
    return out.getvalue()


def parse_edge_list(text: str) -> Graph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected header 'n <count>'")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v', got {line!r}")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing header 'n <count>'")
    return build_graph(n, edges)


def read_edge_list(path: str | os.PathLike) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g))
