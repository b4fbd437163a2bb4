"""Empirical sphere sizes in G(n, p) compared with the ``d**i`` prediction."""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DomainError, RegimeNotSparse, XInR
from .generators import derive_trial_seed, gnp, make_rng
from .graph import (UNREACHABLE, Graph, bfs_distances, is_connected, multi_source_distances,
                    require_connected)
from .theory import chernoff_tolerance

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 200
CSV_COLUMNS = ("trial", "seed", "vertex", "radius", "sphere_size", "predicted", "rel_error")


def _layer_counts(g: Graph, v: int, max_radius: int) -> list[int]:
    dist = bfs_distances(g, v, max_depth=max_radius)
    reached = dist[dist != UNREACHABLE]
    return np.bincount(reached, minlength=max_radius + 1)[: max_radius + 1].tolist()


def sphere_sizes(g: Graph, v: int, max_radius: int) -> list[int]:
    """``|S(v, 0)|, ..., |S(v, max_radius)|`` from BFS layer counts."""
    if max_radius < 0:
        raise DomainError("max_radius must be non-negative")
    require_connected(g)
    return _layer_counts(g, v, max_radius)


def _excluded_size(g: Graph, x: int, R: Iterable[int], i: int) -> int:
    sphere = bfs_distances(g, x, max_depth=i) == i
    ball_R = multi_source_distances(g, list(R), max_depth=i) != UNREACHABLE
    return int(np.count_nonzero(sphere & ~ball_R))


def sphere_excluding_landmarks(g: Graph, x: int, R: Iterable[int], i: int) -> int:
    """``|S(x, i) \\ N(R, i)|``: vertices at distance ``i`` from ``x`` but
    farther than ``i`` from every landmark."""
    R = sorted(set(int(v) for v in R))
    if x in R:
        raise XInR(f"vertex {x} is a landmark")
    require_connected(g)
    if not R:
        return _layer_counts(g, x, i)[i]
    return _excluded_size(g, x, R, i)


@dataclass(frozen=True)
class ExpansionRecord:
    n: int
    p: float
    trial: int
    seed: int
    vertex: int
    radius: int
    sphere_size: int
    predicted: float
    rel_error: float


@dataclass
class ExpansionReport:
    n: int
    p: float
    d: float
    max_radius: int
    tolerance: float
    records: list[ExpansionRecord] = field(default_factory=list)
    # per trial: radius -> max |rel_error| over sampled vertices
    per_trial_max: dict[int, dict[int, float]] = field(default_factory=dict)
    # per trial: radius -> max |rel_error| of |S(x,i) \ N(R,i)| against d**i
    landmark_max: dict[int, dict[int, float]] = field(default_factory=dict)
    skipped: dict[int, str] = field(default_factory=dict)

    def max_rel_error(self) -> dict[int, float]:
        out: dict[int, float] = {}
        for per in self.per_trial_max.values():
            for r, e in per.items():
                out[r] = max(out.get(r, 0.0), e)
        return out

    def trials_within(self, radius: int, tolerance: float | None = None) -> int:
        tol = self.tolerance if tolerance is None else tolerance
        return sum(per[radius] <= tol for per in self.per_trial_max.values())

    def summary(self) -> dict:
        return {
            "n": self.n, "p": self.p, "d": self.d, "tolerance": self.tolerance,
            "trials": len(self.per_trial_max),
            "max_rel_error": self.max_rel_error(),
            "trials_within_tolerance": {r: self.trials_within(r) for r in range(self.max_radius + 1)},
            "landmark_max_rel_error": self.landmark_max,
            "skipped": self.skipped,
        }


def expansion_report(n: int, p: float, max_radius: int, trials: int, seed: int,
                     r_size: int = 0, samples: int = DEFAULT_SAMPLES,
                     tolerance: float | None = None) -> ExpansionReport:
    """Measure sphere sizes around sampled vertices of seeded G(n, p) samples.

    Trial ``t`` uses the graph ``gnp(n, p, derive_trial_seed(seed, t))``.
    ``min(n, samples)`` vertices are drawn per trial; with ``r_size > 0`` a
    random landmark set is drawn as well and the landmark-excluded spheres of
    the remaining sampled vertices are measured.  ``tolerance`` defaults to
    the Chernoff deviation at expectation ``d`` and failure rate ``1e-4``.
    """
    d = p * (n - 1)
    if not 0.0 < p < 1.0 or d > n / math.log(n):
        raise RegimeNotSparse(f"d={d} exceeds n/ln n={n / math.log(n):.1f}")
    if max_radius < 0 or trials < 1:
        raise DomainError("need max_radius >= 0 and trials >= 1")
    r_cap = math.log(n) ** 2 / math.log(math.log(n))
    if r_size < 0 or r_size > r_cap:
        raise DomainError(f"r_size must lie in 0..{r_cap:.1f}")
    if r_size and r_size * d ** max_radius > n / 10:
        log.warning("r*d^radius=%.0f exceeds n/10; landmark balls are not small", r_size * d ** max_radius)
    if tolerance is None:
        tolerance = chernoff_tolerance(d, 1e-4).epsilon

    report = ExpansionReport(n, p, d, max_radius, tolerance)
    for t in range(trials):
        tseed = derive_trial_seed(seed, t)
        g = gnp(n, p, tseed)
        if not is_connected(g):
            log.info("trial %d (seed %d) disconnected; skipped", t, tseed)
            report.skipped[t] = "disconnected"
            continue
        rng = make_rng(derive_trial_seed(tseed, 0))
        verts = np.sort(rng.choice(n, size=min(n, samples), replace=False))
        worst = {r: 0.0 for r in range(max_radius + 1)}
        for v in verts.tolist():
            for r, size in enumerate(_layer_counts(g, v, max_radius)):
                pred = d ** r
                err = size / pred - 1.0
                worst[r] = max(worst[r], abs(err))
                report.records.append(ExpansionRecord(n, p, t, tseed, v, r, size, pred, err))
        report.per_trial_max[t] = worst
        if r_size:
            R = rng.choice(n, size=r_size, replace=False).tolist()
            lworst = {}
            for x in verts.tolist():
                if x in R:
                    continue
                for r in range(1, max_radius + 1):
                    err = abs(_excluded_size(g, x, R, r) / d ** r - 1.0)
                    lworst[r] = max(lworst.get(r, 0.0), err)
            report.landmark_max[t] = lworst
    return report


def write_expansion_csv(report: ExpansionReport, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for rec in report.records:
            w.writerow([rec.trial, rec.seed, rec.vertex, rec.radius, rec.sphere_size,
                        repr(float(rec.predicted)), repr(float(rec.rel_error))])
