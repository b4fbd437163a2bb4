"""Grid sweeps over ``p = n**(x-1)``: one CSV row per connected trial."""

from __future__ import annotations

import csv
import io
import logging
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, field, fields
from typing import Sequence

from .errors import DomainError, MetridimError, NotFound
from .generators import derive_trial_seed, gnp
from .graph import connected_distances, is_connected
from .solvers import greedy_resolving, random_resolving
from .theory import DEFAULT_EPSILON, compute_regime, predict_diameter, upper_sample_size, zigzag_f

log = logging.getLogger(__name__)

ALGORITHMS = ("greedy", "random")
THREADS_ENV = "METRIDIM_THREADS"


@dataclass(frozen=True)
class SweepRecord:
    n: int
    x: float
    p: float
    d: float
    i: int
    c: float
    q: float
    trial: int
    seed: int
    beta_greedy: int
    beta_random: int
    w_used: int
    diameter_empirical: int
    diameter_predicted: int
    runtime_ms: float


CSV_COLUMNS = tuple(f.name for f in fields(SweepRecord))


@dataclass
class SweepResult:
    records: list[SweepRecord] = field(default_factory=list)
    failures: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        by_x: dict[float, list[SweepRecord]] = {}
        for rec in self.records:
            by_x.setdefault(rec.x, []).append(rec)
        rows = []
        for x, recs in sorted(by_x.items()):
            n = recs[0].n
            greedy = [math.log(r.beta_greedy) / math.log(n) for r in recs]
            rand = [math.log(r.beta_random) / math.log(n) for r in recs if r.beta_random > 0]
            rows.append({
                "x": x,
                "trials": len(recs),
                "mean_log_n_beta_greedy": sum(greedy) / len(greedy),
                "mean_log_n_beta_random": sum(rand) / len(rand) if rand else None,
                "zigzag": zigzag_f(x),
            })
        return {"points": rows, "records": len(self.records), "failures": self.failures}


def parse_grid(grid: str | Sequence[float]) -> list[float]:
    """``"start:stop:step"`` (stop inclusive) or an explicit list of exponents."""
    if isinstance(grid, str):
        try:
            start, stop, step = (float(s) for s in grid.split(":"))
        except ValueError:
            raise DomainError(f"grid must be start:stop:step, got {grid!r}") from None
        if step <= 0 or stop < start:
            raise DomainError("grid needs step > 0 and start <= stop")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        xs = [round(start + k * step, 12) for k in range(count)]
    else:
        xs = [float(x) for x in grid]
    bad = [x for x in xs if not 0.0 < x <= 1.0]
    if not xs or bad:
        raise DomainError(f"grid exponents must lie in (0, 1]; offending: {bad}")
    return xs


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def _run_trial(n: int, x: float, trial: int, seed: int, algos: frozenset[str],
               epsilon: float, max_attempts: int, timings: bool) -> SweepRecord:
    t0 = time.perf_counter()
    p = n ** (x - 1.0)
    g = gnp(n, p, seed)
    if not is_connected(g):
        raise _Skip("disconnected")
    try:
        reg = compute_regime(n, p)
        d, i, c, q, sep = reg.d, reg.i, reg.c, reg.q, reg.separation
    except DomainError:
        d, i, c, q, sep = p * (n - 1), -1, math.nan, math.nan, math.nan
    beta_greedy = greedy_resolving(g).beta_estimate
    beta_random, w = -1, 0
    if "random" in algos and 0.0 < sep < 1.0:
        w = min(max(upper_sample_size(n, q, epsilon, sep), 1), n - 1)
        try:
            beta_random = random_resolving(g, w, max_attempts, derive_trial_seed(seed, 1)).beta_estimate
        except NotFound:
            beta_random = -1
    diam = int(connected_distances(g).max())
    try:
        diam_pred = predict_diameter(n, p, 0.0)
    except MetridimError:
        diam_pred = -1
    ms = (time.perf_counter() - t0) * 1000.0 if timings else 0.0
    return SweepRecord(n, x, p, d, i, c, q, trial, seed, beta_greedy, beta_random, w,
                       diam, diam_pred, ms)


class _Skip(Exception):
    pass


def run_sweep(n: int, x_grid: str | Sequence[float], trials: int,
              algos: Sequence[str] = ("greedy",), master_seed: int = 0,
              out_path: str | os.PathLike | None = None, epsilon: float = DEFAULT_EPSILON,
              max_attempts: int = 20, timings: bool = False) -> SweepResult:
    """Run every (grid point, trial) and write the CSV sorted by ``(x, trial)``.

    The graph for grid point ``g`` and trial ``t`` is seeded with
    ``derive_trial_seed(derive_trial_seed(master_seed, g), t)``.  Greedy always
    runs.  ``runtime_ms`` is 0 unless ``timings`` is set, so the default
    output depends only on the arguments.
    """
    xs = parse_grid(x_grid)
    if trials < 1:
        raise DomainError("trials must be at least 1")
    unknown = set(algos) - set(ALGORITHMS)
    if unknown:
        raise DomainError(f"unknown algorithms: {sorted(unknown)}")
    algos = frozenset(algos) | {"greedy"}

    jobs = []
    for gi, x in enumerate(xs):
        gseed = derive_trial_seed(master_seed, gi)
        for t in range(trials):
            jobs.append((x, t, derive_trial_seed(gseed, t)))

    def work(job):
        x, t, seed = job
        try:
            return _run_trial(n, x, t, seed, algos, epsilon, max_attempts, timings), None
        except _Skip as exc:
            log.info("x=%s trial=%d seed=%d skipped: %s", x, t, seed, exc)
            return None, {"x": x, "trial": t, "seed": seed, "reason": str(exc)}
        except Exception as exc:  # one bad trial must not sink the sweep
            log.warning("x=%s trial=%d seed=%d failed: %r", x, t, seed, exc)
            return None, {"x": x, "trial": t, "seed": seed, "reason": repr(exc)}

    workers = _threads()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(work, jobs))
    else:
        outcomes = [work(job) for job in jobs]

    result = SweepResult()
    for rec, failure in outcomes:
        if rec is not None:
            result.records.append(rec)
        else:
            result.failures.append(failure)
    result.records.sort(key=lambda r: (r.x, r.trial))
    if out_path is not None:
        with open(out_path, "w", newline="", encoding="utf-8") as fh:
            fh.write(format_csv(result.records))
    return result


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def format_csv(records: Sequence[SweepRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rec in records:
        w.writerow([_cell(v) for v in astuple(rec)])
    return buf.getvalue()
