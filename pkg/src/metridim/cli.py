"""``metridim`` command line.

Exit codes: 0 success, 2 usage error, 3 data error (unreadable graph file or
a disconnected graph where distances between all pairs are needed).
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys

from . import expansion as exp_mod
from .errors import (Disconnected, DomainError, GraphInputError, MetridimError, NotFound,
                     TooLargeForOracle, WOutOfRange)
from .generators import complete, cycle, gnp, path
from .graph import format_edge_list, read_edge_list
from .resolver import is_resolving
from .solvers import (exact_beta, exhaustive_beta, greedy_resolving, random_resolving,
                      topdeg_resolving)
from .sweep import format_csv, run_sweep
from .theory import (DEFAULT_EPSILON, babai_size, compute_regime, predict_beta,
                     upper_sample_size)

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 2, 3


class UsageError(Exception):
    pass


def _dump(obj, out=None) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True, default=_json_default)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _json_default(o):
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def _finite(x: float):
    return x if math.isfinite(x) else None


def _load(path: str):
    try:
        return read_edge_list(path)
    except (OSError, ValueError) as exc:
        raise GraphInputError(f"{path}: {exc}") from exc


def cmd_gen(args) -> int:
    if args.family == "gnp":
        if args.p is None:
            raise UsageError("--p is required for gnp")
        g = gnp(args.n, args.p, args.seed)
    else:
        g = {"path": path, "cycle": cycle, "complete": complete}[args.family](args.n)
    text = format_edge_list(g)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _default_w(g, epsilon: float) -> int:
    """Random-set size from the regime matching the graph's edge density."""
    p_hat = g.m / (g.n * (g.n - 1) / 2)
    if not 0.0 < p_hat < 1.0:
        return g.n - 1
    reg = compute_regime(g.n, p_hat)
    w = upper_sample_size(g.n, reg.q, epsilon, reg.separation)
    return max(1, min(w, g.n - 1))


def cmd_solve(args) -> int:
    g = _load(args.input)
    try:
        if args.algo == "exhaustive":
            res = exhaustive_beta(g)
        elif args.algo == "exact":
            res = exact_beta(g, node_cap=args.node_cap, time_cap_ms=args.time_cap_ms)
        elif args.algo == "greedy":
            res = greedy_resolving(g)
        elif args.algo == "random":
            w = args.w
            if w is None:
                w = _default_w(g, args.epsilon)
            res = random_resolving(g, w, args.max_attempts, args.seed)
        else:
            k = args.k if args.k is not None else min(babai_size(g.n), g.n - 1)
            res = topdeg_resolving(g, k)
    except NotFound as exc:
        _dump({"algorithm": args.algo, "found": False, "attempts": exc.attempts,
               "witness": exc.witness, "candidate": exc.candidate}, args.out)
        return EXIT_OK
    out = res.to_dict()
    out["found"] = True
    _dump(out, args.out)
    return EXIT_OK


def _parse_set(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise UsageError(f"--set must be comma-separated vertex ids, got {text!r}") from None


def cmd_verify(args) -> int:
    g = _load(args.input)
    verdict = is_resolving(g, _parse_set(args.set))
    _dump({"resolving": verdict.resolving,
           "witness": list(verdict.witness) if verdict.witness else None}, args.out)
    return EXIT_OK


def cmd_predict(args) -> int:
    reg = compute_regime(args.n, args.p)
    pred = predict_beta(reg, epsilon=args.epsilon, margin=args.margin)
    regime = {k: (_finite(v) if isinstance(v, float) else v) for k, v in reg.to_dict().items()}
    _dump({"regime": regime, "prediction": pred.to_dict()}, args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    algos = [a for a in args.algos.split(",") if a]
    result = run_sweep(args.n, args.grid, args.trials, algos, args.seed, args.out,
                       epsilon=args.epsilon, max_attempts=args.max_attempts,
                       timings=args.timings)
    if args.out:
        _dump(result.summary())
    else:
        sys.stdout.write(format_csv(result.records))
    return EXIT_OK


def cmd_expansion(args) -> int:
    report = exp_mod.expansion_report(args.n, args.p, args.radius, args.trials, args.seed,
                                      r_size=args.r_size, samples=args.samples,
                                      tolerance=args.tolerance)
    if args.out:
        exp_mod.write_expansion_csv(report, args.out)
    _dump(report.summary())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="metridim", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a graph in edge-list format")
    p.add_argument("--family", choices=["gnp", "path", "cycle", "complete"], default="gnp")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="compute or approximate the metric dimension")
    p.add_argument("--algo", choices=["exact", "exhaustive", "greedy", "random", "topdeg"],
                   required=True)
    p.add_argument("--input", required=True)
    p.add_argument("--w", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--max-attempts", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--node-cap", type=int)
    p.add_argument("--time-cap-ms", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check whether a vertex set resolves a graph")
    p.add_argument("--input", required=True)
    p.add_argument("--set", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("predict", help="regime parameters and predicted bounds for G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--margin", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("sweep", help="beta estimates over p = n^(x-1) for a grid of x")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--grid", required=True, help="start:stop:step, stop inclusive")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--algos", default="greedy", help="comma list from greedy,random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--max-attempts", type=int, default=20)
    p.add_argument("--timings", action="store_true", help="record wall-clock runtime_ms")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("expansion", help="sphere sizes versus d^i in sparse G(n, p)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--r-size", type=int, default=0)
    p.add_argument("--samples", type=int, default=exp_mod.DEFAULT_SAMPLES)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_expansion)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (Disconnected, GraphInputError, TooLargeForOracle) as exc:
        print(f"metridim: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (UsageError, DomainError, WOutOfRange, MetridimError, ValueError) as exc:
        print(f"metridim: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
