"""Command-line front end: simulations, exact curves, limit tables, and comparisons.

Every artifact embeds the configuration that produced it (seed, tolerances,
package version), CSV output uses LF line endings and a fixed column order,
and runs with equal flags and seed are byte-identical.

Exit codes: 0 success, 2 configuration error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from math import fsum

import numpy as np

from . import __version__
from .exact_dist import default_k_max, exact_pk
from .greedy_sim import collect_empirical
from .hypo_analytic import (
    euler_constant_C,
    limit_table,
    log_hypo_density,
    q_k,
)
from .metrics import l1_discrete
from .prob_core import SeriesConfig

SEED_ENV_VAR = "GREEDY_STABLE_SEED"
DEFAULT_SEED = 20260825

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3


class ConfigError(Exception):
    pass


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{SEED_ENV_VAR} must be an integer, got {raw!r}") from None


def _series_config(args) -> SeriesConfig:
    try:
        return SeriesConfig(max_terms=args.max_terms, abs_tol=args.abs_tol)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _n_values(args) -> list[int]:
    if args.n_list:
        ns = args.n_list
    elif args.n:
        ns = [args.n]
    else:
        raise ConfigError("provide --n or --n-list")
    if any(n < 1 for n in ns):
        raise ConfigError("all n values must be positive")
    return ns


def _meta(args, extra: dict) -> dict:
    meta = {
        "command": args.command,
        "version": __version__,
        "max_terms": args.max_terms,
        "abs_tol": args.abs_tol,
    }
    meta.update(extra)
    return meta


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _render_csv(meta: dict, header: list[str], rows: list[list]) -> str:
    lines = [f"# {key}={json.dumps(val)}" for key, val in meta.items()]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v) for v in row))
    return "\n".join(lines) + "\n"


def _render_json(meta: dict, header: list[str], rows: list[list]) -> str:
    payload = {"config": meta, "rows": [dict(zip(header, row)) for row in rows]}
    return json.dumps(payload, indent=2) + "\n"


def _render(fmt: str, meta: dict, header: list[str], rows: list[list]) -> str:
    if fmt == "json":
        return _render_json(meta, header, rows)
    return _render_csv(meta, header, rows)


def read_csv_artifact(path: str) -> tuple[dict, list[str], list[list[str]]]:
    """Parse an emitted CSV artifact back into (metadata, header, rows)."""
    meta: dict = {}
    header: list[str] = []
    rows: list[list[str]] = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if line.startswith("# "):
                key, _, val = line[2:].partition("=")
                meta[key] = json.loads(val)
            elif not header:
                header = line.split(",")
            elif line:
                rows.append(line.split(","))
    return meta, header, rows


def cmd_simulate(args) -> str:
    ns = _n_values(args)
    if args.trials < 1:
        raise ConfigError("--trials must be >= 1")
    rows = []
    for n in ns:
        pmf = collect_empirical(n, args.trials, args.seed, method=args.method)
        for k, count in sorted(pmf.counts.items()):
            rows.append([n, k, count, count / args.trials])
    meta = _meta(args, {"seed": args.seed, "trials": args.trials,
                        "method": args.method, "n_list": ns})
    return _render(args.format, meta, ["n", "k", "count", "frequency"], rows)


def cmd_exact_pk(args) -> str:
    ns = _n_values(args)
    rows = []
    for n in ns:
        p = exact_pk(n)
        for k in range(1, len(p)):
            rows.append([n, k, float(p[k])])
    meta = _meta(args, {"n_list": ns})
    return _render(args.format, meta, ["n", "k", "p_k"], rows)


def compare_one(n: int, trials: int, seed: int, cfg: SeriesConfig) -> dict:
    """Exact-vs-analytic comparison for one n; the Monte Carlo L1 is optional."""
    theta = math.log2(n) - math.floor(math.log2(n))
    k_max = default_k_max(n)
    p = exact_pk(n, k_max)
    q = np.array([q_k(n, k, cfg) for k in range(k_max + 1)])
    l1 = l1_discrete(p, q)
    bound = math.sqrt(math.log(n)) / n ** (1.0 / 3.0) if n > 1 else 1.0
    result = {
        "n": n,
        "theta": theta,
        "l1_pk_qk": l1,
        "tv": l1 / 2.0,
        "bound_ratio": l1 / bound,
    }
    if trials > 0:
        pmf = collect_empirical(n, trials, seed, method="geometric")
        emp = pmf.as_array(k_max)
        result["l1_mc"] = l1_discrete(emp, q)
    return result


def cmd_compare(args) -> str:
    ns = _n_values(args)
    if args.trials < 0:
        raise ConfigError("--trials must be >= 0 (0 means exact-only)")
    cfg = _series_config(args)
    header = ["n", "theta", "l1_pk_qk", "tv", "bound_ratio"]
    if args.trials > 0:
        header.append("l1_mc")
    rows = []
    for n in ns:
        res = compare_one(n, args.trials, args.seed, cfg)
        rows.append([res[h] for h in header])
    meta = _meta(args, {"seed": args.seed, "trials": args.trials, "n_list": ns})
    return _render(args.format, meta, header, rows)


def cmd_limit_table(args) -> str:
    if not 0.0 <= args.theta < 1.0:
        raise ConfigError(f"--theta must lie in [0,1), got {args.theta}")
    cfg = _series_config(args)
    table = limit_table(args.theta, cfg, c_range=(args.c_min, args.c_max))
    rows = [[c, p] for c, p in sorted(table.entries.items())]
    meta = _meta(args, {"theta": args.theta,
                        "c_range": [args.c_min, args.c_max],
                        "mean_dev": table.mean_dev,
                        "std_dev": table.std_dev})
    return _render(args.format, meta, ["c", "probability"], rows)


def cmd_density_csv(args) -> str:
    if args.step <= 0:
        raise ConfigError("--step must be positive")
    if args.y_max < args.y_min:
        raise ConfigError("--y-max must be >= --y-min")
    cfg = _series_config(args)
    count = int(round((args.y_max - args.y_min) / args.step)) + 1
    grid = args.y_min + args.step * np.arange(count)
    dens = log_hypo_density(grid, cfg)
    rows = [[float(y), float(g)] for y, g in zip(grid, dens)]
    meta = _meta(args, {"y_min": args.y_min, "y_max": args.y_max, "step": args.step,
                        "euler_constant": euler_constant_C(cfg),
                        "series_depth": cfg.max_terms})
    return _render(args.format, meta, ["y", "g"], rows)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="greedy-stable",
        description="Greedy stable-set heuristic on G(n,1/2): simulation, "
                    "exact distribution, limiting law, and convergence checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--format", choices=["csv", "json"], default="csv")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--max-terms", type=int, default=64)
        p.add_argument("--abs-tol", type=float, default=1e-15)
        if seed:
            p.add_argument("--seed", type=int, default=None,
                           help=f"default from ${SEED_ENV_VAR} or {DEFAULT_SEED}")

    p = sub.add_parser("simulate", help="empirical size pmf from repeated greedy runs")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", type=int, nargs="+")
    p.add_argument("--trials", type=int, default=100000)
    p.add_argument("--method", choices=["graph", "geometric"], default="graph")
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("exact-pk", help="exact size distribution via geometric convolution")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", type=int, nargs="+")
    common(p, seed=False)
    p.set_defaults(func=cmd_exact_pk)

    p = sub.add_parser("compare", help="L1 distance between exact and limiting size laws")
    p.add_argument("--n", type=int)
    p.add_argument("--n-list", type=int, nargs="+")
    p.add_argument("--trials", type=int, default=0,
                   help="Monte Carlo trials for an optional empirical L1 (0 = exact only)")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("limit-table", help="limiting offset distribution at fixed theta")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--c-min", type=int, default=-8)
    p.add_argument("--c-max", type=int, default=12)
    common(p, seed=False)
    p.set_defaults(func=cmd_limit_table)

    p = sub.add_parser("density-csv", help="density of log2(1/H) on a uniform grid")
    p.add_argument("--y-min", type=float, default=-4.0)
    p.add_argument("--y-max", type=float, default=4.0)
    p.add_argument("--step", type=float, default=0.01)
    common(p, seed=False)
    p.set_defaults(func=cmd_density_csv)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "seed", None) is None and hasattr(args, "seed"):
            args.seed = _default_seed()
        text = args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        _write(args.out, text)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
