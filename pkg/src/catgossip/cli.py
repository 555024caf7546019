"""Experiment runner CLI: executes trial batches, writes per-iteration CSV
and a summary JSON, and drives the comparison-inequality suite.

CSV schema: ``trial,iter,sigma2,delta,sigma2_kappa,delta_kappa,diameter``
with the curved columns left empty on flat runs and floats printed with 17
significant digits, so identical (config, seed) runs byte-reproduce.  The
summary JSON carries the config, per-trial fits, the fit of the cross-trial
mean log-variance curve, and the coverage envelope; non-finite numbers are
serialized as null.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict

from . import stats
from .engine import ConfigError, ExperimentConfig, TrialSeries, run_trials, validate_config
from .errors import DegenerateSeries, GossipError
from .propsuite import DEFAULT_SEED, run_property_suite

CSV_HEADER = "trial,iter,sigma2,delta,sigma2_kappa,delta_kappa,diameter"


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _jsonable(x: float | None):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else None


def write_csv(path: str, series_list: list[TrialSeries]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as out:
        out.write(CSV_HEADER + "\n")
        for t_idx, s in enumerate(series_list):
            curved = s.sigma2_kappa is not None
            for j in range(len(s.iters)):
                s2k = _fmt(s.sigma2_kappa[j]) if curved else ""
                dk = _fmt(s.delta_kappa[j]) if curved else ""
                out.write(
                    f"{t_idx},{int(s.iters[j])},{_fmt(s.sigma2[j])},{_fmt(s.delta[j])},"
                    f"{s2k},{dk},{_fmt(s.diameter[j])}\n"
                )


def summarize(cfg: ExperimentConfig, series_list: list[TrialSeries]) -> dict:
    """Build the summary structure written to JSON."""
    use_kappa = cfg.resolved_kappa > 0.0
    per_trial = []
    for s in series_list:
        try:
            fit = stats.fit_trial(s, use_kappa, cfg.window)
            slope, r2 = _jsonable(fit.slope), _jsonable(fit.r2)
        except DegenerateSeries:
            slope, r2 = None, None
        metric = stats.series_metric(s, use_kappa)
        per_trial.append(
            {
                "seed": int(s.seed),
                "slope": slope,
                "r2": r2,
                "final_sigma2": _jsonable(float(metric[-1])),
            }
        )
    try:
        fit = stats.fit_mean_curve(series_list, use_kappa, cfg.window)
        mean_fit = {
            "slope": _jsonable(fit.slope),
            "intercept": _jsonable(fit.intercept),
            "r2": _jsonable(fit.r2),
        }
    except DegenerateSeries:
        mean_fit = {"slope": None, "intercept": None, "r2": None}
    if len(series_list) >= 2:
        env = stats.envelope(series_list, cfg.coverage, use_kappa)
        envelope = {
            "coverage": cfg.coverage,
            "lower": [_jsonable(x) for x in env.lower],
            "median": [_jsonable(x) for x in env.median],
            "upper": [_jsonable(x) for x in env.upper],
        }
    else:
        envelope = {"coverage": cfg.coverage, "lower": [], "median": [], "upper": []}
    config_dict = asdict(cfg)
    config_dict["iters"] = cfg.resolved_iters
    config_dict["kappa"] = cfg.resolved_kappa
    return {
        "config": config_dict,
        "per_trial": per_trial,
        "mean_curve_fit": mean_fit,
        "envelope": envelope,
    }


def write_outputs(cfg: ExperimentConfig, series_list: list[TrialSeries], out_csv: str, out_json: str) -> None:
    write_csv(out_csv, series_list)
    summary = summarize(cfg, series_list)
    with open(out_json, "w", encoding="utf-8", newline="\n") as out:
        json.dump(summary, out, indent=2, allow_nan=False, sort_keys=True)
        out.write("\n")


def run_experiment(cfg: ExperimentConfig, out_csv: str, out_json: str, jobs: int = 1) -> int:
    """Run the batch and write both output files; returns 0 on success."""
    validate_config(cfg)
    series_list = run_trials(cfg, jobs=jobs)
    write_outputs(cfg, series_list, out_csv, out_json)
    return 0


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------

# name -> (converter, help); every flag may also appear in a key=value file
_RUN_FIELDS = {
    "space": (str, "one of euclidean, spd, sphere, so3, tree"),
    "graph": (str, "complete, path, or file"),
    "graph_file": (str, "edge list ('u w' per line, '#' comments) when --graph file"),
    "agents": (int, "number of agents N"),
    "iters": (int, "iterations per trial (default depends on the space)"),
    "trials": (int, "independent trials"),
    "seed": (int, "base seed; trial i uses seed + i"),
    "algo": (str, "midpoint, arithmetic, or rsgd"),
    "kappa": (float, "curvature bound (default: 1 sphere, 0.25 so3, else 0)"),
    "dim": (int, "vector dimension (euclidean only)"),
    "max_word_len": (int, "maximum initial word length (tree only)"),
    "record_every": (int, "record metrics every k-th iteration"),
    "window": (float, "slope-fit window as a fraction of the series"),
    "coverage": (float, "envelope coverage"),
}

_BOOL_FIELDS = {"rsgd_symmetric": "move both agents in the rsgd baseline"}


def _parse_config_file(path: str) -> dict:
    values: dict = {}
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("config", f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, _, val = line.partition("=")
            key = key.strip()
            val = val.strip()
            if key in _RUN_FIELDS:
                values[key] = _RUN_FIELDS[key][0](val)
            elif key in _BOOL_FIELDS:
                values[key] = val.lower() in ("1", "true", "yes", "on")
            else:
                raise ConfigError("config", f"{path}:{lineno}: unknown key {key!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catgossip",
        description="Random pairwise midpoint gossip simulator on geodesic spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run an experiment batch and export CSV + JSON")
    run.add_argument("--config", help="key=value file; explicit flags override it")
    for name, (conv, help_text) in _RUN_FIELDS.items():
        run.add_argument(f"--{name.replace('_', '-')}", type=conv, default=None, help=help_text)
    for name, help_text in _BOOL_FIELDS.items():
        run.add_argument(f"--{name.replace('_', '-')}", action="store_true", default=None, help=help_text)
    run.add_argument("--out-csv", default="results.csv", help="per-iteration CSV path")
    run.add_argument("--out-json", default="results.json", help="summary JSON path")
    run.add_argument("--jobs", type=int, default=0, help="worker processes (0 = all cores)")

    check = sub.add_parser("check", help="run the comparison-inequality suite")
    check.add_argument("--suite", choices=("cat0", "catk", "all"), default="all")
    check.add_argument("--seed", type=int, default=DEFAULT_SEED)
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        values.update(_parse_config_file(args.config))
    for name in list(_RUN_FIELDS) + list(_BOOL_FIELDS):
        flag_val = getattr(args, name)
        if flag_val is not None:
            values[name] = flag_val
    if "space" not in values:
        raise ConfigError("space", "required (flag --space or config file)")
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "check":
        code, report = run_property_suite(args.suite, args.seed)
        sys.stdout.write(report)
        return code
    try:
        cfg = _config_from_args(args)
        validate_config(cfg)
    except ConfigError as exc:
        print(f"configuration error ({exc.field}): {exc}", file=sys.stderr)
        return 2
    jobs = args.jobs if args.jobs > 0 else (os.cpu_count() or 1)
    try:
        return run_experiment(cfg, args.out_csv, args.out_json, jobs=jobs)
    except GossipError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"output error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
