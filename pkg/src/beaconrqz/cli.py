"""Command-line entry point: ``beaconrqz {snapshot,sweep,pattern,selfcheck}``.

Exit codes: 0 success, 1 configuration/validation error, 2 runtime error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np
import pydantic
import yaml

from . import __version__, selfcheck
from .config import RunConfig, load_config
from .montecarlo import estimate, trial_rng
from .scenario import build_snapshot, format_snapshot

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2

CSV_HEADER = "param,outage,outage_lo,outage_hi,active_fraction,n_trials,seed"
PATTERN_IDS = ("telescope", "beacon", "satellite")


class UsageError(Exception):
    pass


def fmt9(x) -> str:
    """Positional decimal with 9 significant digits; empty for missing values."""
    if x is None:
        return ""
    return np.format_float_positional(float(x), precision=9, unique=False, fractional=False, trim="k")


def _provenance(cfg: RunConfig, seed: int) -> list[str]:
    return [f"# config_hash = {cfg.config_hash()}", f"# master_seed = {seed}", f"# version = {__version__}"]


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.output.dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_snapshot(cfg: RunConfig, seed: int) -> Path:
    sc = cfg.scenario_config()
    snap = build_snapshot(trial_rng(seed, 0), sc)
    lines = _provenance(cfg, seed)
    lines += [f"# {k} = {v:.12e}" for k, v in sc.budget.as_dict().items()]
    lines.append(f"# m_inview = {snap.m_inview}")
    path = _out_dir(cfg) / f"snapshot_seed{seed}.tsv"
    path.write_text("\n".join(lines) + "\n" + format_snapshot(snap))
    return path


def write_sweep_csv(path: Path, records) -> None:
    rows = [CSV_HEADER]
    for r in records:
        rows.append(",".join([
            fmt9(r.param), fmt9(r.outage_mean), fmt9(r.outage_ci_low), fmt9(r.outage_ci_high),
            fmt9(r.active_fraction_mean), str(r.n_trials), str(r.seed),
        ]))
    path.write_text("\n".join(rows) + "\n")


def cmd_sweep(cfg: RunConfig) -> list[Path]:
    spec = cfg.sweep_spec()
    t0 = time.perf_counter()
    results = estimate(spec)
    runtime = time.perf_counter() - t0
    out = _out_dir(cfg)
    paths = []
    for name, records in results.items():
        p = out / f"{name}.csv"
        write_sweep_csv(p, records)
        paths.append(p)
    meta = {
        "config_hash": cfg.config_hash(),
        "master_seed": cfg.sweep.master_seed,
        "n_trials": cfg.sweep.n_trials,
        "version": __version__,
        "runtime_s": runtime,
        "budget": spec.scenario.budget.as_dict(),
        "files": [p.name for p in paths],
        "config": cfg.model_dump(mode="json"),
    }
    (out / "sweep_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return paths


def pattern_table(pattern_id: str, cfg: RunConfig) -> str:
    sc = cfg.scenario_config()
    patterns = {"telescope": sc.telescope_pattern, "beacon": sc.beacon_pattern, "satellite": sc.satellite_pattern}
    if pattern_id not in patterns:
        raise UsageError(f"unknown pattern {pattern_id!r}; choose from {', '.join(PATTERN_IDS)}")
    deg = np.arange(18001) / 100.0
    gain = patterns[pattern_id].gain_dbi(np.radians(deg))
    lines = _provenance(cfg, cfg.sweep.master_seed) + ["# off_axis_deg gain_dbi"]
    lines += [f"{d:.2f} {g:.6f}" for d, g in zip(deg, gain)]
    return "\n".join(lines) + "\n"


def cmd_pattern(pattern_id: str, cfg: RunConfig) -> Path:
    text = pattern_table(pattern_id, cfg)
    path = _out_dir(cfg) / f"pattern_{pattern_id}.txt"
    path.write_text(text)
    return path


def cmd_selfcheck() -> int:
    failed = selfcheck.run_all(log=print)
    if failed:
        print(f"selfcheck failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML run configuration (default: packaged reference)")
    common.add_argument("--seed", type=int, help="master seed (u64)")
    common.add_argument("--trials", type=int, help="number of Monte Carlo trials")
    common.add_argument("--workers", type=int, help="worker processes (0 = all cores)")
    common.add_argument("--out", type=Path, help="output directory")

    parser = argparse.ArgumentParser(prog="beaconrqz", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("snapshot", parents=[common], help="dump one network snapshot")
    sub.add_parser("sweep", parents=[common], help="outage / active-fraction sweeps to CSV")
    p = sub.add_parser("pattern", parents=[common], help="antenna gain table, 0-180 deg in 0.01 deg steps")
    p.add_argument("pattern_id", help="one of: " + ", ".join(PATTERN_IDS))
    sub.add_parser("selfcheck", help="fast invariant suite")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selfcheck":
        return cmd_selfcheck()
    try:
        cfg = load_config(args.config).with_overrides(
            seed=args.seed, trials=args.trials, workers=args.workers, out=args.out
        )
    except (pydantic.ValidationError, yaml.YAMLError, OSError, ValueError) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        if args.command == "snapshot":
            path = cmd_snapshot(cfg, cfg.sweep.master_seed)
            print(path)
        elif args.command == "sweep":
            for path in cmd_sweep(cfg):
                print(path)
        elif args.command == "pattern":
            print(cmd_pattern(args.pattern_id, cfg))
    except UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
