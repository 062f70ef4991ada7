"""Trial orchestration, outage estimation and parameter sweeps.

Trial ``i`` of a sweep draws from ``SeedSequence(master_seed, spawn_key=(i,))``,
so a trial's snapshot does not depend on which worker runs it. Trials are
grouped into fixed-size chunks whose partial sums are reduced in chunk
order; the output is therefore bit-identical for any worker count. All
policies and all grid points of a sweep see the same snapshots (common random
numbers).
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import policy as pol
from .scenario import ScenarioConfig, Snapshot, build_snapshot

Z95 = 1.959963984540054
DEFAULT_CHUNK = 500


def trial_rng(master_seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(index,)))


def wilson_interval(k: int, n: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for ``k`` successes in ``n`` Bernoulli trials."""
    if n <= 0:
        raise ValueError("n must be positive")
    p = k / n
    denom = 1.0 + z * z / n
    center = (p + z * z / (2 * n)) / denom
    half = z / denom * math.sqrt(p * (1 - p) / n + z * z / (4 * n * n))
    lo = 0.0 if k == 0 else max(0.0, min(p, center - half))
    hi = 1.0 if k == n else min(1.0, max(p, center + half))
    return lo, hi


# -- sweep families --------------------------------------------------------


@dataclass(frozen=True)
class PolicyFamily:
    """A policy with one swept parameter.

    ``kind`` is one of ``fixed_qz`` (grid over the sky radius V, fixed ground
    radius), ``dynamic_qz`` (grid over tau), ``beacon`` (grid over T_b) or
    ``genie`` (grid ignored; a single point).
    """

    kind: str
    grid: tuple[float, ...] = (0.0,)
    ground_radius_m: float = 0.0
    beacon_power_w: float | None = None
    threshold_db: float | None = None
    name: str | None = None

    KINDS = ("fixed_qz", "dynamic_qz", "beacon", "genie")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        object.__setattr__(self, "grid", tuple(float(g) for g in self.grid))
        if self.kind == "genie":
            object.__setattr__(self, "grid", (0.0,))
        if not self.grid:
            raise ValueError("grid must be non-empty")

    @property
    def label(self) -> str:
        return self.name or self.kind

    def masks(self, snap: Snapshot, config: ScenarioConfig) -> np.ndarray:
        """``(G, M)`` active masks over the grid."""
        g = np.asarray(self.grid)
        if self.kind == "fixed_qz":
            return pol.fixed_qz_mask(snap, self.ground_radius_m, g)
        if self.kind == "dynamic_qz":
            return pol.dynamic_qz_mask(snap, g)
        if self.kind == "beacon":
            radio = config.radio
            p_b = radio.beacon_power_w if self.beacon_power_w is None else self.beacon_power_w
            eta = radio.detection_threshold_db if self.threshold_db is None else self.threshold_db
            thr = 10 ** (eta / 10) * snap.budget.noise_density_w_hz
            return pol.beacon_mask(snap, p_b, g, thr)
        return pol.genie_mask(snap, snap.budget.rfi_max_w)[None, :]


@dataclass(frozen=True)
class SweepSpec:
    scenario: ScenarioConfig
    families: tuple[PolicyFamily, ...]
    n_trials: int = 100_000
    master_seed: int = 0
    n_workers: int = 1
    chunk_size: int = DEFAULT_CHUNK

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if not self.families:
            raise ValueError("at least one policy family is required")
        object.__setattr__(self, "families", tuple(self.families))


@dataclass(frozen=True)
class SweepRecord:
    policy: str
    param: float
    outage_mean: float
    outage_ci_low: float
    outage_ci_high: float
    active_fraction_mean: float | None
    n_trials: int
    seed: int


@dataclass
class TrialResult:
    m_inview: int
    aggregate_rfi_w: list[float] = field(default_factory=list)
    outage: list[bool] = field(default_factory=list)
    active_count: list[int] = field(default_factory=list)


def run_trial(config: ScenarioConfig, policies, trial_seed) -> TrialResult:
    """One snapshot, every policy evaluated on it.

    ``trial_seed`` may be an int, a ``SeedSequence`` or a ``Generator``.
    """
    rng = trial_seed if isinstance(trial_seed, np.random.Generator) else np.random.default_rng(trial_seed)
    snap = build_snapshot(rng, config)
    res = TrialResult(m_inview=snap.m_inview)
    for spec in policies:
        d = pol.evaluate(snap, spec, config.radio)
        res.aggregate_rfi_w.append(d.aggregate_rfi_w)
        res.outage.append(d.outage)
        res.active_count.append(int(d.active_mask.sum()))
    return res


# -- sweep engine ----------------------------------------------------------


@dataclass
class _Partial:
    outages: list[np.ndarray]  # per family, (G,) int64 counts
    frac_sums: list[np.ndarray]  # per family, (G,) float sums over trials with M > 0
    n_nonempty: int


def _run_chunk(args) -> _Partial:
    spec, start, stop = args
    cfg = spec.scenario
    rfi_max = cfg.budget.rfi_max_w
    outs = [np.zeros(len(f.grid), dtype=np.int64) for f in spec.families]
    fracs = [np.zeros((stop - start, len(f.grid))) for f in spec.families]
    nonempty = np.zeros(stop - start, dtype=bool)
    for j, i in enumerate(range(start, stop)):
        snap = build_snapshot(trial_rng(spec.master_seed, i), cfg)
        m = snap.m_inview
        nonempty[j] = m > 0
        for k, fam in enumerate(spec.families):
            if m == 0:
                continue
            masks = fam.masks(snap, cfg)
            outs[k] += pol.aggregate_rfi(snap, masks) >= rfi_max
            fracs[k][j] = masks.sum(axis=1) / m
    return _Partial(outs, [f.sum(axis=0) for f in fracs], int(nonempty.sum()))


def _chunks(spec: SweepSpec):
    n, c = spec.n_trials, spec.chunk_size
    return [(spec, s, min(s + c, n)) for s in range(0, n, c)]


def _resolve_workers(n_workers: int) -> int:
    if n_workers == 0:
        return os.cpu_count() or 1
    return max(1, n_workers)


def estimate(spec: SweepSpec) -> dict[str, list[SweepRecord]]:
    """Outage probability and mean active fraction for every family and grid point."""
    chunks = _chunks(spec)
    workers = min(_resolve_workers(spec.n_workers), len(chunks))
    if workers == 1:
        parts = [_run_chunk(c) for c in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_chunk, chunks))

    n = spec.n_trials
    n_nonempty = sum(p.n_nonempty for p in parts)
    out = {}
    for k, fam in enumerate(spec.families):
        counts = np.zeros(len(fam.grid), dtype=np.int64)
        fsum = np.zeros(len(fam.grid))
        for p in parts:
            counts += p.outages[k]
            fsum += p.frac_sums[k]
        records = []
        for g, param in enumerate(fam.grid):
            lo, hi = wilson_interval(int(counts[g]), n)
            records.append(
                SweepRecord(
                    policy=fam.label,
                    param=param,
                    outage_mean=counts[g] / n,
                    outage_ci_low=lo,
                    outage_ci_high=hi,
                    active_fraction_mean=float(fsum[g] / n_nonempty) if n_nonempty else None,
                    n_trials=n,
                    seed=spec.master_seed,
                )
            )
        out[fam.label] = records
    return out


def sweep_outage_vs_active(spec: SweepSpec) -> dict[str, list[tuple[float, float]]]:
    """``(active_fraction, outage)`` trade-off curve per family, in grid order."""
    return {
        name: [(r.active_fraction_mean, r.outage_mean) for r in recs]
        for name, recs in estimate(spec).items()
    }


def best_active_fraction(records: list[SweepRecord], max_outage: float) -> float | None:
    """Largest mean active fraction among grid points meeting the outage target."""
    ok = [r.active_fraction_mean for r in records
          if r.outage_mean <= max_outage and r.active_fraction_mean is not None]
    return max(ok) if ok else None


def required_parameter(records: list[SweepRecord], max_outage: float) -> float | None:
    """Smallest grid value whose outage meets the target (grid assumed ascending)."""
    for r in records:
        if r.outage_mean <= max_outage:
            return r.param
    return None


# -- default grids ---------------------------------------------------------


def sky_radius_grid(config: ScenarioConfig, n: int = 64, v_min_m: float = 1e3) -> np.ndarray:
    """0 followed by log-spaced sky radii up to twice the horizon slant range."""
    v_max = 2 * config.geometry.horizon_slant_range_m
    return np.concatenate([[0.0], np.geomspace(v_min_m, v_max, n - 1)])


def tau_grid(n: int = 64, lo: float = 1e-17, hi: float = 1e-14) -> np.ndarray:
    return np.geomspace(lo, hi, n)


def tb_equivalent_to_tau(config: ScenarioConfig, tau_w, beacon_power_w: float | None = None):
    """Sensing time whose detection rule matches the dynamic-zone rule at ``tau``."""
    b = config.budget
    p_b = config.radio.beacon_power_w if beacon_power_w is None else beacon_power_w
    return b.detection_energy_j * b.sat_power_linear_w / (p_b * np.asarray(tau_w, dtype=float))


def beacon_grid(config: ScenarioConfig, n: int = 64, tau_lo: float = 1e-17, tau_hi: float = 1e-14) -> np.ndarray:
    """T_b = 0 followed by the sensing times matching the tau grid, ascending."""
    tb = np.sort(tb_equivalent_to_tau(config, tau_grid(n - 1, tau_lo, tau_hi)))
    return np.concatenate([[0.0], tb])


def linear_tb_grid(n: int = 64, tb_max_s: float = 5.3e-3) -> np.ndarray:
    return np.linspace(0.0, tb_max_s, n)


def default_families(config: ScenarioConfig, ground_radius_m: float = 50e3) -> tuple[PolicyFamily, ...]:
    return (
        PolicyFamily("fixed_qz", tuple(sky_radius_grid(config)), ground_radius_m=ground_radius_m),
        PolicyFamily("dynamic_qz", tuple(tau_grid())),
        PolicyFamily("beacon", tuple(beacon_grid(config))),
        PolicyFamily("genie"),
    )
