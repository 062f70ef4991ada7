"""
Outage versus active fraction
=============================

Sweep every policy over its parameter grid with common random numbers and
print the best active fraction that meets an outage target. Then show how
the sensing time needed by the beacon grows with the constellation size.
Increase ``TRIALS`` for smoother curves; 10^5 takes a few minutes per core.
"""

# %%
import numpy as np

from beaconrqz.montecarlo import (
    PolicyFamily, SweepSpec, beacon_grid, best_active_fraction, default_families, estimate,
    required_parameter,
)
from beaconrqz.scenario import ScenarioConfig

TRIALS = 3000

cfg = ScenarioConfig(n_satellites=1000)
res = estimate(SweepSpec(cfg, default_families(cfg), n_trials=TRIALS, master_seed=1, n_workers=0))
for target in (1e-1, 1e-2):
    best = {k: best_active_fraction(v, target) for k, v in res.items()}
    print(f"outage <= {target:g}: " + "  ".join(f"{k} {v if v is None else round(v, 3)}" for k, v in best.items()))

# %%
# Trade-off curve of the beacon policy.
for r in res["beacon"][::8]:
    print(f"T_b {r.param * 1e3:9.3f} ms  outage {r.outage_mean:.4f}  active {r.active_fraction_mean:.3f}")

# %%
# Required sensing time for a 1e-2 outage target versus N.
grid = tuple(beacon_grid(cfg))
for n in (500, 1000, 1500, 2000):
    spec = SweepSpec(ScenarioConfig(n_satellites=n), (PolicyFamily("beacon", grid),), n_trials=TRIALS, master_seed=2)
    tb = required_parameter(estimate(spec)["beacon"], 1e-2)
    print(f"N={n:5d}  T_b = {np.nan if tb is None else tb * 1e3:.1f} ms")
