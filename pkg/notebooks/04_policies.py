"""
Mitigation policies on one snapshot
===================================

Apply each policy to a single network snapshot and compare how many links
stay on and how much interference reaches the telescope.
"""

# %%
from beaconrqz import policy as pol
from beaconrqz.montecarlo import trial_rng
from beaconrqz.scenario import ScenarioConfig, build_snapshot

cfg = ScenarioConfig()
snap = build_snapshot(trial_rng(0, 3), cfg)
rfi_max = snap.budget.rfi_max_w
print(f"M = {snap.m_inview} satellites in view, all-on RFI = {snap.interference_w.sum() / rfi_max:.1f} x RFI_max")

# %%
specs = {
    "fixed QZ, V=1000 km": pol.FixedQz(50e3, 1000e3),
    "dynamic QZ, tau=1e-15": pol.DynamicQz(1e-15),
    "beacon, T_b=50 ms": pol.Beacon(0.05),
    "beacon, T_b=5.3 ms": pol.Beacon(5.3e-3),
    "genie": pol.Genie(),
}
for name, spec in specs.items():
    d = pol.evaluate(snap, spec, cfg.radio)
    print(f"{name:24s} active {d.active_fraction:5.3f}  RFI/RFI_max {d.aggregate_rfi_w / rfi_max:8.3f}"
          f"  outage {d.outage}")
