"""
Constellation geometry
======================

Drop a uniform shell of satellites, count how many a zenith-pointing
telescope can see, and compare with the spherical-cap fraction.
"""

# %%
import numpy as np

from beaconrqz import geom
from beaconrqz.montecarlo import trial_rng
from beaconrqz.scenario import ScenarioConfig, build_snapshot

g = geom.GeometryConstants()
print(f"shell radius        {g.shell_radius_m / 1e3:.1f} km")
print(f"visible cap         {g.visible_cap_fraction:.5f} of the shell")
print(f"horizon slant range {g.horizon_slant_range_m / 1e3:.1f} km")

# %%
# Empirical in-view counts for a few constellation sizes.
for n in (500, 1000, 1500, 2000):
    cfg = ScenarioConfig(n_satellites=n)
    m = [build_snapshot(trial_rng(1, i), cfg).m_inview for i in range(2000)]
    print(f"N={n:5d}  mean M={np.mean(m):6.2f}  cap oracle={g.visible_cap_fraction * n:6.2f}")

# %%
# One snapshot in detail: distances and off-axis angles at the telescope.
snap = build_snapshot(trial_rng(1, 0), ScenarioConfig())
order = np.argsort(snap.phi_rad)
print("closest to boresight (deg):", np.round(np.degrees(snap.phi_rad[order[:5]]), 2))
print("slant ranges (km):", np.round(snap.distance_m[order[:5]] / 1e3, 1))
