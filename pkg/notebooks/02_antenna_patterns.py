"""
Antenna patterns
================

The telescope and beacon follow the same large-aperture envelope, so their
gains coincide away from the main lobe. The satellite uses an Airy pattern
calibrated to a 5 degree half-power beamwidth.
"""

# %%
import numpy as np

from beaconrqz.antenna import ra1631_gain
from beaconrqz.scenario import ScenarioConfig

cfg = ScenarioConfig()
tel, bea, sat = cfg.telescope_pattern, cfg.beacon_pattern, cfg.satellite_pattern
print(f"telescope D/lambda = {tel.d_over_lambda:.1f}, phi_m = {tel.phi_m_deg:.3f} deg")
print(f"beacon    D/lambda = {bea.d_over_lambda:.2f}, phi_m = {bea.phi_m_deg:.2f} deg")
print(f"satellite ka = {sat.normalized_aperture:.4f}")

# %%
deg = np.array([0, 0.1, 0.5, 1, 2, 5, 6.5, 10, 30, 60, 90, 120, 180])
phi = np.radians(deg)
print(" deg   telescope  beacon  satellite")
for d, a, b, c in zip(deg, tel.gain_dbi(phi), bea.gain_dbi(phi), sat.gain_dbi(phi)):
    print(f"{d:5.1f} {a:10.2f} {b:7.2f} {c:10.2f}")

# %%
# The mismatch term that the beacon has to live with.
fine = np.radians(np.arange(18001) / 100)
diff = ra1631_gain(tel, fine) - ra1631_gain(bea, fine)
last = np.arange(18001)[diff != 0].max() / 100
print(f"largest off-axis angle with non-zero mismatch: {last:.2f} deg")
