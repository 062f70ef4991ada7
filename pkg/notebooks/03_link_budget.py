"""
Link budget
===========

Quantities derived from the radio parameters: wavelength, dish size,
interference ceiling, noise density and satellite transmit power.
"""

# %%
import numpy as np

from beaconrqz.channel import DerivedBudget, RadioParams, channel_gain, fsl, linear_to_db
from beaconrqz.scenario import ScenarioConfig

radio = RadioParams()
budget = DerivedBudget.from_params(radio)
for k, v in budget.as_dict().items():
    print(f"{k:22s} {v:.5e}")

# %%
# Received power from a satellite overhead, looking straight down at the dish.
cfg = ScenarioConfig()
g = channel_gain(0.0, 0.0, 550e3, cfg.satellite_pattern, cfg.telescope_pattern, radio.carrier_hz)
print(f"free-space loss at 550 km: {linear_to_db(fsl(550e3, radio.carrier_hz)):.2f} dB")
print(f"boresight-to-boresight:    {budget.sat_power_linear_w * g:.3e} W "
      f"({linear_to_db(budget.sat_power_linear_w * g / budget.rfi_max_w):.1f} dB above the ceiling)")

# %%
# The same satellite seen 30 degrees off the telescope axis.
g30 = channel_gain(0.0, np.radians(30), 550e3 / np.cos(np.radians(30)),
                   cfg.satellite_pattern, cfg.telescope_pattern, radio.carrier_hz)
print(f"30 deg off axis:           {budget.sat_power_linear_w * g30:.3e} W")
