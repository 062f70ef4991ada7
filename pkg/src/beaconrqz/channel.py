"""Link-budget arithmetic: free-space loss, channel gains, shadowing, noise, RFI limits."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy import constants

from .antenna import diameter_from_gain

SPEED_OF_LIGHT = constants.c
# rounded value used for the published link budget; kept for comparability
BOLTZMANN = 1.38e-23


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)


@dataclass(frozen=True)
class RadioParams:
    carrier_hz: float = 10.65e9
    bandwidth_hz: float = 100e6
    sat_psd_dbw_mhz: float = -8.3
    beacon_power_w: float = 0.01
    pfd_max_dbw_m2_hz: float = -240.0
    sky_temp_k: float = 300.0
    rx_temp_k: float = 100.0
    detection_threshold_db: float = 9.6
    shadowing_sigma_db: float = 5.0

    def __post_init__(self):
        if not self.carrier_hz > 0 or not self.bandwidth_hz > 0:
            raise ValueError("carrier and bandwidth must be positive")
        for name in ("beacon_power_w", "sky_temp_k", "rx_temp_k", "shadowing_sigma_db"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class DerivedBudget:
    lambda_m: float
    dish_diameter_m: float
    rfi_max_w: float
    noise_density_w_hz: float
    sat_power_linear_w: float
    detection_energy_j: float  # eta * N0

    @classmethod
    def from_params(cls, radio: RadioParams, telescope_gmax_dbi: float = 64.0) -> "DerivedBudget":
        lam = SPEED_OF_LIGHT / radio.carrier_hz
        d = diameter_from_gain(telescope_gmax_dbi, lam)
        n0 = noise_density(radio.sky_temp_k, radio.rx_temp_k)
        return cls(
            lambda_m=lam,
            dish_diameter_m=d,
            rfi_max_w=rfi_max(radio.pfd_max_dbw_m2_hz, d, radio.bandwidth_hz),
            noise_density_w_hz=n0,
            sat_power_linear_w=sat_power_linear(radio.sat_psd_dbw_mhz, radio.bandwidth_hz),
            detection_energy_j=float(db_to_linear(radio.detection_threshold_db)) * n0,
        )

    def as_dict(self) -> dict:
        return asdict(self)


def fsl(distance_m, carrier_hz: float):
    """Free-space loss ``(4 pi d f / c)^2`` as a linear power ratio."""
    d = np.asarray(distance_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("distance must be positive")
    out = (4.0 * np.pi * d * carrier_hz / SPEED_OF_LIGHT) ** 2
    return out if out.ndim else float(out)


def channel_gain(theta, phi, distance_m, tx_pattern, rx_pattern, carrier_hz: float):
    """Linear gain ``w_T(theta) w_R(phi) / FSL(d)`` of one link."""
    g_db = tx_pattern.gain_dbi(theta) + rx_pattern.gain_dbi(phi)
    return db_to_linear(g_db) / fsl(distance_m, carrier_hz)


def draw_shadowing(rng: np.random.Generator, sigma_db: float, size=None):
    """Log-normal factor(s) ``xi`` with ``10 log10 xi ~ N(0, sigma_db^2)``."""
    if sigma_db < 0:
        raise ValueError("sigma_db must be non-negative")
    z = rng.normal(0.0, sigma_db, size)
    return 10.0 ** (z / 10.0)


def noise_density(sky_temp_k: float, rx_temp_k: float) -> float:
    if sky_temp_k < 0 or rx_temp_k < 0:
        raise ValueError("temperatures must be non-negative")
    return BOLTZMANN * (sky_temp_k + rx_temp_k)


def rfi_max(pfd_max_dbw_m2_hz: float, dish_diameter_m: float, bandwidth_hz: float) -> float:
    """Harmful-interference power collected by a dish of the given diameter."""
    return float(db_to_linear(pfd_max_dbw_m2_hz)) * np.pi * (dish_diameter_m / 2) ** 2 * bandwidth_hz


def sat_power_linear(psd_dbw_mhz: float, bandwidth_hz: float) -> float:
    if not bandwidth_hz > 0:
        raise ValueError("bandwidth must be positive")
    return float(db_to_linear(psd_dbw_mhz)) * bandwidth_hz / 1e6
