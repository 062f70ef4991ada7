"""Antenna gain patterns.

Two families are provided:

* :class:`Ra1631Pattern` -- the ITU-R RA.1631 reference envelope used for the
  radio telescope and the beacon transmitter.
* :class:`AperturePattern` -- the circular-aperture (Airy) pattern of 3GPP
  TR 38.811 used for the satellite downlink beams.

Angles are off-axis angles in radians; gains are in dBi.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

# 4 |J1(x)/x|^2 = 1/2
AIRY_HALF_POWER_X = 1.6163399483107032
AIRY_FIRST_NULL_X = 3.8317059702075125


def _check_domain(angle):
    a = np.asarray(angle, dtype=float)
    if np.any(~np.isfinite(a)) or np.any(a < 0) or np.any(a > np.pi + 1e-12):
        raise ValueError("off-axis angle must lie in [0, pi] radians")
    return a


def bessel_j1(x):
    """First-order Bessel function of the first kind."""
    return special.j1(x)


def airy_power(x):
    """Normalized Airy power pattern ``4 |J1(x)/x|^2`` (1 at ``x = 0``)."""
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    nz = x != 0
    xs = x[nz]
    out[nz] = 4.0 * (special.j1(xs) / xs) ** 2
    return out


def diameter_from_gain(gmax_dbi: float, lambda_m: float) -> float:
    """Aperture diameter ``D`` such that ``gmax = 20 log10(pi D / lambda)``."""
    if not lambda_m > 0:
        raise ValueError("wavelength must be positive")
    return lambda_m / np.pi * 10 ** (gmax_dbi / 20)


def calibrate_aperture(beamwidth_rad: float) -> float:
    """Normalized aperture ``k*a`` that puts the -3 dB point at half the beamwidth."""
    if not 0 < beamwidth_rad < np.pi:
        raise ValueError("beamwidth must lie in (0, pi)")
    x_half = optimize.bisect(
        lambda x: airy_power(np.array([x]))[0] - 0.5, 1.0, 2.5, xtol=1e-14, rtol=1e-15
    )
    return x_half / np.sin(beamwidth_rad / 2)


@dataclass(frozen=True)
class Ra1631Pattern:
    gmax_dbi: float
    d_over_lambda: float | None = None  # derived from gmax when omitted

    def __post_init__(self):
        if not np.isfinite(self.gmax_dbi):
            raise ValueError("gmax_dbi must be finite")
        if self.d_over_lambda is None:
            object.__setattr__(self, "d_over_lambda", 10 ** (self.gmax_dbi / 20) / np.pi)
        if not self.d_over_lambda > 0:
            raise ValueError("d_over_lambda must be positive")

    @property
    def g1_dbi(self) -> float:
        return -1.0 + 15.0 * np.log10(self.d_over_lambda)

    @property
    def phi_m_deg(self) -> float:
        return 20.0 / self.d_over_lambda * np.sqrt(self.gmax_dbi - self.g1_dbi)

    @property
    def phi_r_deg(self) -> float:
        return 15.85 * self.d_over_lambda ** -0.6

    def gain_dbi(self, phi):
        return ra1631_gain(self, phi)


def ra1631_gain(p: Ra1631Pattern, phi):
    """RA.1631 gain envelope at off-axis angle(s) ``phi`` (radians).

    When ``phi_r <= phi_m`` (small apertures) the G1 plateau is empty and the
    main lobe hands over to the ``29 - 25 log10(phi)`` envelope at ``phi_m``.
    """
    phi = _check_domain(phi)
    deg = np.degrees(phi)
    dl = p.d_over_lambda
    phi_m, phi_r, g1 = p.phi_m_deg, p.phi_r_deg, p.g1_dbi
    lobe_end = max(phi_m, phi_r)

    with np.errstate(divide="ignore"):
        logd = np.log10(deg)
    conds = [
        deg < phi_m,
        (deg >= phi_m) & (deg < phi_r),
        (deg >= lobe_end) & (deg < 10.0),
        (deg >= 10.0) & (deg < 34.1),
        (deg >= 34.1) & (deg < 80.0),
        (deg >= 80.0) & (deg < 120.0),
    ]
    choices = [
        p.gmax_dbi - 2.5e-3 * (dl * deg) ** 2,
        np.full_like(deg, g1),
        29.0 - 25.0 * logd,
        34.0 - 30.0 * logd,
        np.full_like(deg, -12.0),
        np.full_like(deg, -7.0),
    ]
    g = np.select(conds, choices, default=-12.0)
    return g if g.ndim else float(g)


@dataclass(frozen=True)
class AperturePattern:
    gmax_dbi: float
    normalized_aperture: float
    floor_db: float | None = -30.0  # relative to peak; None disables the floor

    def __post_init__(self):
        if not np.isfinite(self.gmax_dbi):
            raise ValueError("gmax_dbi must be finite")
        if not self.normalized_aperture > 0:
            raise ValueError("normalized_aperture must be positive")

    @classmethod
    def from_beamwidth(cls, gmax_dbi: float, beamwidth_rad: float, floor_db: float | None = -30.0):
        return cls(gmax_dbi, calibrate_aperture(beamwidth_rad), floor_db)

    def gain_dbi(self, theta):
        return aperture_gain(self, theta)


def aperture_gain(p: AperturePattern, theta):
    """Circular-aperture gain at off-axis angle(s) ``theta`` (radians).

    Values below ``floor_db`` relative to the peak (nulls, deep side lobes) and
    the rear hemisphere are clamped to the floor.
    """
    theta = _check_domain(theta)
    x = p.normalized_aperture * np.sin(theta)
    rel = airy_power(np.atleast_1d(x)).reshape(np.shape(x))
    if p.floor_db is not None:
        floor = 10 ** (p.floor_db / 10)
        rel = np.where(theta > np.pi / 2, floor, np.maximum(rel, floor))
    else:
        rel = np.where(theta > np.pi / 2, 0.0, rel)
    with np.errstate(divide="ignore"):
        g = p.gmax_dbi + 10.0 * np.log10(rel)
    return g if g.ndim else float(g)
