"""Stationary network snapshots.

A snapshot drops the constellation uniformly on the orbital shell, keeps the
satellites above the telescope's horizon mask, scatters one ground site per
in-view satellite inside the service disk around the telescope, pairs them
with a minimum-total-distance assignment and evaluates every per-link
quantity the mitigation policies need.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.spatial.distance import cdist

from . import geom
from .antenna import AperturePattern, Ra1631Pattern
from .channel import DerivedBudget, RadioParams, channel_gain, draw_shadowing


def default_telescope_pattern() -> Ra1631Pattern:
    return Ra1631Pattern(64.0)


def default_beacon_pattern() -> Ra1631Pattern:
    return Ra1631Pattern(32.0)


def default_satellite_pattern() -> AperturePattern:
    return AperturePattern.from_beamwidth(30.0, np.radians(5.0))


@dataclass(frozen=True)
class ScenarioConfig:
    n_satellites: int = 1000
    geometry: geom.GeometryConstants = field(default_factory=geom.GeometryConstants)
    radio: RadioParams = field(default_factory=RadioParams)
    telescope_lat_rad: float = 0.0
    telescope_lon_rad: float = 0.0
    boresight_azimuth_rad: float = 0.0
    boresight_elevation_rad: float = np.pi / 2
    ground_user_radius_m: float = 100e3
    telescope_pattern: Ra1631Pattern = field(default_factory=default_telescope_pattern)
    beacon_pattern: Ra1631Pattern = field(default_factory=default_beacon_pattern)
    satellite_pattern: AperturePattern = field(default_factory=default_satellite_pattern)
    # independent uplink shadowing models a displaced beacon transmitter
    reciprocal_shadowing: bool = True

    def __post_init__(self):
        if int(self.n_satellites) != self.n_satellites or self.n_satellites < 1:
            raise ValueError("n_satellites must be a positive integer")
        if not self.ground_user_radius_m > 0:
            raise ValueError("ground_user_radius_m must be positive")

    @cached_property
    def budget(self) -> DerivedBudget:
        return DerivedBudget.from_params(self.radio, self.telescope_pattern.gmax_dbi)

    @cached_property
    def telescope_pos(self) -> np.ndarray:
        return geom.latlon_to_ecef(
            self.telescope_lat_rad, self.telescope_lon_rad, self.geometry.earth_radius_m
        )

    @cached_property
    def boresight_dir(self) -> np.ndarray:
        return geom.look_direction(
            self.telescope_pos, self.boresight_azimuth_rad, self.boresight_elevation_rad
        )

    @cached_property
    def sky_center(self) -> np.ndarray:
        """Where the telescope look direction pierces the orbital shell."""
        return geom.boresight_shell_intersection(
            self.telescope_pos, self.boresight_dir, self.geometry.shell_radius_m
        )


@dataclass(frozen=True, eq=False)
class Snapshot:
    """Per-link quantities for the ``m_inview`` satellites above the horizon mask.

    All arrays are indexed by in-view satellite. ``gamma`` is the downlink
    chain (satellite -> telescope), ``gamma_beacon`` the beacon uplink chain
    (beacon -> satellite); ``xi_beacon`` is ``xi`` unless reciprocity is
    switched off.
    """

    telescope_pos: np.ndarray
    boresight_dir: np.ndarray
    sat_pos: np.ndarray
    site_pos: np.ndarray
    distance_m: np.ndarray
    elevation_rad: np.ndarray
    theta_rad: np.ndarray
    phi_rad: np.ndarray
    gamma: np.ndarray
    gamma_beacon: np.ndarray
    xi: np.ndarray
    xi_beacon: np.ndarray
    sky_distance_m: np.ndarray
    site_distance_m: np.ndarray
    budget: DerivedBudget
    n_satellites: int

    @property
    def m_inview(self) -> int:
        return len(self.distance_m)

    @property
    def interference_w(self) -> np.ndarray:
        """Received power ``p_s gamma_i xi_i`` of each link if it were active."""
        return self.budget.sat_power_linear_w * self.gamma * self.xi


def drop_constellation(rng: np.random.Generator, config: ScenarioConfig) -> np.ndarray:
    return geom.sample_uniform_sphere(rng, config.geometry.shell_radius_m, config.n_satellites)


def place_ground_sites(rng: np.random.Generator, config: ScenarioConfig, m: int) -> np.ndarray:
    if m == 0:
        return np.empty((0, 3))
    return geom.sample_uniform_cap(
        rng, config.telescope_pos, config.ground_user_radius_m, config.geometry.earth_radius_m, m
    )


def assign_min_total_distance(sats: np.ndarray, sites: np.ndarray) -> np.ndarray:
    """Permutation ``perm`` so that satellite ``i`` serves ``sites[perm[i]]`` at minimum total distance."""
    sats = np.asarray(sats, dtype=float).reshape(-1, 3)
    sites = np.asarray(sites, dtype=float).reshape(-1, 3)
    if len(sats) != len(sites):
        raise ValueError("need as many sites as satellites")
    if len(sats) == 0:
        return np.empty(0, dtype=int)
    rows, cols = linear_sum_assignment(cdist(sats, sites))
    perm = np.empty(len(sats), dtype=int)
    perm[rows] = cols
    return perm


def brute_force_assignment(sats: np.ndarray, sites: np.ndarray) -> tuple[float, tuple[int, ...]]:
    """Exhaustive minimum over all permutations; test oracle for small instances."""
    cost = cdist(np.atleast_2d(sats), np.atleast_2d(sites))
    m = len(cost)
    perms = np.array(list(itertools.permutations(range(m))), dtype=int).reshape(-1, m)
    totals = cost[np.arange(m), perms].sum(axis=1)
    best = int(np.argmin(totals))
    return float(totals[best]), tuple(int(x) for x in perms[best])


def assignment_cost(sats, sites, perm) -> float:
    return float(np.linalg.norm(np.asarray(sats) - np.asarray(sites)[perm], axis=1).sum())


def build_snapshot(rng: np.random.Generator, config: ScenarioConfig) -> Snapshot:
    geo = config.geometry
    tel = config.telescope_pos
    bore = config.boresight_dir

    sats_all = drop_constellation(rng, config)
    elev_all = geom.elevation(tel, sats_all)
    keep = elev_all >= geo.min_elevation_rad
    sats = sats_all[keep]
    m = len(sats)

    sites = place_ground_sites(rng, config, m)
    sites = sites[assign_min_total_distance(sats, sites)]
    xi = draw_shadowing(rng, config.radio.shadowing_sigma_db, m)
    xi_b = xi if config.reciprocal_shadowing else draw_shadowing(rng, config.radio.shadowing_sigma_db, m)

    dist = np.linalg.norm(sats - tel, axis=1)
    if m:
        sat_bore = geom.normalize(sites - sats)
        theta = geom.off_axis_angle(sats, sat_bore, tel)
        phi = geom.off_axis_angle(tel, bore, sats)
    else:
        theta = phi = np.empty(0)
    fc = config.radio.carrier_hz
    gamma = channel_gain(theta, phi, dist, config.satellite_pattern, config.telescope_pattern, fc)
    gamma_b = channel_gain(theta, phi, dist, config.satellite_pattern, config.beacon_pattern, fc)

    return Snapshot(
        telescope_pos=tel,
        boresight_dir=bore,
        sat_pos=sats,
        site_pos=sites,
        distance_m=dist,
        elevation_rad=elev_all[keep],
        theta_rad=theta,
        phi_rad=phi,
        gamma=np.asarray(gamma, dtype=float).reshape(m),
        gamma_beacon=np.asarray(gamma_b, dtype=float).reshape(m),
        xi=xi,
        xi_beacon=xi_b,
        sky_distance_m=np.linalg.norm(sats - config.sky_center, axis=1),
        site_distance_m=np.asarray(geom.geodesic_distance(sites, tel, geo.earth_radius_m)).reshape(m)
        if m
        else np.empty(0),
        budget=config.budget,
        n_satellites=config.n_satellites,
    )


SNAPSHOT_COLUMNS = (
    "index", "x_m", "y_m", "z_m", "d_m", "theta_rad", "phi_rad", "gamma", "gamma_beacon", "xi",
)


def format_snapshot(snap: Snapshot) -> str:
    """Tab-separated per-satellite table (header line first)."""
    lines = ["\t".join(SNAPSHOT_COLUMNS)]
    for i in range(snap.m_inview):
        x, y, z = snap.sat_pos[i]
        vals = (x, y, z, snap.distance_m[i], snap.theta_rad[i], snap.phi_rad[i],
                snap.gamma[i], snap.gamma_beacon[i], snap.xi[i])
        lines.append("\t".join([str(i)] + [f"{v:.12e}" for v in vals]))
    return "\n".join(lines) + "\n"
