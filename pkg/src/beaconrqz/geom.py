"""Spherical Earth / orbital shell geometry.

All positions are ECEF-like Cartesian vectors in meters with the Earth center
at the origin. Functions accept a single ``(3,)`` vector or a stack of shape
``(..., 3)`` wherever that is natural.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EARTH_RADIUS_M = 6_371_000.0
SAT_ALTITUDE_M = 550_000.0


class DegenerateGeometry(ValueError):
    """Raised when a geometric quantity is undefined (coincident points, no intersection)."""


@dataclass(frozen=True)
class GeometryConstants:
    earth_radius_m: float = EARTH_RADIUS_M
    satellite_altitude_m: float = SAT_ALTITUDE_M
    min_elevation_rad: float = 0.0

    def __post_init__(self):
        if not self.earth_radius_m > 0:
            raise ValueError("earth_radius_m must be positive")
        if not self.satellite_altitude_m > 0:
            raise ValueError("satellite_altitude_m must be positive")
        if not 0.0 <= self.min_elevation_rad < np.pi / 2:
            raise ValueError("min_elevation_rad must be in [0, pi/2)")

    @property
    def shell_radius_m(self) -> float:
        return self.earth_radius_m + self.satellite_altitude_m

    @property
    def visible_cap_fraction(self) -> float:
        """Fraction of the shell above the horizon of a ground site at elevation mask 0."""
        return 0.5 * (1.0 - self.earth_radius_m / self.shell_radius_m)

    @property
    def horizon_slant_range_m(self) -> float:
        h, re = self.satellite_altitude_m, self.earth_radius_m
        return float(np.sqrt(h * (2 * re + h)))


def normalize(v):
    v = np.asarray(v, dtype=float)
    n = np.linalg.norm(v, axis=-1, keepdims=True)
    if np.any(n == 0):
        raise DegenerateGeometry("cannot normalize a zero vector")
    return v / n


def latlon_to_ecef(lat_rad: float, lon_rad: float, radius: float) -> np.ndarray:
    cl = np.cos(lat_rad)
    return radius * np.array([cl * np.cos(lon_rad), cl * np.sin(lon_rad), np.sin(lat_rad)])


def enu_basis(site) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Local (east, north, up) unit vectors at ``site``.

    At the poles east is taken along +y, which keeps the basis right-handed.
    """
    up = normalize(site)
    east = np.cross([0.0, 0.0, 1.0], up)
    if np.linalg.norm(east) < 1e-12:
        east = np.array([0.0, 1.0, 0.0])
    east = normalize(east)
    north = np.cross(up, east)
    return east, north, up


def look_direction(site, azimuth_rad: float, elevation_rad: float) -> np.ndarray:
    """Unit pointing vector at ``site`` for azimuth (from north, toward east) and elevation."""
    east, north, up = enu_basis(site)
    ce = np.cos(elevation_rad)
    d = ce * np.sin(azimuth_rad) * east + ce * np.cos(azimuth_rad) * north + np.sin(elevation_rad) * up
    return normalize(d)


def sample_uniform_sphere(rng: np.random.Generator, radius: float, size: int | None = None) -> np.ndarray:
    """Area-uniform point(s) on a sphere of ``radius`` (normalized Gaussian draws)."""
    shape = (3,) if size is None else (size, 3)
    g = rng.standard_normal(shape)
    return radius * g / np.linalg.norm(g, axis=-1, keepdims=True)


def _tangent_basis(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = normalize(np.cross(u, a))
    e2 = np.cross(u, e1)
    return e1, e2


def sample_uniform_cap(
    rng: np.random.Generator,
    center,
    max_geodesic_m: float,
    radius: float,
    size: int | None = None,
) -> np.ndarray:
    """Area-uniform point(s) within geodesic distance ``max_geodesic_m`` of ``center``.

    The cosine of the central angle is uniform on ``[cos(alpha), 1]`` and the
    azimuth uniform on ``[0, 2*pi)``.
    """
    center = np.asarray(center, dtype=float)
    if max_geodesic_m < 0 or max_geodesic_m >= np.pi * radius:
        raise ValueError("max_geodesic_m must lie in [0, pi*radius)")
    n = 1 if size is None else size
    if max_geodesic_m == 0:
        out = np.tile(center, (n, 1))
        return out[0] if size is None else out
    u = normalize(center)
    e1, e2 = _tangent_basis(u)
    cos_alpha = np.cos(max_geodesic_m / radius)
    cos_c = rng.uniform(cos_alpha, 1.0, n)
    az = rng.uniform(0.0, 2 * np.pi, n)
    sin_c = np.sqrt(np.clip(1.0 - cos_c**2, 0.0, None))
    pts = radius * (
        cos_c[:, None] * u + sin_c[:, None] * (np.cos(az)[:, None] * e1 + np.sin(az)[:, None] * e2)
    )
    return pts[0] if size is None else pts


def geodesic_distance(a, b, radius: float):
    """Great-circle distance between points on a sphere of ``radius``."""
    ua, ub = normalize(a), normalize(b)
    # atan2 form is accurate for both tiny and near-antipodal separations
    cross = np.linalg.norm(np.cross(ua, ub), axis=-1)
    dot = np.sum(ua * ub, axis=-1)
    return radius * np.arctan2(cross, dot)


def elevation(site, sat):
    """Elevation angle(s) of ``sat`` above the local horizontal plane at ``site``."""
    site = np.asarray(site, dtype=float)
    sat = np.asarray(sat, dtype=float)
    rel = sat - site
    rng_ = np.linalg.norm(rel, axis=-1)
    if np.any(rng_ == 0):
        raise DegenerateGeometry("satellite coincides with site")
    up = normalize(site)
    s = np.sum(rel * up, axis=-1) / rng_
    return np.arcsin(np.clip(s, -1.0, 1.0))


def is_visible(site, sat, min_elevation_rad: float = 0.0):
    return elevation(site, sat) >= min_elevation_rad


def off_axis_angle(apex, boresight_dir, target):
    """Angle in ``[0, pi]`` between ``boresight_dir`` and the ray from ``apex`` to ``target``.

    Broadcasts over leading dimensions.
    """
    rel = np.asarray(target, dtype=float) - np.asarray(apex, dtype=float)
    rel_n = np.linalg.norm(rel, axis=-1)
    if np.any(rel_n == 0):
        raise DegenerateGeometry("degenerate geometry: apex coincides with target")
    b = np.asarray(boresight_dir, dtype=float)
    cross = np.linalg.norm(np.cross(b, rel), axis=-1)
    dot = np.sum(b * rel, axis=-1)
    return np.arctan2(cross, dot)


def boresight_shell_intersection(site, boresight_dir, shell_radius: float) -> np.ndarray:
    """Point where the ray ``site + t*boresight_dir`` (t > 0) leaves the sphere of ``shell_radius``."""
    site = np.asarray(site, dtype=float)
    b = normalize(boresight_dir)
    if np.linalg.norm(site) >= shell_radius:
        raise ValueError("site must lie strictly inside the shell")
    # the ray would hit the ground first
    if np.dot(b, normalize(site)) < -1e-12:
        raise DegenerateGeometry("boresight below horizon")
    # |s + t b|^2 = R^2  ->  t^2 + 2 (s.b) t + |s|^2 - R^2 = 0
    sb = float(np.dot(site, b))
    c = float(np.dot(site, site)) - shell_radius**2
    t = -sb + np.sqrt(sb * sb - c)
    return site + t * b
