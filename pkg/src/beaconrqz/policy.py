"""Mitigation policies mapping a snapshot to an active/silenced mask.

Every mask function broadcasts over a parameter grid: a scalar parameter
gives a mask of shape ``(M,)``, a ``(G,)`` grid gives ``(G, M)``. The
``apply_*`` wrappers evaluate a single parameter value and package the result
as a :class:`PolicyDecision`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .scenario import Snapshot


@dataclass(frozen=True)
class FixedQz:
    ground_radius_m: float = 0.0
    sky_radius_m: float = 0.0

    def __post_init__(self):
        if self.ground_radius_m < 0 or self.sky_radius_m < 0:
            raise ValueError("quiet-zone radii must be non-negative")


@dataclass(frozen=True)
class DynamicQz:
    tau_w: float

    def __post_init__(self):
        if not self.tau_w > 0:
            raise ValueError("tau must be positive")


@dataclass(frozen=True)
class Beacon:
    sense_duration_s: float
    beacon_power_w: float | None = None  # None: take the scenario's radio parameters
    threshold_db: float | None = None

    def __post_init__(self):
        if self.sense_duration_s < 0:
            raise ValueError("T_b must be non-negative")
        if self.beacon_power_w is not None and self.beacon_power_w < 0:
            raise ValueError("beacon power must be non-negative")


@dataclass(frozen=True)
class Genie:
    pass


PolicySpec = Union[FixedQz, DynamicQz, Beacon, Genie]


@dataclass(frozen=True, eq=False)
class PolicyDecision:
    active_mask: np.ndarray
    aggregate_rfi_w: float
    active_fraction: float
    outage: bool


def _column(values):
    v = np.asarray(values, dtype=float)
    return v[..., None] if v.ndim else v


def aggregate_rfi(snap: Snapshot, mask) -> np.ndarray | float:
    """Total received interference of the active links (last axis of ``mask``)."""
    mask = np.asarray(mask, dtype=bool)
    if mask.shape[-1:] != (snap.m_inview,):
        raise ValueError(f"mask length {mask.shape[-1:]} does not match M={snap.m_inview}")
    out = np.where(mask, snap.interference_w, 0.0).sum(axis=-1)
    return out if np.ndim(out) else float(out)


def fixed_qz_mask(snap: Snapshot, ground_radius_m, sky_radius_m):
    """Active unless the satellite is inside the sky zone or its site inside the ground zone."""
    silenced = (snap.sky_distance_m < _column(sky_radius_m)) | (
        snap.site_distance_m < _column(ground_radius_m)
    )
    return ~silenced


def dynamic_qz_mask(snap: Snapshot, tau_w):
    # deterministic gain only; shadowing is unknown to the satellite
    return snap.budget.sat_power_linear_w * snap.gamma <= _column(tau_w)


def beacon_mask(snap: Snapshot, beacon_power_w, sense_duration_s, detection_energy_j):
    """Active iff the beacon energy collected over ``T_b`` stays below ``eta N0``."""
    energy = _column(np.multiply(beacon_power_w, sense_duration_s)) * (snap.gamma_beacon * snap.xi_beacon)
    return energy < detection_energy_j


def genie_mask(snap: Snapshot, rfi_max_w: float) -> np.ndarray:
    """Keep the smallest interferers while the running total stays below ``rfi_max_w``."""
    interference = snap.interference_w
    order = np.argsort(interference, kind="stable")
    k = int(np.searchsorted(np.cumsum(interference[order]), rfi_max_w, side="left"))
    mask = np.zeros(snap.m_inview, dtype=bool)
    mask[order[:k]] = True
    # the index-order sum can round differently from the sorted prefix sum
    while k and aggregate_rfi(snap, mask) >= rfi_max_w:
        k -= 1
        mask[order[k]] = False
    return mask


def _decide(snap: Snapshot, mask: np.ndarray) -> PolicyDecision:
    rfi = aggregate_rfi(snap, mask)
    m = snap.m_inview
    return PolicyDecision(
        active_mask=mask,
        aggregate_rfi_w=rfi,
        active_fraction=float(mask.sum() / m) if m else 1.0,
        outage=bool(rfi >= snap.budget.rfi_max_w),
    )


def apply_fixed_qz(snap: Snapshot, ground_radius_m: float, sky_radius_m: float) -> PolicyDecision:
    return _decide(snap, fixed_qz_mask(snap, ground_radius_m, sky_radius_m))


def apply_dynamic_qz(snap: Snapshot, tau_w: float) -> PolicyDecision:
    return _decide(snap, dynamic_qz_mask(snap, tau_w))


def apply_beacon(snap: Snapshot, beacon_power_w, sense_duration_s, eta_db, n0_w_hz) -> PolicyDecision:
    threshold = 10 ** (eta_db / 10) * n0_w_hz
    return _decide(snap, beacon_mask(snap, beacon_power_w, sense_duration_s, threshold))


def apply_genie(snap: Snapshot, rfi_max_w: float) -> PolicyDecision:
    return _decide(snap, genie_mask(snap, rfi_max_w))


def evaluate(snap: Snapshot, spec: PolicySpec, radio=None) -> PolicyDecision:
    """Dispatch on the policy type; ``radio`` supplies beacon defaults."""
    if isinstance(spec, FixedQz):
        return apply_fixed_qz(snap, spec.ground_radius_m, spec.sky_radius_m)
    if isinstance(spec, DynamicQz):
        return apply_dynamic_qz(snap, spec.tau_w)
    if isinstance(spec, Beacon):
        p_b = spec.beacon_power_w if spec.beacon_power_w is not None else radio.beacon_power_w
        eta = spec.threshold_db if spec.threshold_db is not None else radio.detection_threshold_db
        return apply_beacon(snap, p_b, spec.sense_duration_s, eta, snap.budget.noise_density_w_hz)
    if isinstance(spec, Genie):
        return apply_genie(snap, snap.budget.rfi_max_w)
    raise TypeError(f"unknown policy {spec!r}")


def brute_force_max_active(interference, budget_w: float) -> int:
    """Largest number of links whose total stays below ``budget_w``, by enumerating all subsets."""
    interference = np.asarray(interference, dtype=float)
    m = len(interference)
    if m > 20:
        raise ValueError("exhaustive search is limited to 20 links")
    subsets = (np.arange(1 << m)[:, None] >> np.arange(m)) & 1
    feasible = subsets @ interference < budget_w
    return int(subsets[feasible].sum(axis=1).max())
