"""Fast invariant checks run by ``beaconrqz selfcheck``.

Each ``check_*`` returns ``None`` on success and raises :class:`CheckFailed`
with a diagnostic otherwise.
"""
from __future__ import annotations

import dataclasses
import time

import numpy as np

from . import policy as pol
from .antenna import bessel_j1
from .montecarlo import tb_equivalent_to_tau, trial_rng
from .scenario import (
    ScenarioConfig,
    assign_min_total_distance,
    assignment_cost,
    brute_force_assignment,
    build_snapshot,
)

# J1 at selected points, 20 significant digits (mpmath)
BESSEL_J1_REFERENCE = {
    0.5: 0.24226845767487388639,
    1.0: 0.44005058574493351596,
    2.5: 0.49709410246427403801,
    5.0: -0.32757913759146522204,
    10.0: 0.04347274616886143667,
    25.0: -0.12535024958028990465,
    50.0: -0.097511828125175137661,
}


class CheckFailed(AssertionError):
    pass


def equivalence_scenario(base: ScenarioConfig | None = None, n_satellites: int = 1000) -> ScenarioConfig:
    """Deterministic channel, beacon antenna identical to the telescope's."""
    base = base or ScenarioConfig(n_satellites=n_satellites)
    return dataclasses.replace(
        base,
        radio=dataclasses.replace(base.radio, shadowing_sigma_db=0.0),
        beacon_pattern=base.telescope_pattern,
    )


def check_equivalence(n_trials: int = 200, eta_perturb_db: float = 0.0, seed: int = 11,
                      taus=(1e-16, 1e-15, 3e-15, 1e-14)) -> int:
    """Beacon and dynamic quiet zones must silence the same links; returns the number of masks compared."""
    cfg = equivalence_scenario()
    b = cfg.budget
    taus = np.asarray(taus)
    tb = tb_equivalent_to_tau(cfg, taus)
    threshold = 10 ** ((cfg.radio.detection_threshold_db + eta_perturb_db) / 10) * b.noise_density_w_hz
    compared = 0
    for i in range(n_trials):
        snap = build_snapshot(trial_rng(seed, i), cfg)
        if snap.m_inview == 0:
            continue
        dq = pol.dynamic_qz_mask(snap, taus)
        bc = pol.beacon_mask(snap, cfg.radio.beacon_power_w, tb, threshold)
        if not np.array_equal(dq, bc):
            raise CheckFailed(f"equivalence: masks differ in trial {i}")
        if not np.array_equal(pol.aggregate_rfi(snap, dq), pol.aggregate_rfi(snap, bc)):
            raise CheckFailed(f"equivalence: aggregate RFI differs in trial {i}")
        compared += len(taus)
    return compared


def check_genie(n_instances: int = 100, max_m: int = 10, seed: int = 12) -> None:
    cfg = ScenarioConfig(n_satellites=max(1, int(max_m / 0.0397)))
    rfi_max = cfg.budget.rfi_max_w
    i = done = 0
    while done < n_instances:
        snap = build_snapshot(trial_rng(seed, i), cfg)
        i += 1
        if not 0 < snap.m_inview <= max_m:
            continue
        got = int(pol.genie_mask(snap, rfi_max).sum())
        want = pol.brute_force_max_active(snap.interference_w, rfi_max)
        if got != want:
            raise CheckFailed(f"genie: kept {got} links, exhaustive optimum is {want}")
        done += 1


def check_assignment(n_instances: int = 50, max_m: int = 8, seed: int = 13) -> None:
    rng = np.random.default_rng(seed)
    for k in range(n_instances):
        m = int(rng.integers(1, max_m + 1))
        sats = rng.normal(size=(m, 3)) * 1e6
        sites = rng.normal(size=(m, 3)) * 1e5
        perm = assign_min_total_distance(sats, sites)
        best, _ = brute_force_assignment(sats, sites)
        if not np.isclose(assignment_cost(sats, sites, perm), best, rtol=1e-12, atol=0):
            raise CheckFailed(f"assignment: instance {k} is not optimal")


def check_bessel(tol: float = 1e-10) -> None:
    for x, ref in BESSEL_J1_REFERENCE.items():
        if abs(bessel_j1(x) - ref) > tol:
            raise CheckFailed(f"bessel: J1({x}) = {bessel_j1(x)!r}, expected {ref!r}")
    if abs(bessel_j1(3.8317059702075125)) > 1e-9:
        raise CheckFailed("bessel: first zero of J1 not reproduced")


CHECKS = {
    "equivalence": check_equivalence,
    "genie": check_genie,
    "assignment": check_assignment,
    "bessel": check_bessel,
}


def run_all(log=print) -> list[str]:
    """Run every check; returns the names of failed checks."""
    failed = []
    for name, fn in CHECKS.items():
        t0 = time.perf_counter()
        try:
            fn()
        except CheckFailed as exc:
            failed.append(name)
            log(f"FAIL {name}: {exc}")
        else:
            log(f"ok   {name} ({time.perf_counter() - t0:.2f} s)")
    return failed
