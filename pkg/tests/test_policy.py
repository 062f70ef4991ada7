import dataclasses
import functools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from beaconrqz import policy as pol
from beaconrqz.montecarlo import tb_equivalent_to_tau, trial_rng
from beaconrqz.scenario import ScenarioConfig, build_snapshot
from beaconrqz.selfcheck import CheckFailed, check_equivalence

PER_LINK = ("sat_pos", "site_pos", "distance_m", "elevation_rad", "theta_rad", "phi_rad", "gamma",
            "gamma_beacon", "xi", "xi_beacon", "sky_distance_m", "site_distance_m")


def subset(snap, idx):
    """The same snapshot restricted to links ``idx``."""
    return dataclasses.replace(snap, **{k: getattr(snap, k)[idx] for k in PER_LINK})


@functools.lru_cache(maxsize=None)
def _template():
    return build_snapshot(trial_rng(0, 0), ScenarioConfig())


@pytest.fixture(scope="module")
def snap(snapshots):
    return snapshots[0]


# -- fixed quiet zone --------------------------------------------------------


def test_fixed_qz_zero_radii_keeps_all(snapshots):
    for s in snapshots[:20]:
        assert pol.apply_fixed_qz(s, 0.0, 0.0).active_mask.all()


def test_fixed_qz_full_sky_silences_all(snapshots):
    for s in snapshots[:20]:
        d = pol.apply_fixed_qz(s, 0.0, 5407.7e3)
        assert not d.active_mask.any()
        assert d.aggregate_rfi_w == 0.0 and not d.outage


def test_fixed_qz_ground_zone_covers_cap(snapshots):
    # every site lies within 100 km of the telescope
    for s in snapshots[:20]:
        assert not pol.fixed_qz_mask(s, 100e3 + 1.0, 0.0).any()


def test_fixed_qz_is_union_of_zones(snap):
    v, l = 1500e3, 60e3
    m = pol.fixed_qz_mask(snap, l, v)
    expected = (snap.sky_distance_m >= v) & (snap.site_distance_m >= l)
    assert np.array_equal(m, expected)


def test_fixed_qz_monotone_in_sky_radius(snapshots):
    grid = np.linspace(0, 5e6, 40)
    for s in snapshots[:30]:
        rfi = pol.aggregate_rfi(s, pol.fixed_qz_mask(s, 50e3, grid))
        assert np.all(np.diff(rfi) <= 0)


# -- dynamic quiet zone ------------------------------------------------------


def test_dynamic_qz_limits(snap):
    assert pol.apply_dynamic_qz(snap, 1e30).active_mask.all()
    assert not pol.apply_dynamic_qz(snap, 1e-300).active_mask.any()


def test_dynamic_qz_indicator(snap):
    tau = 1e-15
    ps = snap.budget.sat_power_linear_w
    expected = [ps * g <= tau for g in snap.gamma]
    assert list(pol.dynamic_qz_mask(snap, tau)) == expected


def test_dynamic_qz_ignores_shadowing(snap):
    other = dataclasses.replace(snap, xi=snap.xi * 50.0)
    assert np.array_equal(pol.dynamic_qz_mask(snap, 3e-15), pol.dynamic_qz_mask(other, 3e-15))


def test_dynamic_qz_monotone_in_tau(snapshots):
    taus = np.geomspace(1e-18, 1e-13, 50)
    for s in snapshots[:30]:
        masks = pol.dynamic_qz_mask(s, taus)
        # the active set grows with tau
        assert np.all(masks[:-1] <= masks[1:])


# -- beacon ------------------------------------------------------------------


def test_beacon_zero_sensing_keeps_all(snapshots):
    for s in snapshots[:20]:
        d = pol.evaluate(s, pol.Beacon(0.0), ScenarioConfig().radio)
        assert d.active_mask.all()


def test_beacon_threshold_value(default_config):
    assert default_config.budget.detection_energy_j == pytest.approx(5.03e-20, rel=1e-3)


def test_beacon_rule(snap):
    b = snap.budget
    p_b, tb = 0.01, 0.05
    expected = p_b * tb * snap.gamma_beacon * snap.xi_beacon < b.detection_energy_j
    got = pol.apply_beacon(snap, p_b, tb, 9.6, b.noise_density_w_hz).active_mask
    assert np.array_equal(got, expected)


def test_beacon_monotone_in_sensing_time(snapshots):
    tbs = np.linspace(0, 1.0, 60)
    for s in snapshots[:30]:
        masks = pol.beacon_mask(s, 0.01, tbs, s.budget.detection_energy_j)
        assert np.all(masks[:-1] >= masks[1:])


def test_beacon_matches_dynamic_qz_single_instance():
    from beaconrqz.selfcheck import equivalence_scenario

    cfg = equivalence_scenario()
    s = build_snapshot(trial_rng(31, 0), cfg)
    tau = 2e-15
    tb = float(tb_equivalent_to_tau(cfg, tau))
    dq = pol.evaluate(s, pol.DynamicQz(tau))
    bc = pol.evaluate(s, pol.Beacon(tb), cfg.radio)
    assert np.array_equal(dq.active_mask, bc.active_mask)
    assert dq.aggregate_rfi_w == bc.aggregate_rfi_w


def test_equivalence_check_passes_and_counts():
    assert check_equivalence(n_trials=30) > 0


def test_equivalence_check_detects_threshold_error():
    with pytest.raises(CheckFailed):
        check_equivalence(n_trials=50, eta_perturb_db=1.0)


# -- genie ---------------------------------------------------------------------


def test_genie_everything_fits(snap):
    budget = snap.interference_w.sum() * 1.01
    assert pol.genie_mask(snap, budget).all()


def test_genie_nothing_fits(snap):
    budget = snap.interference_w.min() * 0.99
    assert not pol.genie_mask(snap, budget).any()
    assert not pol.genie_mask(snap, 0.0).any()


def test_genie_never_in_outage(snapshots):
    for s in snapshots:
        d = pol.evaluate(s, pol.Genie())
        assert not d.outage
        assert d.aggregate_rfi_w < s.budget.rfi_max_w


@pytest.mark.parametrize("seed", range(40))
def test_genie_matches_exhaustive_search(seed):
    cfg = ScenarioConfig(n_satellites=300)
    s = build_snapshot(trial_rng(seed, 0), cfg)
    if s.m_inview > 15:
        s = subset(s, np.arange(15))
    got = int(pol.genie_mask(s, s.budget.rfi_max_w).sum())
    assert got == pol.brute_force_max_active(s.interference_w, s.budget.rfi_max_w)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(1e-20, 1e-13), min_size=1, max_size=12), st.floats(1e-16, 1e-13))
def test_genie_optimal_on_arbitrary_interference(values, budget):
    s = subset(_template(), np.zeros(len(values), dtype=int))
    ps = s.budget.sat_power_linear_w
    s = dataclasses.replace(s, gamma=np.asarray(values) / ps, xi=np.ones(len(values)))
    mask = pol.genie_mask(s, budget)
    assert pol.aggregate_rfi(s, mask) < budget or not mask.any()
    assert int(mask.sum()) == pol.brute_force_max_active(s.interference_w, budget)


def test_genie_ties_are_deterministic(snap):
    s = subset(snap, np.zeros(6, dtype=int))  # six identical links
    budget = 3.5 * s.interference_w[0]
    mask = pol.genie_mask(s, budget)
    assert list(mask) == [True, True, True, False, False, False]


# -- aggregate -------------------------------------------------------------------


def test_aggregate_empty(snap):
    empty = subset(snap, np.array([], dtype=int))
    assert pol.aggregate_rfi(empty, np.zeros(0, dtype=bool)) == 0.0
    d = pol.evaluate(empty, pol.Genie())
    assert d.active_fraction == 1.0 and not d.outage


def test_aggregate_singleton(snap):
    one = subset(snap, np.array([2]))
    assert pol.aggregate_rfi(one, [True]) == one.interference_w[0]
    assert pol.aggregate_rfi(one, [False]) == 0.0


def test_aggregate_monotone_in_active_set(snap):
    rng = np.random.default_rng(0)
    for _ in range(50):
        a = rng.random(snap.m_inview) < 0.5
        b = a | (rng.random(snap.m_inview) < 0.3)
        assert pol.aggregate_rfi(snap, b) >= pol.aggregate_rfi(snap, a)


def test_aggregate_rejects_wrong_length(snap):
    with pytest.raises(ValueError):
        pol.aggregate_rfi(snap, np.ones(snap.m_inview + 1, dtype=bool))


def test_outage_uses_non_strict_threshold(snap):
    one = subset(snap, np.array([0]))
    one = dataclasses.replace(one, gamma=np.array([one.budget.rfi_max_w / one.budget.sat_power_linear_w]),
                              xi=np.ones(1))
    d = pol.apply_dynamic_qz(one, 1.0)
    assert d.aggregate_rfi_w == pytest.approx(one.budget.rfi_max_w, rel=1e-15)
    assert d.outage == (d.aggregate_rfi_w >= one.budget.rfi_max_w)


def test_policy_spec_validation():
    with pytest.raises(ValueError):
        pol.FixedQz(-1.0, 0.0)
    with pytest.raises(ValueError):
        pol.DynamicQz(0.0)
    with pytest.raises(ValueError):
        pol.Beacon(-1e-3)
    with pytest.raises(TypeError):
        pol.evaluate(None, object())


def test_single_link_beacon_matches_genie():
    base = ScenarioConfig(n_satellites=1)
    cfg = dataclasses.replace(base, beacon_pattern=base.telescope_pattern)
    b = cfg.budget
    p_b = cfg.radio.beacon_power_w
    tb = b.detection_energy_j * b.sat_power_linear_w / (b.rfi_max_w * p_b)
    seen = 0
    for i in range(3000):
        s = build_snapshot(trial_rng(41, i), cfg)
        if s.m_inview != 1:
            continue
        seen += 1
        beacon = pol.evaluate(s, pol.Beacon(tb), cfg.radio).active_mask
        assert np.array_equal(beacon, pol.genie_mask(s, b.rfi_max_w))
    assert seen > 50
