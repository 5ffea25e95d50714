import numpy as np
import pytest

from oracles import grid_search_2d
from xlradar import (EstimatorConfig, RadarParams, Scenario, SignatureEstimate,
                     Target, compensate_swe, estimate_narrowband,
                     estimate_wideband, match_signatures, synth_narrowband,
                     synth_wideband)


def scen(M, N, targets, alpha=0.1, sigma=0.0, seed=0):
    p = RadarParams.automotive(M=M, N=N, alpha=alpha)
    return Scenario(params=p, targets=tuple(targets), noise_sigma=sigma,
                    seed=seed)


def sig(ot, orr, amp=1.0 + 0j):
    return SignatureEstimate(omega_theta=ot, omega_r=orr, amplitude=amp,
                             group_id=0)


# -- compensation ------------------------------------------------------------

def test_compensation_with_true_angle_is_exact():
    sc = scen(64, 64, [Target(omega_r=0.37, omega_theta=0.29)], alpha=0.2)
    Y_wb = synth_wideband(sc)
    Y_nb = synth_narrowband(sc)
    Yc = compensate_swe(Y_wb, 0.29, 0.2)
    assert np.abs(Yc.data - Y_nb.data).max() < 1e-12


def test_compensation_residue_shrinks_with_angle_error():
    sc = scen(64, 64, [Target(omega_r=0.37, omega_theta=0.29)], alpha=0.2)
    Y_wb = synth_wideband(sc)
    Y_nb = synth_narrowband(sc)
    errs = [np.abs(compensate_swe(Y_wb, 0.29 + e, 0.2).data - Y_nb.data).max()
            for e in (0.1, 0.01, 0.001)]
    assert errs[0] > errs[1] > errs[2]


# -- narrowband estimator ----------------------------------------------------

def test_single_target_recovered_precisely():
    t = Target(omega_r=0.317, omega_theta=0.123, amplitude=1.5 - 0.5j)
    sc = scen(32, 32, [t])
    sigs = estimate_narrowband(synth_narrowband(sc),
                               EstimatorConfig(max_targets=1))
    assert len(sigs) == 1
    s = sigs[0]
    assert s.omega_theta == pytest.approx(0.123, abs=1e-6)
    assert s.omega_r == pytest.approx(0.317, abs=1e-6)
    assert s.amplitude == pytest.approx(1.5 - 0.5j, abs=1e-6)


def test_shared_range_group_yields_two_angles():
    # two targets at identical range frequency must come out of one group
    targets = [Target(omega_r=0.4, omega_theta=0.1),
               Target(omega_r=0.4, omega_theta=-0.2)]
    sigs = estimate_narrowband(synth_narrowband(scen(64, 64, targets)),
                               EstimatorConfig(max_targets=2))
    assert len(sigs) == 2
    assert len({s.group_id for s in sigs}) == 1
    got = sorted(s.omega_theta for s in sigs)
    assert got[0] == pytest.approx(-0.2, abs=1e-6)
    assert got[1] == pytest.approx(0.1, abs=1e-6)
    for s in sigs:
        assert s.omega_r == pytest.approx(0.4, abs=1e-6)


def test_narrowband_matches_2d_oracle():
    rng = np.random.default_rng(11)
    M = N = 32
    for _ in range(10):
        K = int(rng.integers(1, 4))
        ot = np.sort(rng.uniform(-0.45, 0.45, size=K))
        orr = np.sort(rng.uniform(0.05, 0.95, size=K))
        while K > 1 and (np.diff(ot).min() < 3 / M or np.diff(orr).min() < 3 / N):
            ot = np.sort(rng.uniform(-0.45, 0.45, size=K))
            orr = np.sort(rng.uniform(0.05, 0.95, size=K))
        targets = [Target(omega_r=r, omega_theta=t) for t, r in zip(ot, orr)]
        Y = synth_narrowband(scen(M, N, targets))
        sigs = estimate_narrowband(Y, EstimatorConfig(max_targets=K))
        oracle = grid_search_2d(Y.data, K)
        got = sorted((s.omega_theta, s.omega_r) for s in sigs)
        assert len(got) == K
        for (gt, gr), (et, er, _) in zip(got, oracle):
            assert gt == pytest.approx(et, abs=1 / (16 * M))
            assert gr == pytest.approx(er, abs=1 / (16 * N))


def test_unknown_sparsity_stops_on_residual():
    targets = [Target(omega_r=0.2, omega_theta=0.1),
               Target(omega_r=0.6, omega_theta=-0.3)]
    sigs = estimate_narrowband(synth_narrowband(scen(48, 48, targets)),
                               EstimatorConfig(residual_tol=1e-4))
    assert len(sigs) == 2


# -- wideband estimator ------------------------------------------------------

def test_zero_alpha_wideband_equals_narrowband_estimates():
    targets = [Target(omega_r=0.25, omega_theta=0.15),
               Target(omega_r=0.55, omega_theta=-0.35)]
    sc = scen(48, 48, targets, alpha=0.0)
    cfg = EstimatorConfig(max_targets=2)
    nb = estimate_narrowband(synth_narrowband(sc), cfg)
    wb = estimate_wideband(synth_wideband(sc), cfg)
    got_nb = sorted((s.omega_theta, s.omega_r) for s in nb)
    got_wb = sorted((s.omega_theta, s.omega_r) for s in wb)
    for (nt, nr), (wt, wr) in zip(got_nb, got_wb):
        assert wt == pytest.approx(nt, abs=1e-5)
        assert wr == pytest.approx(nr, abs=1e-5)


def test_wideband_single_target_with_strong_coupling():
    t = Target(omega_r=0.31, omega_theta=0.44, amplitude=0.8 + 0.3j)
    sc = scen(64, 64, [t], alpha=0.3)
    sigs = estimate_wideband(synth_wideband(sc), EstimatorConfig(max_targets=1))
    assert len(sigs) == 1
    assert sigs[0].omega_theta == pytest.approx(0.44, abs=1e-6)
    assert sigs[0].omega_r == pytest.approx(0.31, abs=1e-6)
    assert sigs[0].amplitude == pytest.approx(0.8 + 0.3j, abs=1e-5)


def test_wideband_snapshot_window_guard():
    sc = scen(256, 8, [Target(omega_r=0.3, omega_theta=0.2)], alpha=0.3)
    with pytest.raises(ValueError, match="snapshot window"):
        estimate_wideband(synth_wideband(sc),
                          EstimatorConfig(max_targets=1, snapshots=8))


def test_wideband_close_angles_resolved():
    # 1.5 spatial bins apart: unresolvable for a plain DFT, separable here
    M = N = 128
    targets = [Target(omega_r=0.30, omega_theta=0.400),
               Target(omega_r=0.45, omega_theta=0.400 + 1.5 / M)]
    sc = scen(M, N, targets, alpha=0.1)
    sigs = estimate_wideband(synth_wideband(sc), EstimatorConfig(max_targets=2))
    report = match_signatures(targets, sigs, tol_theta=0.005, tol_r=0.005)
    assert report.n_matched == 2
    assert report.false_alarms == ()


# -- matching ----------------------------------------------------------------

def test_match_perfect():
    truth = [Target(omega_r=0.2, omega_theta=0.1),
             Target(omega_r=0.6, omega_theta=-0.3)]
    ests = [sig(-0.3, 0.6), sig(0.1, 0.2)]
    r = match_signatures(truth, ests, 0.01, 0.01)
    assert r.n_matched == 2 and r.misses == () and r.false_alarms == ()
    assert r.rmse_theta == pytest.approx(0.0)
    assert r.rmse_r == pytest.approx(0.0)


def test_match_miss_and_false_alarm():
    truth = [Target(omega_r=0.2, omega_theta=0.1)]
    ests = [sig(0.4, 0.8)]
    r = match_signatures(truth, ests, 0.01, 0.01)
    assert r.n_matched == 0
    assert r.misses == (0,) and r.false_alarms == (0,)
    assert np.isnan(r.rmse_theta) and np.isnan(r.rmse_r)


def test_match_is_one_to_one():
    truth = [Target(omega_r=0.2, omega_theta=0.1),
             Target(omega_r=0.201, omega_theta=0.101)]
    ests = [sig(0.1, 0.2)]
    r = match_signatures(truth, ests, 0.01, 0.01)
    assert r.n_matched == 1
    assert r.misses == (1,)


def test_match_tolerance_boundary_and_errors():
    truth = [Target(omega_r=0.2, omega_theta=0.1)]
    assert match_signatures(truth, [sig(0.1 + 0.009, 0.2)], 0.01, 0.01).n_matched == 1
    assert match_signatures(truth, [sig(0.1 + 0.011, 0.2)], 0.01, 0.01).n_matched == 0
    with pytest.raises(ValueError):
        match_signatures(truth, [], -0.1, 0.01)


def test_match_rmse_values():
    truth = [Target(omega_r=0.2, omega_theta=0.1),
             Target(omega_r=0.6, omega_theta=-0.3)]
    ests = [sig(0.1 + 3e-3, 0.2), sig(-0.3, 0.6 + 4e-3)]
    r = match_signatures(truth, ests, 0.01, 0.01)
    assert r.rmse_theta == pytest.approx(3e-3 / np.sqrt(2))
    assert r.rmse_r == pytest.approx(4e-3 / np.sqrt(2))
