import numpy as np
import pytest

from xlradar import (MapGrid, RadarParams, Scenario, Target, detect_clusters,
                     peaks_to_signatures, range_angle_map, synth_narrowband,
                     synth_wideband)


def scen(M, N, targets, alpha=0.1):
    p = RadarParams.automotive(M=M, N=N, alpha=alpha)
    return Scenario(params=p, targets=tuple(targets))


def test_separated_on_grid_targets_give_one_cluster_each():
    M = N = 64
    targets = [Target(omega_r=10 / N, omega_theta=8 / M),
               Target(omega_r=40 / N, omega_theta=-20 / M),
               Target(omega_r=55 / N, omega_theta=25 / M)]
    grid = range_angle_map(synth_narrowband(scen(M, N, targets)))
    clusters = detect_clusters(grid, 0.3)
    assert len(clusters) == 3
    peaks = {c.peak for c in clusters}
    assert peaks == {(8, 10), (44, 40), (25, 55)}
    for c in clusters:
        assert abs(c.centroid[0] - c.peak[0]) < 1.0
        assert abs(c.centroid[1] - c.peak[1]) < 1.0
        assert c.peak in c.members


def test_clusters_sorted_by_peak_magnitude():
    M = N = 32
    targets = [Target(omega_r=5 / N, omega_theta=4 / M, amplitude=1.0),
               Target(omega_r=20 / N, omega_theta=-10 / M, amplitude=3.0)]
    clusters = detect_clusters(range_angle_map(synth_narrowband(scen(M, N, targets))))
    assert clusters[0].peak == (22, 20)
    assert clusters[0].peak_magnitude > clusters[1].peak_magnitude


def test_mask_shrinks_with_threshold():
    M = N = 32
    targets = [Target(omega_r=5 / N, omega_theta=4 / M)]
    grid = range_angle_map(synth_narrowband(scen(M, N, targets)))
    sizes = [sum(len(c.members) for c in detect_clusters(grid, t))
             for t in (0.1, 0.3, 0.6, 0.9)]
    assert sizes == sorted(sizes, reverse=True)


def test_all_zero_map_and_bad_threshold():
    grid = MapGrid(np.zeros((4, 4)), "angle-bin", "range-bin", 0.25, 0.25)
    assert detect_clusters(grid) == []
    with pytest.raises(ValueError):
        detect_clusters(grid, 0.0)
    with pytest.raises(ValueError):
        detect_clusters(grid, 1.0)


def test_signatures_wrap_negative_angles():
    M = N = 32
    targets = [Target(omega_r=20 / N, omega_theta=-8 / M)]
    grid = range_angle_map(synth_narrowband(scen(M, N, targets)))
    sigs = peaks_to_signatures(detect_clusters(grid), grid)
    assert len(sigs) == 1
    assert sigs[0].omega_theta == pytest.approx(-8 / M)
    assert sigs[0].omega_r == pytest.approx(20 / N)


def test_wideband_coupling_merges_close_targets():
    # under strong coupling the smeared responses of two nearby targets fuse
    # into a single connected component: the baseline failure mode
    M = N = 256
    targets = [Target(omega_r=0.42, omega_theta=0.492),
               Target(omega_r=0.45, omega_theta=0.498)]
    grid = range_angle_map(synth_wideband(scen(M, N, targets, alpha=0.1)))
    assert len(detect_clusters(grid, 0.3)) == 1
