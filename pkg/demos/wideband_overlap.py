"""The overlap regime: threshold clustering loses a target, the decoupled
wideband estimator does not.

Three physical targets; the two far ones sit at close ranges and very
close angles, and under the spatial-wideband coupling their smeared
range-angle responses merge into one connected blob.  The conventional
pipeline (threshold the 2D map, 8-connected clustering, one detection per
cluster) therefore reports two targets.  The decoupled estimator works on
squint-free slices instead of the blurred map and separates all three.

Run:  python3 demos/wideband_overlap.py
"""

from xlradar import (detect_clusters, estimate_wideband, load_scenario,
                     match_signatures, peaks_to_signatures, range_angle_map,
                     synth_wideband)

SCENARIO = "scenarios/overlap_nonsep.scn"


def main():
    loaded = load_scenario(SCENARIO)
    truth = loaded.scenario.targets
    print("ground truth:")
    for t in truth:
        print(f"  range {t.range_m:5.2f} m at {t.theta_deg:5.1f} deg  ->  "
              f"omega_theta={t.omega_theta:.4f}, omega_r={t.omega_r:.4f}")

    Y = synth_wideband(loaded.scenario)
    grid = range_angle_map(Y)
    clusters = detect_clusters(grid, loaded.rel_threshold)
    base_sigs = peaks_to_signatures(clusters, grid)
    print(f"\nbaseline (threshold {loaded.rel_threshold} + clustering): "
          f"{len(clusters)} clusters")
    for s in base_sigs:
        print(f"  peak at omega_theta={s.omega_theta:+.4f}, "
              f"omega_r={s.omega_r:.4f}")
    base_report = match_signatures(truth, base_sigs, 0.01, 0.01)
    print(f"  -> {base_report.n_matched}/{len(truth)} matched at tol 0.01: "
          f"one target is absorbed into its neighbour's cluster, and the "
          f"coupling biases the surviving peaks off truth")

    sigs = estimate_wideband(Y, loaded.estimator)
    print(f"\ndecoupled wideband estimator: {len(sigs)} signatures")
    for s in sigs:
        print(f"  omega_theta={s.omega_theta:+.6f}, omega_r={s.omega_r:.6f}, "
              f"|amp|={abs(s.amplitude):.4f}")
    report = match_signatures(truth, sigs, 0.01, 0.01)
    print(f"  -> {report.n_matched}/{len(truth)} matched, "
          f"{len(report.false_alarms)} false alarms, "
          f"rmse angle {report.rmse_theta:.2e} / range {report.rmse_r:.2e}")


if __name__ == "__main__":
    main()
