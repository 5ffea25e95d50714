"""Range-first decoupled super-resolution on the three-target narrowband
scene.

Three targets on a 64x64 grid, all off the natural frequency grid, and two
of them sharing a range bin.  A 2D FFT would resolve them only to bin
accuracy; the decoupled estimator recovers both frequencies of every
target to well below a thousandth of a cycle, grouping the two range-
coincident targets automatically.

Run:  python3 demos/narrowband_superres.py
"""

from xlradar import (estimate_narrowband, load_scenario, match_signatures,
                     synth_narrowband)

SCENARIO = "scenarios/narrowband_three_targets.scn"


def main():
    loaded = load_scenario(SCENARIO)
    truth = loaded.scenario.targets
    Y = synth_narrowband(loaded.scenario)
    sigs = estimate_narrowband(Y, loaded.estimator)

    print(f"{len(truth)} targets, {len(sigs)} recovered signatures, "
          f"{len({s.group_id for s in sigs})} range groups\n")
    print("  group    omega_theta      omega_r        |amp|")
    for s in sigs:
        print(f"  {s.group_id:5d}  {s.omega_theta:+12.8f}  "
              f"{s.omega_r:12.8f}  {abs(s.amplitude):10.6f}")

    report = match_signatures(truth, sigs, tol_theta=1e-3, tol_r=1e-3)
    print(f"\nmatched {report.n_matched}/{len(truth)} at tolerance 1e-3, "
          f"{len(report.false_alarms)} false alarms")
    print(f"rmse: angle {report.rmse_theta:.2e}, range {report.rmse_r:.2e} "
          f"cycles (one 2D-FFT bin is {1 / 64:.4f})")


if __name__ == "__main__":
    main()
