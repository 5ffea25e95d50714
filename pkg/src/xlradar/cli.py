"""Scenario-file driven command line front end.

Subcommands::

    xlradar synth    --scenario S --model narrowband|wideband|exact --out Y.csv
    xlradar map      --scenario S --view range_angle|angle_time|range_antenna --out M.csv
    xlradar estimate --scenario S --method decoupled|baseline --out sig.csv
    xlradar bench    --sweep W --out bench.csv

Exit codes: 0 success (zero detections is still success), 2 parse or
configuration error, 3 I/O error.  Output files are deterministic given the
scenario and seed; wall-clock timings go to stderr (and, for bench, a
timing sidecar) so the primary artifacts stay byte-reproducible.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from dataclasses import replace

import numpy as np

from . import baseline as bl
from .estimate import (EstimatorConfig, estimate_narrowband,
                       estimate_wideband, match_signatures)
from .model import RadarParams, Scenario
from .scenario_io import (LoadedScenario, ScenarioError, _fmt, _parse_sections,
                          load_scenario, read_matrix_csv, write_map_csv,
                          write_matrix_csv)
from .spectral import angle_time_map, range_angle_map, range_antenna_map
from .synth import synth_exact, synth_narrowband, synth_wideband

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3

_SYNTH = {"narrowband": synth_narrowband, "wideband": synth_wideband,
          "exact": synth_exact}
_VIEWS = {"range_angle": range_angle_map, "angle_time": angle_time_map,
          "range_antenna": range_antenna_map}


def _synthesize(loaded: LoadedScenario, model: str | None):
    model = model or loaded.model
    if model not in _SYNTH:
        raise ScenarioError(f"unknown model {model!r}")
    return _SYNTH[model](loaded.scenario), model


def cmd_synth(args) -> int:
    loaded = load_scenario(args.scenario, seed_override=args.seed)
    Y, _ = _synthesize(loaded, args.model)
    write_matrix_csv(Y, args.out)
    return EXIT_OK


def cmd_map(args) -> int:
    if args.scenario:
        loaded = load_scenario(args.scenario, seed_override=args.seed)
        Y, _ = _synthesize(loaded, args.model)
    else:
        Y = read_matrix_csv(args.matrix)
    grid = _VIEWS[args.view](Y)
    write_map_csv(grid, args.out)
    return EXIT_OK


def _run_estimate(loaded: LoadedScenario, method: str):
    Y, model = _synthesize(loaded, None)
    cfg = loaded.estimator
    if method == "baseline":
        grid = range_angle_map(Y)
        thr = loaded.rel_threshold if loaded.rel_threshold is not None \
            else bl.DEFAULT_REL_THRESHOLD
        clusters = bl.detect_clusters(grid, thr)
        return bl.peaks_to_signatures(clusters, grid)
    if method != "decoupled":
        raise ScenarioError(f"unknown method {method!r}")
    if model == "narrowband":
        return estimate_narrowband(Y, cfg)
    return estimate_wideband(Y, cfg)


def _write_signatures(path: str, loaded: LoadedScenario, method: str, sigs):
    lines = [f"# method = {method}", f"# model = {loaded.model}",
             f"# seed = {loaded.scenario.seed}",
             f"# sigma = {_fmt(loaded.scenario.noise_sigma)}"]
    truth = loaded.scenario.targets
    if truth:
        report = match_signatures(truth, sigs, loaded.tol_theta, loaded.tol_r)
        lines += [f"# matched = {report.n_matched}",
                  f"# misses = {len(report.misses)}",
                  f"# false_alarms = {len(report.false_alarms)}",
                  f"# rmse_theta = {_fmt(report.rmse_theta)}",
                  f"# rmse_r = {_fmt(report.rmse_r)}"]
    lines.append("group_id,omega_theta,omega_r,amp_re,amp_im")
    for s in sigs:
        lines.append(f"{s.group_id},{_fmt(s.omega_theta)},{_fmt(s.omega_r)},"
                     f"{_fmt(s.amplitude.real)},{_fmt(s.amplitude.imag)}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_estimate(args) -> int:
    loaded = load_scenario(args.scenario, seed_override=args.seed)
    t0 = time.perf_counter()
    sigs = _run_estimate(loaded, args.method)
    elapsed = time.perf_counter() - t0
    _write_signatures(args.out, loaded, args.method, sigs)
    print(f"estimate: {len(sigs)} signatures in {elapsed * 1e3:.1f} ms",
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# bench

_AXES = ("sigma", "alpha", "M", "separation")


def _trial_seed(master_seed: int, axis_index: int, trial: int) -> int:
    digest = hashlib.sha256(
        f"{master_seed}:{axis_index}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _apply_axis(scenario: Scenario, axis: str, value: float) -> Scenario:
    if axis == "sigma":
        return replace(scenario, noise_sigma=value)
    if axis == "alpha":
        return replace(scenario, params=replace(scenario.params, alpha=value))
    if axis == "M":
        return replace(scenario, params=replace(scenario.params, M=int(round(value))))
    if axis == "separation":
        # value is the range-frequency gap of each later target to the first
        base = scenario.targets[0].omega_r
        targets = [scenario.targets[0]]
        for i, t in enumerate(scenario.targets[1:], start=1):
            targets.append(replace(t, omega_r=base + i * value))
        return replace(scenario, targets=tuple(targets))
    raise ScenarioError(f"unknown sweep axis {axis!r}")


def _load_sweep(path: str):
    import os
    sections = _parse_sections(path)
    sweep = None
    for name, kv in sections:
        if name != "sweep":
            raise ScenarioError(f"{path}: unknown section [{name}] in sweep file")
        sweep = kv
    if sweep is None:
        raise ScenarioError(f"{path}: missing [sweep] section")
    allowed = {"axis", "values", "trials", "scenario", "method",
               "master_seed"}
    for key, (_, ln) in sweep.items():
        if key not in allowed:
            raise ScenarioError(f"{path}:{ln}: unknown key {key!r} in [sweep]")
    for req in ("axis", "values", "trials", "scenario"):
        if req not in sweep:
            raise ScenarioError(f"{path}: missing required sweep key {req!r}")
    axis = sweep["axis"][0].strip()
    if axis not in _AXES:
        raise ScenarioError(f"{path}:{sweep['axis'][1]}: axis must be one of "
                            f"{', '.join(_AXES)}")
    try:
        values = [float(v) for v in sweep["values"][0].split(",") if v.strip()]
    except ValueError as e:
        raise ScenarioError(f"{path}:{sweep['values'][1]}: bad values list") from e
    if not values:
        raise ScenarioError(f"{path}: empty values list")
    try:
        trials = int(sweep["trials"][0])
    except ValueError as e:
        raise ScenarioError(f"{path}:{sweep['trials'][1]}: bad trials count") from e
    scen_path = sweep["scenario"][0].strip()
    if not os.path.isabs(scen_path):
        scen_path = os.path.join(os.path.dirname(os.path.abspath(path)), scen_path)
    method = sweep["method"][0].strip() if "method" in sweep else "decoupled"
    if method not in ("decoupled", "baseline"):
        raise ScenarioError(f"{path}: method must be decoupled or baseline")
    master_seed = int(sweep["master_seed"][0]) if "master_seed" in sweep else 0
    return axis, values, trials, scen_path, method, master_seed


def cmd_bench(args) -> int:
    axis, values, trials, scen_path, method, master_seed = _load_sweep(args.sweep)
    loaded = load_scenario(scen_path)
    rows = []
    timings = []
    for ai, value in enumerate(values):
        for trial in range(trials):
            seed = _trial_seed(master_seed, ai, trial)
            scenario = _apply_axis(loaded.scenario, axis, value)
            scenario = replace(scenario, seed=seed)
            run = replace(loaded, scenario=scenario)
            t0 = time.perf_counter()
            sigs = _run_estimate(run, method)
            elapsed_ms = (time.perf_counter() - t0) * 1e3
            report = match_signatures(scenario.targets, sigs,
                                      loaded.tol_theta, loaded.tol_r)
            rows.append((value, trial, len(sigs), len(report.misses),
                         len(report.false_alarms), report.rmse_theta,
                         report.rmse_r))
            timings.append((value, trial, elapsed_ms))
    rows.sort(key=lambda r: (r[0], r[1]))
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("axis_value,trial,detections,misses,false_alarms,"
                 "rmse_theta,rmse_r\n")
        for v, t, d, mi, fa, rt, rr in rows:
            fh.write(f"{_fmt(v)},{t},{d},{mi},{fa},{_fmt(rt)},{_fmt(rr)}\n")
    # wall-clock goes to a sidecar so the primary file stays reproducible
    with open(args.out + ".timings.csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write("axis_value,trial,runtime_ms\n")
        for v, t, ms in timings:
            fh.write(f"{_fmt(v)},{t},{ms:.3f}\n")
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xlradar",
        description="MIMO-FMCW radar simulator and signature estimator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="synthesize an IF matrix to CSV")
    p.add_argument("--scenario", required=True)
    p.add_argument("--model", choices=sorted(_SYNTH),
                   help="override the scenario's model")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("map", help="emit a distortion-view magnitude map")
    p.add_argument("--scenario")
    p.add_argument("--matrix", help="previously synthesized matrix CSV")
    p.add_argument("--model", choices=sorted(_SYNTH))
    p.add_argument("--view", choices=sorted(_VIEWS), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("estimate", help="run an estimation pipeline")
    p.add_argument("--scenario", required=True)
    p.add_argument("--method", choices=("decoupled", "baseline"),
                   default="decoupled")
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("bench", help="Monte-Carlo parameter sweep")
    p.add_argument("--sweep", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1,
                   help="accepted for compatibility; trials run sequentially")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "map" and bool(args.scenario) == bool(args.matrix):
        print("map: give exactly one of --scenario or --matrix", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return args.func(args)
    except ScenarioError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
