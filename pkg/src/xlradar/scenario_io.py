"""Scenario-file parsing and CSV serialization.

Scenario files are plain-text key = value documents with ``[section]``
headers: one ``[radar]`` and optional ``[noise]`` / ``[estimator]``
sections plus any number of repeated ``[target]`` blocks.  Unknown keys are
rejected with the offending line number.  Any key can be overridden from
the environment as ``XLRADAR_<SECTION>_<KEY>`` (targets are addressed as
``TARGET1``, ``TARGET2``, ...).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, replace

import numpy as np

from .estimate import EstimatorConfig
from .model import C_LIGHT, RadarParams, Scenario, Target, to_normalized
from .synth import IfMatrix

ENV_PREFIX = "XLRADAR_"

_RADAR_KEYS = {"f_c", "alpha", "T_ch", "f_s", "M", "N", "d_over_lambda", "c"}
_NOISE_KEYS = {"sigma", "seed"}
_TARGET_KEYS = {"range_m", "theta_deg", "omega_r", "omega_theta",
                "amplitude_re", "amplitude_im"}
_ESTIMATOR_KEYS = {"model", "oversampling", "delta", "max_targets",
                   "residual_tol", "projection", "stage_gate", "prune_gate",
                   "tol_theta", "tol_r", "rel_threshold"}


class ScenarioError(ValueError):
    """Raised on malformed scenario or sweep files (CLI exit code 2)."""


@dataclass(frozen=True)
class LoadedScenario:
    """Parsed scenario plus estimator settings carried by the file."""

    scenario: Scenario
    model: str  # narrowband | wideband | exact
    estimator: EstimatorConfig
    tol_theta: float
    tol_r: float
    rel_threshold: float | None


def _parse_sections(path: str):
    """Split a key-value file into (section, {key: (value, line)}) entries."""
    sections = []
    current = None
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as e:
        raise ScenarioError(f"cannot read {path}: {e}") from e
    for ln, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = (line[1:-1].strip().lower(), {})
            sections.append(current)
            continue
        if "=" not in line:
            raise ScenarioError(f"{path}:{ln}: expected 'key = value', got {raw.strip()!r}")
        if current is None:
            raise ScenarioError(f"{path}:{ln}: key outside any [section]")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in current[1]:
            raise ScenarioError(f"{path}:{ln}: duplicate key {key!r}")
        current[1][key] = (value, ln)
    return sections


def _apply_env_overrides(sections, env=None):
    env = os.environ if env is None else env
    target_no = 0
    for name, kv in sections:
        if name == "target":
            target_no += 1
            env_section = f"TARGET{target_no}"
        else:
            env_section = name.upper()
        keys = {"radar": _RADAR_KEYS, "noise": _NOISE_KEYS,
                "target": _TARGET_KEYS, "estimator": _ESTIMATOR_KEYS}.get(name, set())
        for key in keys:
            var = f"{ENV_PREFIX}{env_section}_{key.upper()}"
            if var in env:
                kv[key] = (env[var], 0)


def _num(path, kv, key, default=None, cast=float):
    if key not in kv:
        if default is None:
            raise ScenarioError(f"{path}: missing required key {key!r}")
        return default
    value, ln = kv[key]
    try:
        x = float(value)
        return cast(x)
    except ValueError as e:
        raise ScenarioError(f"{path}:{ln}: bad numeric value for {key!r}: {value!r}") from e


def _check_keys(path, name, kv, allowed):
    for key, (_, ln) in kv.items():
        if key not in allowed:
            raise ScenarioError(f"{path}:{ln}: unknown key {key!r} in [{name}]")


def load_scenario(path: str, seed_override: int | None = None,
                  env=None) -> LoadedScenario:
    sections = _parse_sections(path)
    _apply_env_overrides(sections, env)
    radar = noise = estim = None
    targets_kv = []
    for name, kv in sections:
        if name == "radar":
            _check_keys(path, name, kv, _RADAR_KEYS)
            radar = kv
        elif name == "noise":
            _check_keys(path, name, kv, _NOISE_KEYS)
            noise = kv
        elif name == "target":
            _check_keys(path, name, kv, _TARGET_KEYS)
            targets_kv.append(kv)
        elif name == "estimator":
            _check_keys(path, name, kv, _ESTIMATOR_KEYS)
            estim = kv
        else:
            raise ScenarioError(f"{path}: unknown section [{name}]")
    if radar is None:
        raise ScenarioError(f"{path}: missing [radar] section")

    c = _num(path, radar, "c", C_LIGHT)
    f_c = _num(path, radar, "f_c", 77e9)
    alpha = _num(path, radar, "alpha")
    T_ch = _num(path, radar, "T_ch", 50e-6)
    M = _num(path, radar, "M", cast=lambda x: int(round(x)))
    d_over_lambda = _num(path, radar, "d_over_lambda", 0.5)
    if "f_s" in radar:
        f_s = _num(path, radar, "f_s")
    elif "N" in radar:
        f_s = _num(path, radar, "N", cast=lambda x: int(round(x))) / T_ch
    else:
        raise ScenarioError(f"{path}: [radar] needs either f_s or N")
    d = d_over_lambda * c / f_c
    try:
        params = RadarParams(f_c=f_c, alpha=alpha, T_ch=T_ch, f_s=f_s,
                             M=M, d=d, c=c)
    except ValueError as e:
        raise ScenarioError(f"{path}: {e}") from e
    if "N" in radar:
        want = _num(path, radar, "N", cast=lambda x: int(round(x)))
        if params.N != want:
            raise ScenarioError(f"{path}: N={want} inconsistent with "
                                f"f_s*T_ch={params.f_s * params.T_ch}")

    sigma, seed = 0.0, 0
    if noise is not None:
        sigma = _num(path, noise, "sigma", 0.0)
        seed = _num(path, noise, "seed", 0, cast=lambda x: int(round(x)))
    if seed_override is not None:
        seed = seed_override

    targets = []
    for kv in targets_kv:
        amp = complex(_num(path, kv, "amplitude_re", 1.0),
                      _num(path, kv, "amplitude_im", 0.0))
        has_phys = "range_m" in kv and "theta_deg" in kv
        has_norm = "omega_r" in kv and "omega_theta" in kv
        if not has_phys and not has_norm:
            raise ScenarioError(
                f"{path}: [target] needs range_m+theta_deg or omega_r+omega_theta")
        range_m = _num(path, kv, "range_m", math.nan) if "range_m" in kv else None
        theta_deg = _num(path, kv, "theta_deg", math.nan) if "theta_deg" in kv else None
        if has_norm:
            # normalized values win when both are present
            omega_r = _num(path, kv, "omega_r")
            omega_theta = _num(path, kv, "omega_theta")
        else:
            try:
                omega_r, omega_theta = to_normalized(params, range_m, theta_deg)
            except ValueError as e:
                raise ScenarioError(f"{path}: {e}") from e
        targets.append(Target(omega_r=omega_r, omega_theta=omega_theta,
                              amplitude=amp, range_m=range_m,
                              theta_deg=theta_deg))

    model = "narrowband"
    cfg = EstimatorConfig()
    tol_theta = tol_r = 0.01
    rel_threshold = None
    if estim is not None:
        if "model" in estim:
            model = estim["model"][0].strip().lower()
            if model not in ("narrowband", "wideband", "exact"):
                raise ScenarioError(f"{path}:{estim['model'][1]}: model must be "
                                    f"narrowband, wideband, or exact")
        updates = {}
        if "oversampling" in estim:
            updates["oversampling"] = _num(path, estim, "oversampling")
        if "delta" in estim:
            updates["merge_tol"] = _num(path, estim, "delta")
        if "max_targets" in estim:
            updates["max_targets"] = _num(path, estim, "max_targets",
                                          cast=lambda x: int(round(x)))
        if "residual_tol" in estim:
            updates["residual_tol"] = _num(path, estim, "residual_tol")
        if "projection" in estim:
            proj = estim["projection"][0].strip().lower()
            if proj not in ("matched", "bin"):
                raise ScenarioError(f"{path}:{estim['projection'][1]}: "
                                    f"projection must be matched or bin")
            updates["projection"] = proj
        if "stage_gate" in estim:
            updates["stage_gate"] = _num(path, estim, "stage_gate")
        if "prune_gate" in estim:
            updates["prune_gate"] = _num(path, estim, "prune_gate")
        cfg = replace(cfg, **updates)
        tol_theta = _num(path, estim, "tol_theta", 0.01)
        tol_r = _num(path, estim, "tol_r", 0.01)
        if "rel_threshold" in estim:
            rel_threshold = _num(path, estim, "rel_threshold")

    return LoadedScenario(scenario=Scenario(params=params, targets=tuple(targets),
                                            noise_sigma=sigma, seed=seed),
                          model=model, estimator=cfg,
                          tol_theta=tol_theta, tol_r=tol_r,
                          rel_threshold=rel_threshold)


# ---------------------------------------------------------------------------
# CSV serialization

def _fmt(x: float) -> str:
    return f"{x:.17g}"


def write_matrix_csv(Y: IfMatrix, path: str):
    """Write the IF matrix as m,n,re,im rows plus a .meta params sidecar."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("m,n,re,im\n")
        M, N = Y.shape
        for m in range(M):
            row = Y.data[m]
            for n in range(N):
                fh.write(f"{m},{n},{_fmt(row[n].real)},{_fmt(row[n].imag)}\n")
    p = Y.params
    meta = {"f_c": p.f_c, "alpha": p.alpha, "T_ch": p.T_ch, "f_s": p.f_s,
            "M": p.M, "N": p.N, "d": p.d, "c": p.c}
    with open(path + ".meta", "w", encoding="utf-8", newline="\n") as fh:
        for key in sorted(meta):
            fh.write(f"{key} = {_fmt(float(meta[key]))}\n")


def read_matrix_csv(path: str) -> IfMatrix:
    """Re-ingest a matrix written by :func:`write_matrix_csv`."""
    meta_path = path + ".meta"
    meta = {}
    try:
        with open(meta_path, "r", encoding="utf-8") as fh:
            for line in fh:
                key, value = (s.strip() for s in line.split("=", 1))
                meta[key] = float(value)
    except OSError as e:
        raise ScenarioError(f"cannot read matrix metadata {meta_path}: {e}") from e
    params = RadarParams(f_c=meta["f_c"], alpha=meta["alpha"],
                         T_ch=meta["T_ch"], f_s=meta["f_s"],
                         M=int(meta["M"]), d=meta["d"], c=meta["c"])
    try:
        table = np.loadtxt(path, delimiter=",", skiprows=1)
    except OSError as e:
        raise ScenarioError(f"cannot read matrix {path}: {e}") from e
    M, N = params.M, params.N
    data = np.zeros((M, N), dtype=np.complex128)
    m = table[:, 0].astype(int)
    n = table[:, 1].astype(int)
    data[m, n] = table[:, 2] + 1j * table[:, 3]
    return IfMatrix(data, params)


def write_map_csv(grid, path: str):
    """Write a MapGrid as row,col,magnitude with # metadata headers."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# row_axis = {grid.row_axis}\n")
        fh.write(f"# col_axis = {grid.col_axis}\n")
        fh.write(f"# row_step = {_fmt(grid.row_step)}\n")
        fh.write(f"# col_step = {_fmt(grid.col_step)}\n")
        fh.write("row,col,magnitude\n")
        P, Q = grid.shape
        for p in range(P):
            row = grid.data[p]
            for q in range(Q):
                fh.write(f"{p},{q},{_fmt(row[q])}\n")
