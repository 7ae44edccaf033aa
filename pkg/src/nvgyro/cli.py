"""Batch command-line front end.

One subcommand per experiment; a JSON run configuration (all sections
optional, defaults are the published sample values) plus flag overrides;
CSV outputs with a manifest comment line recording the config hash, seed,
tool version, and backend, so identical (config, seed) runs are
byte-identical.

Exit codes: 1 configuration error, 2 runtime/fit error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import Any

import numpy as np

from . import __version__
from .enhancement import GslacProximityError, enhancement_factors, gslac_field_gauss
from .engine import backend_name
from .noise import NoiseModel, Spread
from .params import FieldVector, NVParams
from .protocols import (
    GyroConfig,
    MisalignConfig,
    PolarizeConfig,
    RamseyConfig,
    TempShiftConfig,
    calibrate_gyro,
    fit_t2n,
    gyro_run,
    misalignment_sweep,
    polarization_sequence,
    ramsey_scan,
    temperature_roundtrip,
    zero_bias_run,
    zero_bias_stats,
)
from .protocols import scenarios
from .sequence import ReadoutModel, SequenceError, parse_sequence


class ConfigError(ValueError):
    pass


PARAM_KEYS = {
    "d_hz",
    "gamma_e_hz_per_g",
    "gamma_n_hz_per_g",
    "a_zz_hz",
    "a_perp_hz",
    "t2e_star_s",
    "t1e_s",
    "dazz_dt_hz_per_k",
}
FIELD_KEYS = {"b_gauss", "theta_deg", "phi_deg"}
SPREAD_KEYS = {"kind", "value"}
NOISE_KEYS = {
    "b_z",
    "b_x",
    "b_y",
    "temperature_k",
    "t1e_envelope",
    "drift_amplitude",
    "drift_period_s",
    "scenario",
}
READOUT_KEYS = {"contrast", "offset", "shot_noise_std"}
TOP_KEYS = {"params", "field", "noise", "readout", "protocol", "draws", "seed", "out_dir"}


def _require_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) {sorted(unknown)} in {where} (allowed: {sorted(allowed)})")


def load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be a JSON object")
    _require_keys(cfg, TOP_KEYS, "config root")
    return cfg


def build_params(cfg: dict) -> NVParams:
    section = cfg.get("params", {})
    _require_keys(section, PARAM_KEYS, "params")
    try:
        return NVParams(**section)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad params section: {exc}") from exc


def build_field(cfg: dict) -> FieldVector:
    section = dict(cfg.get("field", {}))
    _require_keys(section, FIELD_KEYS, "field")
    try:
        return FieldVector.from_degrees(
            section.get("b_gauss", 239.0),
            section.get("theta_deg", 0.0),
            section.get("phi_deg", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"bad field section: {exc}") from exc


def _build_spread(value: Any, where: str) -> Spread:
    if not isinstance(value, dict):
        raise ConfigError(f"{where} must be an object with keys {sorted(SPREAD_KEYS)}")
    _require_keys(value, SPREAD_KEYS, where)
    try:
        return Spread(value.get("kind", "lorentzian"), float(value.get("value", 0.0)))
    except ValueError as exc:
        raise ConfigError(f"bad {where}: {exc}") from exc


def build_noise(cfg: dict, params: NVParams, default_scenario: str | None = None) -> NoiseModel:
    section = dict(cfg.get("noise", {}))
    _require_keys(section, NOISE_KEYS, "noise")
    scenario = section.pop("scenario", default_scenario)
    if section:
        kwargs: dict[str, Any] = {"dazz_dt_hz_per_k": params.dazz_dt_hz_per_k}
        for axis in ("b_z", "b_x", "b_y", "temperature_k"):
            if axis in section:
                kwargs[axis] = _build_spread(section[axis], f"noise.{axis}")
        for key in ("t1e_envelope", "drift_amplitude", "drift_period_s"):
            if key in section:
                kwargs[key] = section[key]
        try:
            return NoiseModel(**kwargs)
        except ValueError as exc:
            raise ConfigError(f"bad noise section: {exc}") from exc
    if scenario is None:
        return NoiseModel(dazz_dt_hz_per_k=params.dazz_dt_hz_per_k)
    builders = {
        "aligned_magnetic": lambda: scenarios.aligned_magnetic(params),
        "misaligned_magnetic": lambda: scenarios.misaligned_magnetic(params),
        "hyperfine_variation": lambda: scenarios.hyperfine_variation(params),
        "combined": lambda: scenarios.combined(params),
        "none": lambda: NoiseModel(dazz_dt_hz_per_k=params.dazz_dt_hz_per_k),
    }
    if scenario not in builders:
        raise ConfigError(f"unknown noise scenario {scenario!r} (allowed: {sorted(builders)})")
    return builders[scenario]()


def build_readout(cfg: dict) -> ReadoutModel:
    section = cfg.get("readout", {})
    _require_keys(section, READOUT_KEYS, "readout")
    try:
        return ReadoutModel(
            contrast=section.get("contrast", 1.0),
            offset=section.get("offset", 0.0),
            shot_noise_std=section.get("shot_noise_std", 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"bad readout section: {exc}") from exc


#: per-subcommand settings accepted in the config's protocol section
PROTOCOL_KEYS = {
    "enhancement": {"bmax", "points"},
    "misalign": {"angles", "no_sim"},
    "ramsey": {"manifold", "tmin", "tmax", "ntimes"},
    "dq-ramsey": {"tmin", "tmax", "ntimes", "flip"},
    "polarize": {"rounds", "pulse", "rabi_hz"},
    "tempshift": {"tmin_k", "tmax_k", "npoints", "noise_hz"},
    "gyro": {"mode", "emulation", "pattern", "zero_bias"},
}


class Settings:
    """Flag > config protocol section > built-in default."""

    def __init__(self, args: argparse.Namespace, cfg: dict, subcommand: str):
        section = dict(cfg.get("protocol", {}))
        name = section.pop("name", subcommand)
        if name != subcommand:
            raise ConfigError(f"protocol section is for {name!r}, but the subcommand is {subcommand!r}")
        _require_keys(section, PROTOCOL_KEYS[subcommand], "protocol")
        self._args = args
        self._section = section

    def get(self, key: str, default):
        flag = getattr(self._args, key.replace("-", "_"), None)
        if flag is not None:
            return flag
        return self._section.get(key, default)


def effective_config(args: argparse.Namespace, cfg: dict) -> dict:
    merged = json.loads(json.dumps(cfg))  # deep copy, JSON-typed
    merged.setdefault("seed", 0)
    merged.setdefault("draws", None)
    if args.seed is not None:
        merged["seed"] = args.seed
    if getattr(args, "draws", None) is not None:
        merged["draws"] = args.draws
    merged["subcommand"] = args.command
    flags = {
        k: v
        for k, v in vars(args).items()
        if k not in ("command", "config", "out", "func", "seed", "draws") and v is not None
    }
    merged["flags"] = flags
    return merged


def config_hash(effective: dict) -> str:
    blob = json.dumps(effective, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


class OutputWriter:
    def __init__(self, out_dir: str, prefix: str, effective: dict):
        self.dir = Path(out_dir)
        self.prefix = prefix
        self.hash = config_hash(effective)
        self.effective = effective
        self.files: list[str] = []
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise IOError(f"cannot create output directory {out_dir}: {exc}") from exc

    def _fmt(self, x: Any) -> str:
        if isinstance(x, float):
            if math.isnan(x):
                return "nan"
            return f"{x:.12g}"
        return str(x)

    def csv(self, name: str, header: list[str], rows: list[tuple]) -> Path:
        path = self.dir / f"{self.prefix}_{name}.csv"
        lines = [f"# manifest: {self.hash}", ",".join(header)]
        lines += [",".join(self._fmt(v) for v in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
        self.files.append(path.name)
        return path

    def summary(self, payload: dict) -> Path:
        path = self.dir / f"{self.prefix}_summary.json"
        payload = dict(payload)
        payload["manifest"] = self.hash
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        self.files.append(path.name)
        return path

    def manifest(self) -> Path:
        path = self.dir / f"{self.prefix}_manifest.json"
        payload = {
            "config_hash": self.hash,
            "seed": self.effective.get("seed"),
            "version": __version__,
            "backend": backend_name(),
            "subcommand": self.effective.get("subcommand"),
            "outputs": sorted(self.files),
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return path


def _out_dir(args: argparse.Namespace, cfg: dict) -> str:
    return args.out or cfg.get("out_dir") or os.environ.get("NVGYRO_OUT", "out")


def _draws(cfg_merged: dict, default: int) -> int:
    d = cfg_merged.get("draws")
    return default if d in (None, 0) else int(d)


# ---------------------------------------------------------------- commands


def cmd_enhancement(args: argparse.Namespace, cfg: dict) -> int:
    params = build_params(cfg)
    s = Settings(args, cfg, "enhancement")
    bmax = float(s.get("bmax", 1100.0))
    points = int(s.get("points", 500))
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), "enhancement", eff)
    grid = list(np.linspace(0.0, bmax, points))
    b_gslac = gslac_field_gauss(params)
    if 0.0 < b_gslac < bmax:
        # resolve the anti-crossing peak: the closed forms stay finite but
        # only points within ~50 mG of the crossing reach the limit value
        offsets = np.geomspace(2e-3, 5.0, 24)
        grid += [b_gslac - o for o in offsets] + [b_gslac + o for o in offsets]
    rows = []
    for b in sorted(grid):
        if b < 0.0 or b > bmax:
            continue
        try:
            ef = enhancement_factors(params, b)
        except GslacProximityError:
            continue
        rows.append((b, ef.alpha_p1, ef.alpha_0, ef.alpha_m1))
    writer.csv("factors", ["B_gauss", "alpha_p1", "alpha_0", "alpha_m1"], rows)
    peak = max(max(abs(r[1]), abs(r[2]), abs(r[3])) for r in rows)
    writer.summary({"max_abs_alpha": peak, "gslac_field_gauss": b_gslac, "points": len(rows)})
    writer.manifest()
    print(f"enhancement: {len(rows)} points, max |alpha| = {peak:.1f}")
    return 0


def cmd_misalign(args: argparse.Namespace, cfg: dict) -> int:
    params = build_params(cfg)
    s = Settings(args, cfg, "misalign")
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), "misalign", eff)
    angles = s.get("angles", None)
    if isinstance(angles, str):
        angles = [float(a) for a in angles.split(",")]
    mcfg = MisalignConfig(
        params=params,
        b_gauss=build_field(cfg).b_gauss,
        draws=_draws(eff, 1500),
        seed=int(eff["seed"]),
        simulate=not (args.no_sim or s.get("no_sim", False)),
    )
    if angles is not None:
        mcfg.angles_deg = [float(a) for a in angles]
    rows = misalignment_sweep(mcfg)
    writer.csv(
        "table",
        ["theta_deg", "omega_n_exact_hz", "omega_n_cf_hz", "t2n_sim_s", "t2n_pred_s", "t2n_pred_t1e_s"],
        [
            (r.theta_deg, r.omega_n_exact_hz, r.omega_n_cf_hz, r.t2n_sim_s, r.t2n_pred_s, r.t2n_pred_t1e_s)
            for r in rows
        ],
    )
    writer.summary({"angles_deg": [r.theta_deg for r in rows]})
    writer.manifest()
    print(f"misalign: {len(rows)} angles")
    return 0


def _ramsey_common(args: argparse.Namespace, cfg: dict, subcommand: str, prefix: str) -> int:
    params = build_params(cfg)
    field = build_field(cfg)
    s = Settings(args, cfg, subcommand)
    manifold = "dq" if subcommand == "dq-ramsey" else s.get("manifold", "ms0")
    default_scenario = {"ms0": "aligned_magnetic", "msm1": "hyperfine_variation", "dq": "combined"}[manifold]
    noise = build_noise(cfg, params, default_scenario)
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), prefix, eff)
    default_span = {
        "ms0": (0.3e-3, 8e-3),
        "msm1": (0.02e-3, 0.45e-3),  # hyperfine-limited, ~200 us decay
        "dq": (0.4e-3, 6.5e-3),
    }[manifold]
    times = np.linspace(
        float(s.get("tmin", default_span[0])),
        float(s.get("tmax", default_span[1])),
        int(s.get("ntimes", 10)),
    )
    rcfg = RamseyConfig(
        manifold=manifold,
        times_s=times,
        params=params,
        field=field,
        noise=noise,
        draws=_draws(eff, 2000),
        seed=int(eff["seed"]),
        readout=build_readout(cfg),
    )
    if manifold == "dq":
        flip = s.get("flip", None)
        if flip is not None:
            rcfg.dq_flip_fraction = float(flip)
    result = ramsey_scan(rcfg)
    writer.csv(
        "contrast",
        ["t_s", "contrast", "contrast_err"],
        list(zip(result.times_s, result.contrast, result.contrast_err)),
    )
    summary: dict[str, Any] = {"manifold": manifold, "draws": rcfg.draws}
    try:
        t2n, t2n_err, _ = fit_t2n(result.times_s, result.contrast)
        summary |= {"t2n_s": t2n, "t2n_err_s": t2n_err}
        print(f"{prefix}: T2n* = {t2n*1e3:.3f} ms +/- {t2n_err*1e3:.3f} ms")
    except ValueError as exc:
        summary |= {"fit_error": str(exc)}
        print(f"{prefix}: decay fit failed: {exc}", file=sys.stderr)
    writer.summary(summary)
    writer.manifest()
    return 0


def cmd_ramsey(args: argparse.Namespace, cfg: dict) -> int:
    return _ramsey_common(args, cfg, "ramsey", "ramsey")


def cmd_dq_ramsey(args: argparse.Namespace, cfg: dict) -> int:
    return _ramsey_common(args, cfg, "dq-ramsey", "dq_ramsey")


def cmd_polarize(args: argparse.Namespace, cfg: dict) -> int:
    params = build_params(cfg)
    s = Settings(args, cfg, "polarize")
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), "polarize", eff)
    pcfg = PolarizeConfig(
        rounds=int(s.get("rounds", 2)),
        pulse_model=s.get("pulse", "ideal"),
        rabi_hz=float(s.get("rabi_hz", 1e6)),
        params=params,
        field=build_field(cfg),
    )
    result = polarization_sequence(pcfg)
    writer.csv(
        "history",
        ["rounds", "polarization"],
        list(enumerate(result.per_round)),
    )
    writer.summary({"polarization": result.polarization, "pulse_model": pcfg.pulse_model})
    writer.manifest()
    print(f"polarize: P(+1/2) = {result.polarization:.4f} after {pcfg.rounds} round(s)")
    return 0


def cmd_tempshift(args: argparse.Namespace, cfg: dict) -> int:
    params = build_params(cfg)
    s = Settings(args, cfg, "tempshift")
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), "tempshift", eff)
    tcfg = TempShiftConfig(
        delta_t_k=np.linspace(
            float(s.get("tmin_k", -15.0)), float(s.get("tmax_k", 15.0)), int(s.get("npoints", 7))
        ),
        freq_noise_std_hz=float(s.get("noise_hz", 10.0)),
        params=params,
        field=build_field(cfg),
        seed=int(eff["seed"]),
    )
    result = temperature_roundtrip(tcfg)
    writer.csv(
        "frequencies",
        ["dT_K", "omega_p1_hz", "omega_m1_hz", "average_hz"],
        [(r.delta_t_k, r.omega_p1_hz, r.omega_m1_hz, r.average_hz) for r in result.rows],
    )
    writer.summary(
        {
            "slope_hz_per_k": result.slope_hz_per_k,
            "slope_err_hz_per_k": result.slope_err_hz_per_k,
            "injected_hz_per_k": params.dazz_dt_hz_per_k,
        }
    )
    writer.manifest()
    print(
        f"tempshift: dAzz/dT = {result.slope_hz_per_k:.1f} +/- {result.slope_err_hz_per_k:.1f} Hz/K "
        f"(injected {params.dazz_dt_hz_per_k:.1f})"
    )
    return 0


def _parse_pattern(text: str) -> list[tuple[float, float]]:
    pattern = []
    for chunk in text.split(","):
        try:
            dur, rate = chunk.split(":")
            pattern.append((float(dur), float(rate)))
        except ValueError as exc:
            raise ConfigError(f"bad pattern element {chunk!r} (expected duration_s:rate_dps)") from exc
    return pattern


def cmd_gyro(args: argparse.Namespace, cfg: dict) -> int:
    params = build_params(cfg)
    field = build_field(cfg)
    noise = build_noise(cfg, params, "none")
    s = Settings(args, cfg, "gyro")
    eff = effective_config(args, cfg)
    writer = OutputWriter(_out_dir(args, cfg), "gyro", eff)
    gcfg = GyroConfig(
        mode=s.get("mode", "protected"),
        emulation=s.get("emulation", "phase_mod"),
        params=params,
        field=field,
        noise=noise,
        draws=_draws(eff, 1),
        seed=int(eff["seed"]),
        readout=build_readout(cfg),
    )
    pattern = s.get("pattern", None)
    if isinstance(pattern, str):
        gcfg.pattern = _parse_pattern(pattern)
    elif pattern is not None:
        gcfg.pattern = [(float(d), float(r)) for d, r in pattern]
    zero_bias = s.get("zero_bias", None)
    calibration = calibrate_gyro(gcfg)
    summary: dict[str, Any] = {
        "mode": gcfg.mode,
        "emulation": gcfg.emulation,
        "point_time_s": gcfg.point_time_s,
        "calibration": {"c0": calibration.c0, "c": calibration.c, "phi0": calibration.phi0},
    }
    if zero_bias:
        samples = zero_bias_run(gcfg, int(zero_bias), calibration)
        stats = zero_bias_stats(samples, gcfg.point_time_s)
        writer.csv("zero_bias", ["sample", "omega_rec_dps"], list(enumerate(samples)))
        summary |= {
            "sigma_dps": stats.sigma_dps,
            "sensitivity_a_dps_rthz": stats.sensitivity_a_dps_rthz,
            "sensitivity_b_dps_rthz": stats.sensitivity_b_dps_rthz,
            "n_samples": stats.n_samples,
        }
        print(
            f"gyro zero-bias: sigma = {stats.sigma_dps:.1f} dps, "
            f"eta_A = {stats.sensitivity_a_dps_rthz:.1f}, eta_B = {stats.sensitivity_b_dps_rthz:.1f} dps/rtHz"
        )
    else:
        series = gyro_run(gcfg, calibration)
        writer.csv(
            "series",
            ["time_s", "omega_set_dps", "omega_rec_dps", "s_plus", "s_minus"],
            [(p.time_s, p.omega_set_dps, p.omega_rec_dps, p.s_plus, p.s_minus) for p in series.points],
        )
        summary |= {"points": len(series.points), "clamp_count": series.clamp_count}
        print(f"gyro: {len(series.points)} points, clamped {series.clamp_count}")
    writer.summary(summary)
    writer.manifest()
    return 0


def cmd_seq(args: argparse.Namespace, cfg: dict) -> int:
    if args.action != "check":
        raise ConfigError(f"unknown seq action {args.action!r} (expected 'check')")
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return 3
    try:
        seq = parse_sequence(text)
    except SequenceError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return 1
    params = sorted(seq.parameters)
    print(f"{args.file}: {len(seq.elements)} elements, parameters: {params if params else 'none'}")
    return 0


# ---------------------------------------------------------------- parser


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nvgyro", description=__doc__)
    parser.add_argument("--version", action="version", version=f"nvgyro {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, draws: bool = True) -> None:
        p.add_argument("--config", help="JSON run configuration")
        p.add_argument("--seed", type=int, help="master seed (default 0)")
        p.add_argument("--out", help="output directory (default $NVGYRO_OUT or ./out)")
        if draws:
            p.add_argument("--draws", type=int, help="noise draws per point")

    p = sub.add_parser("enhancement", help="gyromagnetic enhancement factors vs field")
    common(p, draws=False)
    p.add_argument("--bmax", type=float)
    p.add_argument("--points", type=int)
    p.set_defaults(func=cmd_enhancement)

    p = sub.add_parser("misalign", help="dephasing vs misalignment angle")
    common(p)
    p.add_argument("--angles", help="comma-separated angles in degrees")
    p.add_argument("--no-sim", action="store_true", help="theory columns only")
    p.set_defaults(func=cmd_misalign)

    p = sub.add_parser("ramsey", help="nuclear Ramsey dephasing scan")
    common(p)
    p.add_argument("--manifold", choices=["ms0", "msm1"])
    p.add_argument("--tmin", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--ntimes", type=int)
    p.set_defaults(func=cmd_ramsey)

    p = sub.add_parser("dq-ramsey", help="coherence-protected Ramsey scan")
    common(p)
    p.add_argument("--tmin", type=float)
    p.add_argument("--tmax", type=float)
    p.add_argument("--ntimes", type=int)
    p.add_argument("--flip", type=float, help="flip position as a fraction of t (default 0.5)")
    p.set_defaults(func=cmd_dq_ramsey)

    p = sub.add_parser("polarize", help="nuclear polarization transfer")
    common(p, draws=False)
    p.add_argument("--rounds", type=int)
    p.add_argument("--pulse", choices=["ideal", "finite"])
    p.add_argument("--rabi-hz", type=float)
    p.set_defaults(func=cmd_polarize)

    p = sub.add_parser("tempshift", help="hyperfine temperature-shift round trip")
    common(p, draws=False)
    p.add_argument("--tmin-k", type=float)
    p.add_argument("--tmax-k", type=float)
    p.add_argument("--npoints", type=int)
    p.add_argument("--noise-hz", type=float)
    p.set_defaults(func=cmd_tempshift)

    p = sub.add_parser("gyro", help="emulated rotation-rate measurement")
    common(p)
    p.add_argument("--mode", choices=["protected", "unprotected"])
    p.add_argument("--emulation", choices=["phase_mod", "iz_term"])
    p.add_argument("--pattern", help="duration_s:rate_dps,... staircase")
    p.add_argument("--zero-bias", type=int, help="run N zero-rotation samples instead of the pattern")
    p.set_defaults(func=cmd_gyro)

    p = sub.add_parser("seq", help="sequence file utilities")
    p.add_argument("action", choices=["check"])
    p.add_argument("file")
    p.set_defaults(func=cmd_seq, config=None, seed=None, out=None)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3
    except Exception as exc:  # runtime / fit errors
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
