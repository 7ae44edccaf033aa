"""Ramsey dephasing scans: phase sweep at each evolution time, sinusoid
fit for the contrast, exponential fit for the dephasing time."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from importlib.resources import files
from typing import Optional

import numpy as np

from ..analysis import FitResult, fit_exponential, fit_sinusoid
from ..engine import run_program
from ..hamiltonian import build_hamiltonian_stack, eigh_stack
from ..noise import NoiseModel, sample_stack, t1e_envelope_factor
from ..params import FieldVector, NVParams
from ..sequence import (
    ExecOptions,
    ExecutionContext,
    ReadoutModel,
    Sequence,
    parse_sequence,
    polarized_initial_state,
    readout_signal,
)
from ..sequence.compile import compile_program

MANIFOLD_TEMPLATES = {
    "ms0": "ramsey_ms0.seq",
    "msm1": "ramsey_msm1.seq",
    "dq": "ramsey_dq.seq",
}

_RNG_READOUT = 101


def load_template(name: str) -> Sequence:
    return parse_sequence(files("nvgyro").joinpath(f"sequences/{name}").read_text())


def default_phases(n: int = 8) -> np.ndarray:
    return np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)


@dataclass
class RamseyConfig:
    manifold: str = "ms0"
    times_s: np.ndarray = dc_field(default_factory=lambda: np.linspace(0.3e-3, 6e-3, 10))
    phases_rad: np.ndarray = dc_field(default_factory=default_phases)
    params: NVParams = dc_field(default_factory=NVParams)
    field: FieldVector = dc_field(default_factory=FieldVector)
    noise: NoiseModel = dc_field(default_factory=NoiseModel)
    draws: int = 1000
    seed: int = 0
    readout: ReadoutModel = dc_field(default_factory=ReadoutModel)
    options: ExecOptions = dc_field(default_factory=ExecOptions)
    dq_flip_fraction: float = 0.5

    def __post_init__(self) -> None:
        if self.manifold not in MANIFOLD_TEMPLATES:
            raise ValueError(f"manifold must be one of {sorted(MANIFOLD_TEMPLATES)}")
        self.times_s = np.asarray(self.times_s, dtype=float)
        self.phases_rad = np.asarray(self.phases_rad, dtype=float)
        if len(self.phases_rad) < 6:
            raise ValueError("need at least 6 phase points per evolution time")
        if np.any(np.diff(self.times_s) <= 0.0):
            raise ValueError("evolution times must be strictly increasing")
        if not 0.0 < self.dq_flip_fraction < 1.0:
            raise ValueError("dq flip fraction must lie in (0, 1)")


@dataclass
class RamseyResult:
    times_s: np.ndarray
    contrast: np.ndarray
    contrast_err: np.ndarray
    phases_rad: np.ndarray
    signals: np.ndarray  # (n_times, n_phases) ensemble-averaged signals
    fits: list[FitResult | None]

    def fit_failures(self) -> list[int]:
        return [i for i, f in enumerate(self.fits) if f is None]


def _bindings_for(cfg: RamseyConfig, t: float) -> dict[str, float]:
    if cfg.manifold == "dq" and cfg.dq_flip_fraction != 0.5:
        return {"ta": cfg.dq_flip_fraction * t, "tb": (1.0 - cfg.dq_flip_fraction) * t}
    return {"t": t}


def _template_for(cfg: RamseyConfig) -> Sequence:
    if cfg.manifold == "dq" and cfg.dq_flip_fraction != 0.5:
        return load_template("ramsey_dq_displaced.seq")
    return load_template(MANIFOLD_TEMPLATES[cfg.manifold])


def ramsey_scan(cfg: RamseyConfig) -> RamseyResult:
    """Phase-swept Ramsey over the noise ensemble.

    For each evolution time the sequence runs once per (draw, phase); the
    draw-averaged signal is fitted to c0 + c*cos(phi - phi0) and c(t) is
    returned with its fit uncertainty. Sinusoid-fit failures are recorded
    per point, not raised.
    """
    seq = _template_for(cfg)
    ctx = ExecutionContext(params=cfg.params, field=cfg.field, options=cfg.options)
    stack = sample_stack(cfg.noise, cfg.seed, cfg.draws)
    h_stack = build_hamiltonian_stack(
        cfg.params, cfg.field, stack.d_bx, stack.d_by, stack.d_bz, stack.d_azz_hz
    )
    evals, evecs = eigh_stack(h_stack)
    rho0 = polarized_initial_state()

    n_t = len(cfg.times_s)
    signals = np.zeros((n_t, len(cfg.phases_rad)))
    contrast = np.zeros(n_t)
    contrast_err = np.zeros(n_t)
    fits: list[FitResult | None] = []
    rng = np.random.Generator(
        np.random.PCG64(np.random.SeedSequence(entropy=cfg.seed, spawn_key=(_RNG_READOUT,)))
    )
    for i, t in enumerate(cfg.times_s):
        program = compile_program(seq, ctx, bindings=_bindings_for(cfg, t), sweep=("phi", cfg.phases_rad))
        populations = run_program(evals, evecs, rho0, program).mean(axis=0)
        if cfg.noise.t1e_envelope:
            populations = populations * t1e_envelope_factor(t, cfg.params.t1e_s)
        signals[i] = readout_signal(populations, cfg.readout, rng)
        try:
            res = fit_sinusoid(cfg.phases_rad, signals[i])
            contrast[i] = res["c"]
            contrast_err[i] = res.error("c")
            fits.append(res)
        except ValueError:
            contrast[i] = np.nan
            contrast_err[i] = np.nan
            fits.append(None)
    return RamseyResult(
        times_s=cfg.times_s.copy(),
        contrast=contrast,
        contrast_err=contrast_err,
        phases_rad=cfg.phases_rad.copy(),
        signals=signals,
        fits=fits,
    )


def fit_t2n(times_s: np.ndarray, contrast: np.ndarray) -> tuple[float, float, FitResult]:
    """(T2n*, uncertainty, full fit) from c(t) = c*exp(-t/T2n*)."""
    times_s = np.asarray(times_s, dtype=float)
    contrast = np.asarray(contrast, dtype=float)
    keep = np.isfinite(contrast)
    res = fit_exponential(times_s[keep], contrast[keep])
    return res["t_decay"], res.error("t_decay"), res


def dq_protected_ramsey(cfg: RamseyConfig) -> tuple[float, float, RamseyResult]:
    """Protected scan (DQ flip at cfg.dq_flip_fraction of the evolution);
    returns (T2n*, uncertainty, contrast table)."""
    cfg.manifold = "dq"
    result = ramsey_scan(cfg)
    t2n, err, _ = fit_t2n(result.times_s, result.contrast)
    return t2n, err, result
