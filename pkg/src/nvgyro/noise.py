"""Quasi-static noise: per-shot draws and ensemble averaging.

Every shot sees a constant random offset of the field components and of
the longitudinal hyperfine coupling (through temperature). "lorentzian"
spreads are HWHM, "gaussian" spreads are standard deviations.

The lorentzian magnetic axes are drawn *jointly* heavy-tailed (a
multivariate-t with one degree of freedom: axis spreads times independent
normals over one shared half-normal). Each axis marginal is then exactly
Lorentzian with the stated HWHM, and - the property the dephasing model
relies on - every linear combination of axes is again Lorentzian with the
root-sum-square width, so the ensemble coherence decays as
exp(-t * sqrt(sum_i (c_i G_i)^2)) for a transition with local field
gradients c_i. Independent per-axis Cauchy draws would instead add widths
in absolute value and overshoot the predicted rates at small
misalignment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Callable, Optional, Sequence

import numpy as np

KINDS = ("gaussian", "lorentzian", "none")


@dataclass(frozen=True)
class Spread:
    """One noise channel: distribution kind plus scale parameter."""

    kind: str = "none"
    value: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown distribution kind {self.kind!r}")
        if not math.isfinite(self.value) or self.value < 0.0:
            raise ValueError(f"spread must be finite and >= 0, got {self.value!r}")

    @property
    def active(self) -> bool:
        return self.kind != "none" and self.value > 0.0


def lorentzian(value: float) -> Spread:
    return Spread("lorentzian", value)


def gaussian(value: float) -> Spread:
    return Spread("gaussian", value)


@dataclass(frozen=True)
class NoiseModel:
    """Quasi-static noise configuration.

    Magnetic spreads are Gauss, the temperature spread is Kelvin and maps
    onto the hyperfine coupling through dazz_dt_hz_per_k. The slow offset
    drift (amplitude, period) feeds the gyroscope's signal offset; the
    t1e_envelope flag multiplies ensemble signals by exp(-t/(1.5 T1e)).
    """

    b_z: Spread = dc_field(default_factory=Spread)
    b_x: Spread = dc_field(default_factory=Spread)
    b_y: Spread = dc_field(default_factory=Spread)
    temperature_k: Spread = dc_field(default_factory=Spread)
    dazz_dt_hz_per_k: float = -272.0
    t1e_envelope: bool = False
    drift_amplitude: float = 0.0
    drift_period_s: float = 0.0

    def __post_init__(self) -> None:
        if self.drift_amplitude < 0.0:
            raise ValueError("drift amplitude must be >= 0")
        if self.drift_amplitude > 0.0 and self.drift_period_s <= 0.0:
            raise ValueError("drift period must be > 0 when drift is enabled")


@dataclass(frozen=True)
class NoiseDraw:
    """One shot's realization."""

    d_bz_gauss: float = 0.0
    d_bx_gauss: float = 0.0
    d_by_gauss: float = 0.0
    d_azz_hz: float = 0.0
    d_temp_k: float = 0.0
    d_offset: float = 0.0

    @classmethod
    def zero(cls) -> "NoiseDraw":
        return cls()


@dataclass(frozen=True)
class DrawStack:
    """Vectorized draws for a contiguous index range."""

    d_bz: np.ndarray
    d_bx: np.ndarray
    d_by: np.ndarray
    d_azz_hz: np.ndarray

    def __len__(self) -> int:
        return len(self.d_bz)


def _rng_for(master_seed: int, shot_index: int) -> np.random.Generator:
    # Counter-based construction: the stream depends only on the pair
    # (master_seed, shot_index), never on sampling order or scheduling.
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(shot_index,))
    return np.random.Generator(np.random.PCG64(ss))


def _draw_values(model: NoiseModel, rng: np.random.Generator) -> tuple[float, float, float, float]:
    # A fixed number of variates is always consumed so draws stay aligned
    # across model variants with the same seed.
    g = rng.standard_normal(6)
    mag_divisor = abs(g[0]) or np.finfo(float).tiny
    temp_divisor = abs(g[4]) or np.finfo(float).tiny

    def channel(spread: Spread, unit: float, divisor: float) -> float:
        if not spread.active:
            return 0.0
        if spread.kind == "gaussian":
            return spread.value * unit
        return spread.value * unit / divisor

    d_bz = channel(model.b_z, g[1], mag_divisor)
    d_bx = channel(model.b_x, g[2], mag_divisor)
    d_by = channel(model.b_y, g[3], mag_divisor)
    d_t = channel(model.temperature_k, g[5], temp_divisor)
    return d_bz, d_bx, d_by, d_t


def sample(model: NoiseModel, master_seed: int, shot_index: int) -> NoiseDraw:
    """Deterministic draw for one (seed, shot index) pair."""
    d_bz, d_bx, d_by, d_t = _draw_values(model, _rng_for(master_seed, shot_index))
    return NoiseDraw(
        d_bz_gauss=d_bz,
        d_bx_gauss=d_bx,
        d_by_gauss=d_by,
        d_azz_hz=model.dazz_dt_hz_per_k * d_t,
        d_temp_k=d_t,
    )


def sample_stack(model: NoiseModel, master_seed: int, n_draws: int, start_index: int = 0) -> DrawStack:
    """Draws for shot indices [start_index, start_index + n_draws)."""
    out = np.zeros((4, n_draws))
    for i in range(n_draws):
        d_bz, d_bx, d_by, d_t = _draw_values(model, _rng_for(master_seed, start_index + i))
        out[0, i] = d_bz
        out[1, i] = d_bx
        out[2, i] = d_by
        out[3, i] = model.dazz_dt_hz_per_k * d_t
    return DrawStack(d_bz=out[0], d_bx=out[1], d_by=out[2], d_azz_hz=out[3])


def offset_drift(model: NoiseModel, wall_time_s: float) -> float:
    """Slow additive drift of the signal offset at a given wall time."""
    if model.drift_amplitude == 0.0:
        return 0.0
    return model.drift_amplitude * math.sin(2.0 * math.pi * wall_time_s / model.drift_period_s)


class EnsembleError(RuntimeError):
    """A draw's experiment function failed; carries the draw index."""

    def __init__(self, draw_index: int, message: str):
        super().__init__(f"draw {draw_index}: {message}")
        self.draw_index = draw_index


def ensemble_average(
    experiment_fn: Callable[[NoiseDraw], np.ndarray | float],
    model: NoiseModel,
    n_draws: int,
    seed: int,
    coherence_times_s: Optional[Sequence[float]] = None,
    t1e_s: Optional[float] = None,
) -> np.ndarray:
    """Mean signal over n_draws deterministic draws, reduced in index
    order. With the model's t1e_envelope flag set and coherence times
    supplied, each averaged signal is multiplied by exp(-t/(1.5 T1e))."""
    if n_draws < 1:
        raise ValueError("n_draws must be >= 1")
    total: Optional[np.ndarray] = None
    for i in range(n_draws):
        draw = sample(model, seed, i)
        try:
            value = np.asarray(experiment_fn(draw), dtype=float)
        except Exception as exc:
            raise EnsembleError(i, str(exc)) from exc
        total = value if total is None else total + value
    assert total is not None
    mean = total / n_draws
    if model.t1e_envelope and coherence_times_s is not None:
        if t1e_s is None or t1e_s <= 0.0:
            raise ValueError("t1e_s must be > 0 when the T1e envelope is enabled")
        envelope = np.exp(-np.asarray(coherence_times_s, dtype=float) / (1.5 * t1e_s))
        mean = mean * envelope
    return mean


def t1e_envelope_factor(t_s: float, t1e_s: float) -> float:
    return math.exp(-t_s / (1.5 * t1e_s))
