"""Temperature-shift round trip: inject a hyperfine temperature
coefficient, measure nuclear transition frequencies in both m_S = +/-1
manifolds, and recover the coefficient from the linear fit.

Averaging the two manifolds' frequencies isolates the hyperfine coupling:
omega_n(+/-1) ~ A_zz +/- gamma_n B, so the Zeeman part (and its drift)
cancels in the sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from ..analysis import FitResult, fit_linear
from ..hamiltonian import nuclear_transition_frequency
from ..params import FieldVector, NVParams


@dataclass
class TempShiftConfig:
    delta_t_k: np.ndarray = dc_field(default_factory=lambda: np.linspace(-15.0, 15.0, 7))
    freq_noise_std_hz: float = 10.0
    params: NVParams = dc_field(default_factory=NVParams)
    field: FieldVector = dc_field(default_factory=FieldVector)
    seed: int = 0

    def __post_init__(self) -> None:
        self.delta_t_k = np.asarray(self.delta_t_k, dtype=float)
        if len(self.delta_t_k) < 3:
            raise ValueError("need at least 3 temperature points")


@dataclass(frozen=True)
class TempShiftRow:
    delta_t_k: float
    omega_p1_hz: float
    omega_m1_hz: float
    average_hz: float


@dataclass(frozen=True)
class TempShiftResult:
    rows: tuple[TempShiftRow, ...]
    slope_hz_per_k: float
    slope_err_hz_per_k: float
    fit: FitResult


def temperature_roundtrip(cfg: TempShiftConfig) -> TempShiftResult:
    """Sweep the temperature offsets and fit d(average)/dT."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=cfg.seed)))
    rows = []
    for dt in cfg.delta_t_k:
        shifted = cfg.params.with_azz(cfg.params.a_zz_hz + cfg.params.dazz_dt_hz_per_k * dt)
        noise = rng.normal(0.0, cfg.freq_noise_std_hz, size=2) if cfg.freq_noise_std_hz > 0 else (0.0, 0.0)
        omega_p = nuclear_transition_frequency(shifted, cfg.field, 1) + noise[0]
        omega_m = nuclear_transition_frequency(shifted, cfg.field, -1) + noise[1]
        rows.append(
            TempShiftRow(
                delta_t_k=float(dt),
                omega_p1_hz=float(omega_p),
                omega_m1_hz=float(omega_m),
                average_hz=float(0.5 * (omega_p + omega_m)),
            )
        )
    fit = fit_linear(cfg.delta_t_k, np.array([r.average_hz for r in rows]))
    return TempShiftResult(
        rows=tuple(rows),
        slope_hz_per_k=fit["slope"],
        slope_err_hz_per_k=fit.error("slope"),
        fit=fit,
    )
