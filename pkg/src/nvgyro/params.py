"""Physical constants of the 15NV electron-nuclear spin system.

All public values are in cycles-per-second (Hz, Hz/G, Hz/K) and Gauss;
angular-frequency conversion happens once, inside the Hamiltonian layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class NVParams:
    """Spin-system constants.

    Defaults are the measured values for the 15NV sample: zero-field
    splitting D = 2.87 GHz, gyromagnetic ratios 2.8024 MHz/G (electron)
    and 0.4316 kHz/G (nucleus), hyperfine couplings A_zz = 3.03 MHz and
    A_perp = 3.65 MHz, electron coherence times T2e* = 0.69 us and
    T1e = 5 ms, and a hyperfine temperature coefficient of -272 Hz/K.
    """

    d_hz: float = 2.87e9
    gamma_e_hz_per_g: float = 2.8024e6
    gamma_n_hz_per_g: float = 431.6
    a_zz_hz: float = 3.03e6
    a_perp_hz: float = 3.65e6
    t2e_star_s: float = 0.69e-6
    t1e_s: float = 5.0e-3
    dazz_dt_hz_per_k: float = -272.0

    def __post_init__(self) -> None:
        positives = {
            "d_hz": self.d_hz,
            "gamma_e_hz_per_g": self.gamma_e_hz_per_g,
            "gamma_n_hz_per_g": self.gamma_n_hz_per_g,
            "a_zz_hz": self.a_zz_hz,
            "a_perp_hz": self.a_perp_hz,
            "t2e_star_s": self.t2e_star_s,
            "t1e_s": self.t1e_s,
        }
        for name, value in positives.items():
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")
        if not math.isfinite(self.dazz_dt_hz_per_k):
            raise ValueError("dazz_dt_hz_per_k must be finite")

    def with_azz(self, a_zz_hz: float) -> "NVParams":
        return replace(self, a_zz_hz=a_zz_hz)

    @property
    def gyro_ratio(self) -> float:
        """Electron-to-nuclear gyromagnetic ratio (dimensionless, ~6493)."""
        return self.gamma_e_hz_per_g / self.gamma_n_hz_per_g


@dataclass(frozen=True)
class FieldVector:
    """Static magnetic field: magnitude (G), polar misalignment from the
    NV axis (rad), and azimuth (rad)."""

    b_gauss: float = 239.0
    theta_rad: float = 0.0
    phi_rad: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.b_gauss) or self.b_gauss < 0.0:
            raise ValueError(f"field magnitude must be finite and >= 0, got {self.b_gauss!r}")
        if not (0.0 <= self.theta_rad <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta_rad!r}")
        if not math.isfinite(self.phi_rad):
            raise ValueError("phi must be finite")

    @classmethod
    def from_degrees(cls, b_gauss: float, theta_deg: float, phi_deg: float = 0.0) -> "FieldVector":
        return cls(b_gauss, math.radians(theta_deg), math.radians(phi_deg))

    def cartesian(self) -> tuple[float, float, float]:
        """(B_x, B_y, B_z) in Gauss."""
        bx = self.b_gauss * math.sin(self.theta_rad) * math.cos(self.phi_rad)
        by = self.b_gauss * math.sin(self.theta_rad) * math.sin(self.phi_rad)
        bz = self.b_gauss * math.cos(self.theta_rad)
        return bx, by, bz


DEFAULT_PARAMS = NVParams()
DEFAULT_FIELD = FieldVector()
