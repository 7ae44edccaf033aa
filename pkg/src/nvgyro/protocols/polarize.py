"""Nuclear spin polarization by repeated population transfer.

Each round moves |0,-1/2> to |-1,-1/2> with a nuclear-selective MW pi
pulse, flips it to |-1,+1/2> with an RF pi pulse, and re-initializes the
electron optically; population accumulates in |0,+1/2>. The finite-pulse
variant drives the MW transition at a 1 MHz Rabi frequency, so the
neighbouring hyperfine line (3.03 MHz away) is weakly driven too and the
transfer per round is imperfect.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field

import numpy as np

from ..operators import nuclear_projector
from ..params import FieldVector, NVParams
from ..sequence import ExecOptions, execute, parse_sequence


@dataclass
class PolarizeConfig:
    rounds: int = 2
    pulse_model: str = "ideal"  # or "finite"
    rabi_hz: float = 1e6
    reset_fidelity: float = 1.0
    magic_rabi: bool = True
    params: NVParams = dc_field(default_factory=NVParams)
    field: FieldVector = dc_field(default_factory=FieldVector)

    def __post_init__(self) -> None:
        if self.rounds < 0:
            raise ValueError("rounds must be >= 0")
        if self.pulse_model not in ("ideal", "finite"):
            raise ValueError("pulse model must be 'ideal' or 'finite'")

    def effective_rabi_hz(self) -> float:
        """Calibrated Rabi frequency for the selective MW pi pulse.

        A square pi pulse of Rabi Omega leaks population across the
        neighbouring hyperfine line (detuning = A_zz) with probability
        (Omega^2/(Omega^2+Azz^2)) sin^2((pi/2) sqrt(1+(Azz/Omega)^2)).
        At Omega = Azz/sqrt(4k^2-1) the detuned line completes exactly k
        full cycles during the pulse and the leakage vanishes; this picks
        the magic value nearest the requested Rabi frequency, which is
        how such pulses are calibrated in practice. magic_rabi=False
        drives at the raw requested value instead.
        """
        if not self.magic_rabi:
            return self.rabi_hz
        azz = self.params.a_zz_hz
        best = None
        for k in range(1, 64):
            candidate = azz / math.sqrt(4.0 * k * k - 1.0)
            if best is None or abs(candidate - self.rabi_hz) < abs(best - self.rabi_hz):
                best = candidate
        return best


@dataclass(frozen=True)
class PolarizeResult:
    polarization: float
    per_round: tuple[float, ...]
    sequence_text: str


def build_polarize_text(cfg: PolarizeConfig, rounds: int | None = None) -> str:
    rounds = cfg.rounds if rounds is None else rounds
    mw = "pulse mw sq(-1) pi mi(-1/2)"
    if cfg.pulse_model == "finite":
        mw += f" rabi={cfg.effective_rabi_hz()!r}Hz"
    reset = "reset" if cfg.reset_fidelity == 1.0 else f"reset fidelity={cfg.reset_fidelity!r}"
    lines = []
    for _ in range(rounds):
        lines += [mw, "pulse rf ms(-1) pi", reset]
    lines.append("readout ms(0)")
    return "\n".join(lines) + "\n"


def polarization_sequence(cfg: PolarizeConfig) -> PolarizeResult:
    """Run the transfer sequence from the unpolarized state; returns the
    final P(m_I = +1/2) and the value after each round."""
    proj = nuclear_projector(1)
    per_round = []
    for r in range(cfg.rounds + 1):
        text = build_polarize_text(cfg, rounds=r)
        seq = parse_sequence(text)
        rho, _ = execute(seq, cfg.params, cfg.field, options=ExecOptions())
        per_round.append(float(np.trace(rho @ proj).real))
    return PolarizeResult(
        polarization=per_round[-1],
        per_round=tuple(per_round),
        sequence_text=build_polarize_text(cfg),
    )
