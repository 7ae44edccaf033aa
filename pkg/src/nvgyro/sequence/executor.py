"""Reference executor: evolves a 6x6 density operator element by element,
checking physicality (trace, Hermiticity, positivity) at every step.

The compiled-program path (nvgyro.engine) reproduces these semantics for
draw ensembles; this implementation is the readable single-shot one used
for validation and for protocols that need the final state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..hamiltonian import build_hamiltonian, propagator
from ..noise import NoiseDraw
from ..operators import DIM, manifold_projector
from ..params import FieldVector, NVParams
from .compile import (
    ExecOptions,
    ExecutionContext,
    default_initial_state,
    finite_pulse_unitary,
    pulse_unitary,
)
from .elements import (
    DQPulse,
    FinitePulse,
    FreeEvolve,
    IdealPulse,
    LaserReset,
    Prepare,
    Readout,
    Sequence,
)

TRACE_TOL = 1e-10
HERM_TOL = 1e-10
EIG_TOL = 1e-10


class NonPhysicalStateError(RuntimeError):
    """Density operator drifted outside physical tolerances."""


def validate_density(rho: np.ndarray, where: str = "") -> None:
    tag = f" after {where}" if where else ""
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise NonPhysicalStateError(f"trace {np.trace(rho):.12g} != 1{tag}")
    if np.linalg.norm(rho - rho.conj().T) > HERM_TOL * max(np.linalg.norm(rho), 1.0):
        raise NonPhysicalStateError(f"state not Hermitian{tag}")
    if float(np.min(np.linalg.eigvalsh(0.5 * (rho + rho.conj().T)))) < -EIG_TOL:
        raise NonPhysicalStateError(f"negative population{tag}")


def apply_reset(rho: np.ndarray, fidelity: float) -> np.ndarray:
    blocks = rho.reshape(3, 2, 3, 2)
    tr_e = np.einsum("ajak->jk", blocks)
    out = np.zeros_like(rho)
    out[2:4, 2:4] = fidelity * tr_e
    out[2, 2] += 0.5 * (1.0 - fidelity)
    out[3, 3] += 0.5 * (1.0 - fidelity)
    return out


def execute(
    seq: Sequence,
    params: NVParams,
    field: FieldVector,
    draw: Optional[NoiseDraw] = None,
    bindings: Optional[dict[str, float]] = None,
    options: Optional[ExecOptions] = None,
    rho0: Optional[np.ndarray] = None,
    extra_hamiltonian: Optional[np.ndarray] = None,
) -> tuple[np.ndarray, float]:
    """Run a sequence for one draw; returns (final state, readout value).

    Pulse carriers always come from the noiseless Hamiltonian (the
    generators are tuned to the nominal resonances); the draw perturbs
    only the free evolution. extra_hamiltonian (rad/s) is added to the
    evolution generator, e.g. the rotation term -Omega_z*Iz.
    """
    options = options or ExecOptions()
    ctx = ExecutionContext(params=params, field=field, options=options)
    bound = seq.bind(bindings or {})
    h = build_hamiltonian(params, field, draw)
    if extra_hamiltonian is not None:
        h = h + extra_hamiltonian
    h0 = build_hamiltonian(params, field)

    rho = default_initial_state() if rho0 is None else np.asarray(rho0, dtype=complex).copy()
    if options.validate:
        validate_density(rho, "initial state")

    elapsed = 0.0
    value: Optional[float] = None
    for element in bound.elements:
        if isinstance(element, IdealPulse):
            u = pulse_unitary(element, ctx, elapsed)
            rho = u @ rho @ u.conj().T
        elif isinstance(element, FinitePulse):
            u, duration = finite_pulse_unitary(element, h0, ctx, elapsed)
            rho = u @ rho @ u.conj().T
            elapsed += duration
        elif isinstance(element, DQPulse):
            for p in element.expansion():
                u = pulse_unitary(p, ctx, elapsed)
                rho = u @ rho @ u.conj().T
        elif isinstance(element, Prepare):
            rho = apply_reset(rho, element.fidelity)
            if element.manifold != 0:
                u = pulse_unitary(IdealPulse("mw", element.manifold, math.pi), ctx, elapsed)
                rho = u @ rho @ u.conj().T
        elif isinstance(element, LaserReset):
            rho = apply_reset(rho, element.nuclear_fidelity)
        elif isinstance(element, FreeEvolve):
            tau = float(element.duration)
            u = propagator(h, tau)
            rho = u @ rho @ u.conj().T
            elapsed += tau
        elif isinstance(element, Readout):
            value = float(np.trace(rho @ manifold_projector(element.m_s)).real)
        else:
            raise TypeError(f"cannot execute element {element!r}")
        if options.validate:
            validate_density(rho, type(element).__name__)
    assert value is not None  # Sequence guarantees a terminal readout
    return rho, value


@dataclass(frozen=True)
class ReadoutModel:
    """Linear photoluminescence map with shot noise: the emitted value is
    offset + contrast * population + eps, eps ~ N(0, shot_noise_std/sqrt(shots))."""

    contrast: float = 1.0
    offset: float = 0.0
    shots: int = 1
    shot_noise_std: float = 0.0

    def __post_init__(self) -> None:
        if self.shots < 1:
            raise ValueError("shots must be >= 1")
        if self.shot_noise_std < 0.0:
            raise ValueError("shot noise std must be >= 0")


def readout_signal(
    state_or_population: np.ndarray | float,
    model: ReadoutModel,
    rng: Optional[np.random.Generator] = None,
) -> float | np.ndarray:
    """Photoluminescence value(s) for a state (6x6) or population(s)."""
    x = np.asarray(state_or_population)
    if x.ndim == 2 and x.shape == (DIM, DIM):
        population = float(np.trace(x @ manifold_projector(0)).real)
    else:
        population = x.astype(float) if x.ndim else float(x)
    value = model.offset + model.contrast * np.asarray(population)
    if model.shot_noise_std > 0.0:
        if rng is None:
            raise ValueError("shot noise requested but no generator supplied")
        value = value + rng.normal(0.0, model.shot_noise_std / math.sqrt(model.shots), size=np.shape(value))
    if np.ndim(value) == 0:
        return float(value)
    return value
