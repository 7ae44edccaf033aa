"""Lower a bound Sequence onto the engine's opcode program.

Pulse phases are defined in each drive channel's rotating frame. A
channel (one generator) is a transition plus its selectivity; its carrier
defaults to the nominal transition frequency from the noiseless
eigensystem, and a pulse played at elapsed time T with phase phi becomes
a lab-frame rotation with phase phi + carrier*T. Noise detunes the real
transitions away from the carriers, which is exactly how quasi-static
dephasing enters. frame_tracking=False instead applies phases as fixed
lab-frame axes (Ramsey fringes then oscillate at the full transition
frequency).

Pulse unitaries depend only on bound parameters and elapsed time, never
on the noise draw, so one compiled program serves the whole draw stack.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Optional, Sequence as Seq

import numpy as np

from ..engine import Program, ProgramBuilder, finalize
from ..hamiltonian import LabeledEigensystem, build_hamiltonian, eigensystem, require_hermitian
from ..operators import DIM, OPS, basis_index, manifold_projector
from ..params import FieldVector, NVParams
from .elements import (
    DQPulse,
    Element,
    FinitePulse,
    FreeEvolve,
    IdealPulse,
    LaserReset,
    ParamExpr,
    Prepare,
    Readout,
    Sequence,
)

ChannelKey = tuple


def dressed_vector_matrix(eig: LabeledEigensystem) -> np.ndarray:
    """Eigenvectors as columns indexed by the canonical position of their
    adiabatic label, with the dominant component's phase gauged away."""
    from ..operators import BASIS_LABELS

    vectors = np.zeros((DIM, DIM), dtype=complex)
    for canonical, label in enumerate(BASIS_LABELS):
        v = eig.evecs[:, eig.index_of(*label)].copy()
        k = int(np.argmax(np.abs(v)))
        v *= np.conj(v[k]) / abs(v[k])
        vectors[:, canonical] = v
    return vectors


@dataclass(frozen=True)
class ExecOptions:
    frame_tracking: bool = True
    carrier_overrides_hz: Optional[dict[ChannelKey, float]] = None
    validate: bool = True


@dataclass
class ExecutionContext:
    params: NVParams
    field: FieldVector
    options: ExecOptions = dc_field(default_factory=ExecOptions)

    @cached_property
    def nominal(self) -> LabeledEigensystem:
        return eigensystem(build_hamiltonian(self.params, self.field))

    @cached_property
    def dressed_vectors(self) -> np.ndarray:
        """Nominal eigenvectors by canonical index of their label, gauge
        fixed so the dominant canonical component is real positive.

        Ideal pulses rotate these dressed pairs: a selective drive in the
        narrow-band limit addresses energy eigenstates, not bare product
        states (the bare-state rotation would leak amplitude of order the
        zero-quantum mixing onto the anti-crossing partners)."""
        return dressed_vector_matrix(self.nominal)

    def channel_key(self, pulse: IdealPulse | FinitePulse) -> ChannelKey:
        if pulse.channel == "mw":
            return ("mw", pulse.target, pulse.mi_select)
        return ("rf", pulse.target)

    def addressed_pairs(self, pulse: IdealPulse | FinitePulse) -> list[tuple[int, int]]:
        """Canonical (upper, lower) index pairs, ordered by nominal energy."""
        pairs: list[tuple[int, int]] = []
        if pulse.channel == "mw":
            selectors = (pulse.mi_select,) if pulse.mi_select is not None else (1, -1)
            for two_m_i in selectors:
                pairs.append(self._ordered(basis_index(pulse.target, two_m_i), basis_index(0, two_m_i)))
        else:
            manifolds = (pulse.target,) if pulse.target is not None else (1, 0, -1)
            for m_s in manifolds:
                pairs.append(self._ordered(basis_index(m_s, 1), basis_index(m_s, -1)))
        return pairs

    def _ordered(self, i: int, j: int) -> tuple[int, int]:
        e = self.nominal.evals
        li, lj = self._level_of(i), self._level_of(j)
        return (i, j) if e[li] >= e[lj] else (j, i)

    def _level_of(self, canonical_index: int) -> int:
        from ..operators import BASIS_LABELS

        return self.nominal.index_of(*BASIS_LABELS[canonical_index])

    def carrier_rad(self, pulse: IdealPulse | FinitePulse) -> float:
        """Channel generator frequency (rad/s): the nominal transition
        frequency, averaged over the addressed pairs for non-selective
        pulses; overridable per channel."""
        key = self.channel_key(pulse)
        overrides = self.options.carrier_overrides_hz or {}
        if key in overrides:
            return 2.0 * math.pi * overrides[key]
        from ..operators import BASIS_LABELS

        freqs = []
        for a, b in self.addressed_pairs(pulse):
            ea = self.nominal.energy_rad(*BASIS_LABELS[a])
            eb = self.nominal.energy_rad(*BASIS_LABELS[b])
            freqs.append(abs(ea - eb))
        return float(np.mean(freqs))


def embedded_rotation(
    pairs: Seq[tuple[int, int]],
    angle: float,
    lab_phase: float,
    vectors: Optional[np.ndarray] = None,
) -> np.ndarray:
    """exp(-i(angle/2)(cos(phi) sx + sin(phi) sy)) on each (upper, lower)
    pair, identity elsewhere. With `vectors` given (columns indexed by
    canonical label), the rotation acts on those dressed states instead
    of the bare basis states."""
    c = math.cos(angle / 2.0)
    s = math.sin(angle / 2.0)
    u = np.eye(DIM, dtype=complex)
    for a, b in pairs:
        va = vectors[:, a] if vectors is not None else _unit(a)
        vb = vectors[:, b] if vectors is not None else _unit(b)
        paa = np.outer(va, va.conj())
        pbb = np.outer(vb, vb.conj())
        pab = np.outer(va, vb.conj())
        u += (c - 1.0) * (paa + pbb)
        u += -1j * s * (np.exp(-1j * lab_phase) * pab + np.exp(1j * lab_phase) * pab.conj().T)
    return u


def _unit(index: int) -> np.ndarray:
    v = np.zeros(DIM, dtype=complex)
    v[index] = 1.0
    return v


def pulse_unitary(pulse: IdealPulse, ctx: ExecutionContext, elapsed_s: float) -> np.ndarray:
    angle = float(pulse.angle)
    phase = float(pulse.phase)
    if not 0.0 < angle <= 2.0 * math.pi + 1e-12:
        raise ValueError(f"pulse angle must lie in (0, 2*pi], got {angle!r}")
    lab_phase = phase
    if ctx.options.frame_tracking:
        lab_phase += ctx.carrier_rad(pulse) * elapsed_s
    return embedded_rotation(ctx.addressed_pairs(pulse), angle, lab_phase, ctx.dressed_vectors)


def finite_pulse_unitary(
    pulse: FinitePulse,
    h0: np.ndarray,
    ctx: ExecutionContext,
    elapsed_s: float = 0.0,
) -> tuple[np.ndarray, float]:
    """Lab-frame unitary of a finite-duration drive and its duration.

    The drive frame rotates at the carrier (+ detuning); couplings whose
    rotating-frame detuning exceeds the cutoff are dropped, the rest stay
    as static detuned couplings, so neighbouring transitions are driven
    off-resonantly exactly as a real finite-selectivity pulse does.
    """
    omega_rabi = 2.0 * math.pi * pulse.rabi_hz
    cutoff = 2.0 * math.pi * pulse.cutoff_hz
    if omega_rabi > 0.0 and cutoff <= omega_rabi:
        warnings.warn(
            f"rotating-wave cutoff {pulse.cutoff_hz:g} Hz <= Rabi frequency {pulse.rabi_hz:g} Hz",
            stacklevel=2,
        )
    angle = float(pulse.angle)
    phase = float(pulse.phase)
    duration = pulse.duration_s if pulse.duration_s is not None else angle / omega_rabi
    omega_d = ctx.carrier_rad(pulse) + 2.0 * math.pi * pulse.detuning_hz

    # work in the dressed frame: eigenstate energies on the diagonal and
    # the drive operator's matrix elements between dressed states, so the
    # narrow-band limit converges to the ideal dressed rotation
    from ..operators import BASIS_LABELS

    dressed = eigensystem(h0)
    vectors = dressed_vector_matrix(dressed)
    energies = np.array([dressed.energy_rad(*label) for label in BASIS_LABELS])
    pairs = ctx.addressed_pairs(pulse)
    bare_drive = OPS.sx if pulse.channel == "mw" else OPS.ix
    drive_op = vectors.conj().T @ bare_drive @ vectors

    # photon-number gauge: +1 on every upper level of the drive's ladder
    g = np.zeros(DIM)
    if pulse.channel == "mw":
        for k, (m_s, _) in enumerate(BASIS_LABELS):
            g[k] = 1.0 if m_s != 0 else 0.0
    else:
        upper_two_mi = BASIS_LABELS[pairs[0][0]][1]
        for k, (_, two_mi) in enumerate(BASIS_LABELS):
            g[k] = 1.0 if two_mi == upper_two_mi else 0.0

    x_ref = abs(drive_op[pairs[0][0], pairs[0][1]])
    amp = omega_rabi / (2.0 * x_ref) if x_ref > 0.0 else 0.0

    h_eff = np.diag(energies - omega_d * g).astype(complex)
    for j in range(DIM):
        for k in range(j + 1, DIM):
            dg = g[j] - g[k]
            if dg == 0.0 or drive_op[j, k] == 0.0:
                continue
            detuning = (energies[j] - energies[k]) - omega_d * dg
            if abs(detuning) > cutoff:
                continue
            term = amp * drive_op[j, k] * np.exp(-1j * phase * dg)
            h_eff[j, k] += term
            h_eff[k, j] += np.conj(term)

    evals, evecs = np.linalg.eigh(h_eff)
    u_rot = (evecs * np.exp(-1j * evals * duration)[None, :]) @ evecs.conj().T

    t0 = 0.0 if ctx.options.frame_tracking else elapsed_s
    w_out = np.exp(-1j * omega_d * (elapsed_s + duration - t0) * g)
    w_in = np.exp(1j * omega_d * (elapsed_s - t0) * g)
    u_dressed = (w_out[:, None] * u_rot) * w_in[None, :]
    u_lab = vectors @ u_dressed @ vectors.conj().T
    return u_lab, duration


def _depends_on(element: Element, name: str) -> bool:
    from dataclasses import fields

    for f in fields(element):
        v = getattr(element, f.name)
        if isinstance(v, ParamExpr) and v.name == name:
            return True
    return False


def _emit(
    element: Element,
    builder: ProgramBuilder,
    ctx: ExecutionContext,
    h0: np.ndarray,
    elapsed: float,
) -> float:
    """Append one element's ops; returns the updated elapsed time."""
    if isinstance(element, IdealPulse):
        builder.apply(pulse_unitary(element, ctx, elapsed))
    elif isinstance(element, FinitePulse):
        u, duration = finite_pulse_unitary(element, h0, ctx, elapsed)
        builder.apply(u)
        elapsed += duration
    elif isinstance(element, DQPulse):
        for p in element.expansion():
            builder.apply(pulse_unitary(p, ctx, elapsed))
    elif isinstance(element, Prepare):
        builder.reset(element.fidelity)
        if element.manifold != 0:
            builder.apply(pulse_unitary(IdealPulse("mw", element.manifold, math.pi), ctx, elapsed))
    elif isinstance(element, LaserReset):
        builder.reset(element.nuclear_fidelity)
    elif isinstance(element, FreeEvolve):
        tau = float(element.duration)
        if tau < 0.0:
            raise ValueError("evolution duration must be >= 0")
        builder.evolve(tau)
        elapsed += tau
    elif isinstance(element, Readout):
        builder.readout(manifold_projector(element.m_s).real)
    else:
        raise TypeError(f"cannot compile element {element!r}")
    return elapsed


def compile_program(
    seq: Sequence,
    ctx: ExecutionContext,
    bindings: Optional[dict[str, float]] = None,
    sweep: Optional[tuple[str, Seq[float]]] = None,
) -> Program:
    """Compile, optionally splitting at the first element that references
    the sweep parameter: everything before it becomes the shared prefix,
    the tail is compiled once per sweep value as a suffix."""
    bindings = dict(bindings or {})
    h0 = build_hamiltonian(ctx.params, ctx.field)

    if sweep is None:
        split = len(seq.elements) - 1  # readout-only suffix
        values: Seq[float] = [0.0]
        sweep_name = None
    else:
        sweep_name, values = sweep
        depends = [i for i, e in enumerate(seq.elements) if _depends_on(e, sweep_name)]
        split = depends[0] if depends else len(seq.elements) - 1

    builder = ProgramBuilder()
    prefix_seq = Sequence(tuple(seq.elements[:split]) + (Readout(),)).bind(bindings) if split else None
    elapsed = 0.0
    if prefix_seq is not None:
        for element in prefix_seq.elements[:-1]:
            elapsed = _emit(element, builder, ctx, h0, elapsed)
    prefix_ops = builder.take_ops()

    suffixes = []
    for v in values:
        b = dict(bindings)
        if sweep_name is not None:
            b[sweep_name] = float(v)
        tail = Sequence(seq.elements[split:]).bind(b)
        t = elapsed
        for element in tail.elements:
            t = _emit(element, builder, ctx, h0, t)
        suffixes.append(builder.take_ops())

    return finalize(builder, prefix_ops, suffixes)


def default_initial_state() -> np.ndarray:
    """Electron |0>, nuclear maximally mixed."""
    rho = np.zeros((DIM, DIM), dtype=complex)
    rho[2, 2] = 0.5
    rho[3, 3] = 0.5
    return rho


def polarized_initial_state(two_m_i: int = 1) -> np.ndarray:
    """|0, m_I><0, m_I|: the state the polarization sequence prepares;
    Ramsey and gyroscope runs start here."""
    rho = np.zeros((DIM, DIM), dtype=complex)
    k = basis_index(0, two_m_i)
    rho[k, k] = 1.0
    return rho
