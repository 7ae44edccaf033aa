"""Compiled element programs executed by the backends.

A program is a short opcode list over 6x6 density matrices:

    APPLY u      rho <- U rho U+          (pulse unitaries, draw-independent)
    EVOLVE tau   rho <- U(tau) rho U(tau)+  with U built from the draw's
                 eigendecomposition, U = V exp(-i w tau) V+
    RESET f      optical reset: rho <- |0><0|_e (x) (f Tr_e rho + (1-f) 1/2)
    READOUT p    emit Re Tr(rho P) and finish

The common prefix runs once per draw; each suffix (e.g. one per readout
phase) restarts from the post-prefix state. Backends receive the draws'
eigenvalues/eigenvectors precomputed, so the hot loop is pure dense 6x6
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

OP_APPLY = 0
OP_EVOLVE = 1
OP_RESET = 2
OP_READOUT = 3

DIM = 6


@dataclass
class ProgramBuilder:
    unitaries: list[np.ndarray] = field(default_factory=list)
    taus: list[float] = field(default_factory=list)
    fidelities: list[float] = field(default_factory=list)
    projectors: list[np.ndarray] = field(default_factory=list)
    _ops: list[tuple[int, int]] = field(default_factory=list)

    def apply(self, u: np.ndarray) -> None:
        self.unitaries.append(np.ascontiguousarray(u, dtype=complex))
        self._ops.append((OP_APPLY, len(self.unitaries) - 1))

    def evolve(self, tau_s: float) -> None:
        self.taus.append(float(tau_s))
        self._ops.append((OP_EVOLVE, len(self.taus) - 1))

    def reset(self, fidelity: float) -> None:
        self.fidelities.append(float(fidelity))
        self._ops.append((OP_RESET, len(self.fidelities) - 1))

    def readout(self, projector: np.ndarray) -> None:
        self.projectors.append(np.ascontiguousarray(projector.real, dtype=float))
        self._ops.append((OP_READOUT, len(self.projectors) - 1))

    def take_ops(self) -> np.ndarray:
        ops = np.asarray(self._ops, dtype=np.int64).reshape(-1, 2)
        self._ops = []
        return ops


@dataclass(frozen=True)
class Program:
    """Prefix + suffix opcode lists over shared operand banks."""

    prefix: np.ndarray
    suffixes: tuple[np.ndarray, ...]
    unitaries: np.ndarray
    taus: np.ndarray
    fidelities: np.ndarray
    projectors: np.ndarray

    @property
    def n_suffixes(self) -> int:
        return len(self.suffixes)

    def flat_suffixes(self) -> tuple[np.ndarray, np.ndarray]:
        """(all suffix ops stacked, offsets) for the compiled kernel."""
        if self.suffixes:
            flat = np.concatenate([s.reshape(-1, 2) for s in self.suffixes], axis=0)
        else:
            flat = np.zeros((0, 2), dtype=np.int64)
        offsets = np.zeros(len(self.suffixes) + 1, dtype=np.int64)
        for i, s in enumerate(self.suffixes):
            offsets[i + 1] = offsets[i] + len(s)
        return np.ascontiguousarray(flat, dtype=np.int64), offsets


def finalize(builder: ProgramBuilder, prefix: np.ndarray, suffixes: list[np.ndarray]) -> Program:
    def bank(items: list[np.ndarray], shape: tuple[int, ...], dtype) -> np.ndarray:
        if items:
            return np.ascontiguousarray(np.stack(items), dtype=dtype)
        return np.zeros((0,) + shape, dtype=dtype)

    return Program(
        prefix=np.ascontiguousarray(prefix, dtype=np.int64),
        suffixes=tuple(np.ascontiguousarray(s, dtype=np.int64) for s in suffixes),
        unitaries=bank(builder.unitaries, (DIM, DIM), complex),
        taus=np.asarray(builder.taus, dtype=float),
        fidelities=np.asarray(builder.fidelities, dtype=float),
        projectors=bank(builder.projectors, (DIM, DIM), float),
    )
