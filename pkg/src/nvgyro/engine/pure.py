"""Pure-numpy backend: the whole draw stack is advanced together, so each
program step is a handful of batched tensor contractions."""

from __future__ import annotations

import numpy as np

from .program import OP_APPLY, OP_EVOLVE, OP_READOUT, OP_RESET, Program

NAME = "pure"


def _apply_unitary(rho: np.ndarray, u: np.ndarray) -> np.ndarray:
    return np.einsum("ab,nbc,dc->nad", u, rho, u.conj(), optimize=True)


def _evolve(
    rho: np.ndarray,
    evals: np.ndarray,
    evecs: np.ndarray,
    tau: float,
    evals_extra: np.ndarray | None,
) -> np.ndarray:
    # a small extra term (e.g. the rotation shift) is exponentiated
    # separately: its phase is tiny and exact, while folding it into the
    # ~1e10 rad/s eigenvalues would round the total phase at the 1e-8 rad
    # level and break the exact equivalence between rotation emulations
    phases = np.exp(-1j * evals * tau)
    if evals_extra is not None:
        phases = phases * np.exp(-1j * evals_extra * tau)
    u = (evecs * phases[:, None, :]) @ np.conj(np.swapaxes(evecs, 1, 2))
    return u @ rho @ np.conj(np.swapaxes(u, 1, 2))


def _reset(rho: np.ndarray, fidelity: float) -> np.ndarray:
    n = rho.shape[0]
    blocks = rho.reshape(n, 3, 2, 3, 2)
    tr_e = np.einsum("najak->njk", blocks)
    out = np.zeros_like(rho)
    out[:, 2:4, 2:4] = fidelity * tr_e
    out[:, 2, 2] += 0.5 * (1.0 - fidelity)
    out[:, 3, 3] += 0.5 * (1.0 - fidelity)
    return out


def _run_ops(
    rho: np.ndarray,
    ops: np.ndarray,
    evals: np.ndarray,
    evecs: np.ndarray,
    program: Program,
    evals_extra: np.ndarray | None,
) -> tuple[np.ndarray, np.ndarray | None]:
    value = None
    for code, arg in ops:
        if code == OP_APPLY:
            rho = _apply_unitary(rho, program.unitaries[arg])
        elif code == OP_EVOLVE:
            rho = _evolve(rho, evals, evecs, program.taus[arg], evals_extra)
        elif code == OP_RESET:
            rho = _reset(rho, program.fidelities[arg])
        elif code == OP_READOUT:
            p = program.projectors[arg]
            value = np.einsum("nab,ba->n", rho, p).real
        else:
            raise ValueError(f"unknown opcode {code}")
    return rho, value


def run_program(
    evals: np.ndarray,
    evecs: np.ndarray,
    rho0: np.ndarray,
    program: Program,
    evals_extra: np.ndarray | None = None,
) -> np.ndarray:
    """(n_draws, n_suffixes) readout values."""
    n = evals.shape[0]
    rho = np.broadcast_to(np.asarray(rho0, dtype=complex), (n, 6, 6)).copy()
    rho, _ = _run_ops(rho, program.prefix, evals, evecs, program, evals_extra)
    out = np.zeros((n, program.n_suffixes))
    for j, suffix in enumerate(program.suffixes):
        _, value = _run_ops(rho.copy(), suffix, evals, evecs, program, evals_extra)
        if value is None:
            raise ValueError("suffix does not end in a readout")
        out[:, j] = value
    return out
