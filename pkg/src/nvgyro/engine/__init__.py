"""Backend selection for the compiled-program kernel.

Two implementations with identical semantics: a per-draw Cython kernel
and a batched-numpy one. The compiled kernel wins by ~60x on small draw
stacks (per-call overhead; the gyroscope point loop lives here) while
batched BLAS pulls level around a few thousand draws, so the default
"auto" mode picks per call by stack size. Set NVGYRO_BACKEND=pure or
NVGYRO_BACKEND=cython to force one (forcing cython raises if the
extension is unavailable).
"""

from __future__ import annotations

import os

import numpy as np

from . import pure
from .program import (
    OP_APPLY,
    OP_EVOLVE,
    OP_READOUT,
    OP_RESET,
    Program,
    ProgramBuilder,
    finalize,
)

try:
    from . import _ckernel
except ImportError:
    _ckernel = None

#: draw count above which batched numpy overtakes the per-draw kernel
AUTO_CROSSOVER = 2048

_FORCED = os.environ.get("NVGYRO_BACKEND", "").strip().lower()
if _FORCED == "pure":
    _ACTIVE = "pure"
elif _FORCED == "cython":
    if _ckernel is None:
        raise ImportError("NVGYRO_BACKEND=cython but the compiled kernel is not importable")
    _ACTIVE = "cython"
elif _FORCED == "":
    _ACTIVE = "auto" if _ckernel is not None else "pure"
else:
    raise ValueError(f"NVGYRO_BACKEND must be 'pure' or 'cython', got {_FORCED!r}")


def backend_name() -> str:
    return _ACTIVE


def available_backends() -> tuple[str, ...]:
    return ("pure", "cython") if _ckernel is not None else ("pure",)


def run_program(
    evals: np.ndarray,
    evecs: np.ndarray,
    rho0: np.ndarray,
    program: Program,
    backend: str | None = None,
    evals_extra: np.ndarray | None = None,
) -> np.ndarray:
    """Execute a compiled program over a draw stack.

    evals: (n, 6) rad/s, evecs: (n, 6, 6) columns, rho0: (6, 6).
    evals_extra (n, 6) adds a small term to the evolution phases through
    a separate, exactly computed exponential (used for the rotation
    term). Returns (n, n_suffixes) readout values.
    """
    chosen = backend or _ACTIVE
    if chosen == "auto":
        chosen = "cython" if evals.shape[0] <= AUTO_CROSSOVER else "pure"
    if chosen == "pure":
        return pure.run_program(evals, evecs, rho0, program, evals_extra)
    if chosen == "cython":
        if _ckernel is None:
            raise RuntimeError("cython backend requested but not built")
        flat, offsets = program.flat_suffixes()
        return _ckernel.run_program_arrays(
            np.ascontiguousarray(evals, dtype=float),
            np.ascontiguousarray(evecs, dtype=complex),
            np.ascontiguousarray(rho0, dtype=complex),
            program.prefix,
            flat,
            offsets,
            program.unitaries,
            program.taus,
            program.fidelities,
            program.projectors,
            evals_extra,
        )
    raise ValueError(f"unknown backend {chosen!r}")


__all__ = [
    "OP_APPLY",
    "OP_EVOLVE",
    "OP_READOUT",
    "OP_RESET",
    "Program",
    "ProgramBuilder",
    "available_backends",
    "backend_name",
    "finalize",
    "run_program",
]
