"""Hamiltonian construction, exact diagonalization, and propagators.

Matrices live in angular-frequency units (rad/s); every scalar frequency
that crosses the public API is in cycles (Hz). Fields are Gauss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

import numpy as np

from .operators import BASIS_LABELS, DIM, OPS
from .params import FieldVector, NVParams

if TYPE_CHECKING:
    from .noise import NoiseDraw

TWO_PI = 2.0 * math.pi

HERMITICITY_RTOL = 1e-12
LABEL_TIE_TOL = 1e-9


class DiagonalizationError(RuntimeError):
    """Eigensolver failed to converge."""


def require_hermitian(h: np.ndarray, rtol: float = HERMITICITY_RTOL) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.shape != (DIM, DIM):
        raise ValueError(f"operator must be {DIM}x{DIM}, got {h.shape}")
    scale = max(float(np.linalg.norm(h)), 1.0)
    if float(np.linalg.norm(h - h.conj().T)) > rtol * scale:
        raise ValueError("operator is not Hermitian within tolerance")
    return h


def hamiltonian_terms(params: NVParams) -> dict[str, np.ndarray]:
    """Static term and per-unit derivative terms (rad/s per G, per Hz).

    H(draw) = base + dBx*bx + dBy*by + dBz*bz + dAzz_hz*azz, which keeps
    batched construction over noise draws a single tensor contraction.
    """
    d = TWO_PI * params.d_hz
    ge = TWO_PI * params.gamma_e_hz_per_g
    gn = TWO_PI * params.gamma_n_hz_per_g
    azz = TWO_PI * params.a_zz_hz
    aperp = TWO_PI * params.a_perp_hz
    return {
        "base": d * OPS.sz2 + azz * (OPS.sz @ OPS.iz) + aperp * (OPS.sx @ OPS.ix + OPS.sy @ OPS.iy),
        "bx": ge * OPS.sx + gn * OPS.ix,
        "by": ge * OPS.sy + gn * OPS.iy,
        "bz": ge * OPS.sz + gn * OPS.iz,
        "azz": TWO_PI * (OPS.sz @ OPS.iz),
    }


def _nominal_hamiltonian(params: NVParams, field: FieldVector) -> np.ndarray:
    bx, by, bz = field.cartesian()
    t = hamiltonian_terms(params)
    return t["base"] + bx * t["bx"] + by * t["by"] + bz * t["bz"]


def build_hamiltonian(
    params: NVParams,
    field: FieldVector,
    draw: Optional["NoiseDraw"] = None,
) -> np.ndarray:
    """Full ground-state Hamiltonian (rad/s):

    H = D Sz^2 + ge B.S + gn B.I + Azz Sz Iz + Aperp (Sx Ix + Sy Iy)

    with the draw's (dBx, dBy, dBz) added to the nominal field and dAzz
    added to the longitudinal hyperfine coupling. The draw terms are
    accumulated exactly as in build_hamiltonian_stack so single-draw and
    stacked paths agree bit for bit.
    """
    h = _nominal_hamiltonian(params, field)
    if draw is not None:
        offsets = (draw.d_bx_gauss, draw.d_by_gauss, draw.d_bz_gauss, draw.d_azz_hz)
        if not all(math.isfinite(v) for v in offsets):
            raise ValueError("non-finite field or noise input")
        t = hamiltonian_terms(params)
        h = h.copy()
        h += draw.d_bx_gauss * t["bx"]
        h += draw.d_by_gauss * t["by"]
        h += draw.d_bz_gauss * t["bz"]
        h += draw.d_azz_hz * t["azz"]
    if not np.all(np.isfinite(h)):
        raise ValueError("non-finite field or noise input")
    return h


def build_hamiltonian_stack(
    params: NVParams,
    field: FieldVector,
    d_bx: np.ndarray,
    d_by: np.ndarray,
    d_bz: np.ndarray,
    d_azz_hz: np.ndarray,
    extra: Optional[np.ndarray] = None,
) -> np.ndarray:
    """(n, 6, 6) Hamiltonian stack for n noise draws.

    `extra` is an optional draw-independent operator added to every slice
    (e.g. the rotation term of the gyroscope emulation).
    """
    t = hamiltonian_terms(params)
    base = _nominal_hamiltonian(params, field)
    if extra is not None:
        base = base + extra
    stack = np.tile(base, (len(d_bx), 1, 1))
    stack += np.asarray(d_bx, dtype=float)[:, None, None] * t["bx"]
    stack += np.asarray(d_by, dtype=float)[:, None, None] * t["by"]
    stack += np.asarray(d_bz, dtype=float)[:, None, None] * t["bz"]
    stack += np.asarray(d_azz_hz, dtype=float)[:, None, None] * t["azz"]
    return stack


@dataclass(frozen=True)
class LabeledEigensystem:
    """Eigenvalues (rad/s, ascending), orthonormal eigenvectors (columns),
    and adiabatic labels (m_S, 2*m_I) assigned by maximum squared overlap
    with the canonical basis."""

    evals: np.ndarray
    evecs: np.ndarray
    labels: tuple[tuple[int, int], ...]

    def index_of(self, m_s: int, two_m_i: int) -> int:
        try:
            return self.labels.index((m_s, two_m_i))
        except ValueError:
            raise KeyError(f"no level labeled (m_s={m_s}, 2*m_i={two_m_i})") from None

    def energy_rad(self, m_s: int, two_m_i: int) -> float:
        return float(self.evals[self.index_of(m_s, two_m_i)])

    def energy_hz(self, m_s: int, two_m_i: int) -> float:
        return self.energy_rad(m_s, two_m_i) / TWO_PI

    def transition_hz(self, level_a: tuple[int, int], level_b: tuple[int, int]) -> float:
        """|E_a - E_b| in Hz."""
        return abs(self.energy_rad(*level_a) - self.energy_rad(*level_b)) / TWO_PI

    def reconstruct(self) -> np.ndarray:
        return (self.evecs * self.evals[None, :]) @ self.evecs.conj().T


def _assign_labels(evecs: np.ndarray) -> tuple[tuple[int, int], ...]:
    # Greedy bijection in ascending-eigenvalue order; an eigenvector takes
    # its maximum-overlap unused basis state, ties (within 1e-9) going to
    # the lowest basis index. Deterministic at the B = 0 degeneracies.
    overlap = np.abs(evecs) ** 2
    taken = [False] * DIM
    labels: list[tuple[int, int]] = []
    for k in range(DIM):
        free = [b for b in range(DIM) if not taken[b]]
        best = max(overlap[b, k] for b in free)
        chosen = min(b for b in free if overlap[b, k] >= best - LABEL_TIE_TOL)
        taken[chosen] = True
        labels.append(BASIS_LABELS[chosen])
    return tuple(labels)


def eigensystem(h: np.ndarray) -> LabeledEigensystem:
    """Exact diagonalization with adiabatic labeling."""
    h = require_hermitian(h)
    try:
        evals, evecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise DiagonalizationError(str(exc)) from exc
    evals.setflags(write=False)
    evecs.setflags(write=False)
    return LabeledEigensystem(evals=evals, evecs=evecs, labels=_assign_labels(evecs))


def eigh_stack(h_stack: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Batched Hermitian eigendecomposition, (n,6) evals and (n,6,6) evecs."""
    try:
        return np.linalg.eigh(h_stack)
    except np.linalg.LinAlgError as exc:
        raise DiagonalizationError(str(exc)) from exc


def two_mi_stack(evecs: np.ndarray) -> np.ndarray:
    """Adiabatic 2*m_I label of every eigenvector in a stack, (n, 6)."""
    out = np.zeros(evecs.shape[:2], dtype=float)
    for d in range(evecs.shape[0]):
        labels = _assign_labels(evecs[d])
        out[d] = [two_mi for (_, two_mi) in labels]
    return out


def nuclear_transition_frequency(
    params: NVParams,
    field: FieldVector,
    m_s: int,
    draw: Optional["NoiseDraw"] = None,
) -> float:
    """Nuclear splitting |E(m_S,+1/2) - E(m_S,-1/2)| in Hz, from the exact
    eigensystem of the full Hamiltonian."""
    if m_s not in (-1, 0, 1):
        raise ValueError(f"manifold must be one of -1, 0, +1, got {m_s!r}")
    eig = eigensystem(build_hamiltonian(params, field, draw))
    return eig.transition_hz((m_s, 1), (m_s, -1))


def propagator(h: np.ndarray, t_s: float) -> np.ndarray:
    """U = exp(-i H t) via spectral decomposition."""
    if t_s < 0.0 or not math.isfinite(t_s):
        raise ValueError(f"evolution time must be finite and >= 0, got {t_s!r}")
    eig = eigensystem(h)
    phases = np.exp(-1j * eig.evals * t_s)
    return (eig.evecs * phases[None, :]) @ eig.evecs.conj().T
