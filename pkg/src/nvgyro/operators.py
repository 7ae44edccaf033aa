"""Spin operators on the 6-dimensional S=1 (x) I=1/2 product space.

Basis ordering is fixed once and for all: index = (1 - m_S)*2 + (1/2 - m_I),
i.e. [ |+1,+1/2>, |+1,-1/2>, |0,+1/2>, |0,-1/2>, |-1,+1/2>, |-1,-1/2> ].
All serialized matrices use this ordering.
"""

from __future__ import annotations

import numpy as np

DIM = 6

#: (m_S, 2*m_I) pairs in canonical index order.
BASIS_LABELS: tuple[tuple[int, int], ...] = (
    (1, 1),
    (1, -1),
    (0, 1),
    (0, -1),
    (-1, 1),
    (-1, -1),
)


def basis_index(m_s: int, two_m_i: int) -> int:
    """Canonical index of |m_S, m_I> (m_I passed as 2*m_I = +/-1)."""
    if m_s not in (-1, 0, 1) or two_m_i not in (-1, 1):
        raise ValueError(f"invalid level (m_s={m_s}, 2*m_i={two_m_i})")
    return (1 - m_s) * 2 + (1 - two_m_i) // 2


def _spin1() -> dict[str, np.ndarray]:
    # m_s ordering +1, 0, -1 to match the canonical product ordering
    s = 1.0 / np.sqrt(2.0)
    sx = np.array([[0, s, 0], [s, 0, s], [0, s, 0]], dtype=complex)
    sy = np.array([[0, -1j * s, 0], [1j * s, 0, -1j * s], [0, 1j * s, 0]], dtype=complex)
    sz = np.diag([1.0, 0.0, -1.0]).astype(complex)
    return {"x": sx, "y": sy, "z": sz}


def _spin_half() -> dict[str, np.ndarray]:
    ix = 0.5 * np.array([[0, 1], [1, 0]], dtype=complex)
    iy = 0.5 * np.array([[0, -1j], [1j, 0]], dtype=complex)
    iz = np.diag([0.5, -0.5]).astype(complex)
    return {"x": ix, "y": iy, "z": iz}


class SpinOperators:
    """The nine canonical operators lifted to the product space."""

    def __init__(self) -> None:
        e = _spin1()
        n = _spin_half()
        eye_e = np.eye(3, dtype=complex)
        eye_n = np.eye(2, dtype=complex)
        self.sx = np.kron(e["x"], eye_n)
        self.sy = np.kron(e["y"], eye_n)
        self.sz = np.kron(e["z"], eye_n)
        self.sz2 = self.sz @ self.sz
        self.s_plus = self.sx + 1j * self.sy
        self.s_minus = self.sx - 1j * self.sy
        self.ix = np.kron(eye_e, n["x"])
        self.iy = np.kron(eye_e, n["y"])
        self.iz = np.kron(eye_e, n["z"])
        self.i_plus = self.ix + 1j * self.iy
        self.i_minus = self.ix - 1j * self.iy
        self.identity = np.eye(DIM, dtype=complex)
        for a in vars(self).values():
            a.setflags(write=False)


OPS = SpinOperators()


def manifold_projector(m_s: int) -> np.ndarray:
    """Projector onto the electronic manifold m_S (rank 2)."""
    p = np.zeros((DIM, DIM), dtype=complex)
    for two_m_i in (1, -1):
        k = basis_index(m_s, two_m_i)
        p[k, k] = 1.0
    return p


def nuclear_projector(two_m_i: int) -> np.ndarray:
    """Projector onto the nuclear sublevel m_I (rank 3)."""
    p = np.zeros((DIM, DIM), dtype=complex)
    for m_s in (1, 0, -1):
        k = basis_index(m_s, two_m_i)
        p[k, k] = 1.0
    return p
