import math

import numpy as np
import pytest

from nvgyro.hamiltonian import build_hamiltonian, eigensystem
from nvgyro.operators import basis_index
from nvgyro.params import FieldVector
from nvgyro.protocols import PolarizeConfig, polarization_sequence
from nvgyro.sequence import (
    ExecutionContext,
    FinitePulse,
    IdealPulse,
    finite_pulse_unitary,
    pulse_unitary,
)

SRC = basis_index(0, -1)
DST = basis_index(-1, -1)
SPECTATOR_SRC = basis_index(0, 1)
SPECTATOR_DST = basis_index(-1, 1)


def _ctx(params, field):
    return ExecutionContext(params=params, field=field)


def test_selective_limit_matches_ideal(params, field):
    # splitting/Rabi ~ 3000: the finite pulse converges to the ideal
    # instantaneous rotation's population transfer
    ctx = _ctx(params, field)
    h0 = build_hamiltonian(params, field)
    finite = FinitePulse("mw", -1, math.pi, rabi_hz=1e3, mi_select=-1)
    u_fin, duration = finite_pulse_unitary(finite, h0, ctx)
    assert duration == pytest.approx(0.5e-3)
    u_ideal = pulse_unitary(IdealPulse("mw", -1, math.pi, mi_select=-1), ctx, 0.0)
    p_fin = abs(u_fin[DST, SRC]) ** 2
    p_ideal = abs(u_ideal[DST, SRC]) ** 2
    assert abs(p_fin - p_ideal) < 1e-6
    # full transfer between the dressed levels of the addressed pair
    v = ctx.dressed_vectors
    assert abs(v[:, DST].conj() @ u_fin @ v[:, SRC]) ** 2 == pytest.approx(1.0, abs=1e-9)


def test_off_resonant_transfer_bounded_by_two_level_formula(params, field):
    ctx = _ctx(params, field)
    h0 = build_hamiltonian(params, field)
    rabi = 1e6
    finite = FinitePulse("mw", -1, math.pi, rabi_hz=rabi, mi_select=-1)
    u_fin, _ = finite_pulse_unitary(finite, h0, ctx)
    leak = abs(u_fin[SPECTATOR_DST, SPECTATOR_SRC]) ** 2
    # neighbouring hyperfine line: detuning = exact splitting of the
    # spectator transition minus the drive frequency
    eig = eigensystem(h0)
    f_drive = eig.transition_hz((-1, -1), (0, -1))
    f_spec = eig.transition_hz((-1, 1), (0, 1))
    delta = abs(f_spec - f_drive)
    ratio = 1.0 / (1.0 + (delta / rabi) ** 2)
    expected = ratio * math.sin(0.5 * math.pi * math.sqrt(1.0 + (delta / rabi) ** 2)) ** 2
    bound = ratio  # <= Omega^2/(Omega^2+Delta^2), ~0.1 here
    assert leak <= bound + 1e-9
    assert bound == pytest.approx(0.098, abs=0.005)
    assert leak == pytest.approx(expected, rel=0.02)


def test_zero_amplitude_is_population_identity(params):
    # without drive the pulse window is pure free evolution: diagonal in
    # the dressed frame, phases only
    field = FieldVector(239.0, 0.0)
    ctx = _ctx(params, field)
    h0 = build_hamiltonian(params, field)
    finite = FinitePulse("mw", -1, math.pi, rabi_hz=0.0, mi_select=-1, duration_s=0.5e-6)
    u, duration = finite_pulse_unitary(finite, h0, ctx)
    assert duration == 0.5e-6
    v = ctx.dressed_vectors
    u_dressed = v.conj().T @ u @ v
    off_diag = u_dressed - np.diag(np.diag(u_dressed))
    assert np.max(np.abs(off_diag)) < 1e-12
    assert np.allclose(np.abs(np.diag(u_dressed)), 1.0, atol=1e-12)


def test_zero_amplitude_requires_duration():
    with pytest.raises(ValueError, match="duration"):
        FinitePulse("mw", -1, math.pi, rabi_hz=0.0, mi_select=-1)


def test_cutoff_misconfiguration_warns(params, field):
    ctx = _ctx(params, field)
    h0 = build_hamiltonian(params, field)
    bad = FinitePulse("mw", -1, math.pi, rabi_hz=1e6, mi_select=-1, cutoff_hz=0.5e6)
    with pytest.warns(UserWarning, match="cutoff"):
        finite_pulse_unitary(bad, h0, ctx)


def test_finite_pulse_unitary_is_unitary(params, field):
    ctx = _ctx(params, field)
    h0 = build_hamiltonian(params, field)
    for rabi, detuning in ((1e6, 0.0), (0.5e6, 2e5), (2e6, -1e5)):
        u, _ = finite_pulse_unitary(
            FinitePulse("mw", -1, math.pi, rabi_hz=rabi, mi_select=-1, detuning_hz=detuning), h0, ctx
        )
        assert np.linalg.norm(u.conj().T @ u - np.eye(6)) < 1e-10


def test_polarization_square_pulse_recursion(params, field):
    # independent oracle: with transfer leakage q per round, the
    # polarization obeys P_{n+1} = 1 - q P_n
    rabi = 1e6
    delta = params.a_zz_hz
    ratio = 1.0 / (1.0 + (delta / rabi) ** 2)
    q = ratio * math.sin(0.5 * math.pi * math.sqrt(1.0 + (delta / rabi) ** 2)) ** 2
    cfg = PolarizeConfig(rounds=3, pulse_model="finite", rabi_hz=rabi, magic_rabi=False,
                         params=params, field=field)
    result = polarization_sequence(cfg)
    p = 0.5
    for r in range(1, 4):
        p = 1.0 - q * p
        assert result.per_round[r] == pytest.approx(p, abs=5e-3)


def test_polarization_magic_rabi_suppresses_leakage(params, field):
    cfg = PolarizeConfig(rounds=2, pulse_model="finite", rabi_hz=1e6, params=params, field=field)
    assert cfg.effective_rabi_hz() == pytest.approx(params.a_zz_hz / math.sqrt(15.0), rel=1e-12)
    result = polarization_sequence(cfg)
    assert result.polarization >= 0.99
