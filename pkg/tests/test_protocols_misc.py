import math

import numpy as np
import pytest

from nvgyro.hamiltonian import nuclear_transition_frequency
from nvgyro.params import FieldVector, NVParams
from nvgyro.protocols import (
    MisalignConfig,
    PolarizeConfig,
    TempShiftConfig,
    invert_misalignment,
    misalignment_sweep,
    polarization_sequence,
    temperature_roundtrip,
)

PARAMS = NVParams()


def test_misalign_theory_columns():
    cfg = MisalignConfig(angles_deg=[0.5, 1.0, 2.0, 3.0, 5.0], simulate=False)
    rows = misalignment_sweep(cfg)
    for row in rows:
        assert row.omega_n_cf_hz == pytest.approx(row.omega_n_exact_hz, rel=0.01)
        assert row.t2n_pred_t1e_s < row.t2n_pred_s
        assert math.isnan(row.t2n_sim_s)
    # monotone: frequency grows, dephasing time shrinks with tilt
    freqs = [r.omega_n_exact_hz for r in rows]
    assert np.all(np.diff(freqs) > 0)
    t2 = [r.t2n_pred_s for r in rows]
    assert np.all(np.diff(t2) < 0)


def test_misalign_simulated_point_light():
    cfg = MisalignConfig(angles_deg=[1.0], draws=600, seed=3)
    row = misalignment_sweep(cfg)[0]
    assert row.t2n_sim_s == pytest.approx(row.t2n_pred_t1e_s, rel=0.12)


def test_invert_misalignment_round_trip():
    for deg in (0.3, 1.0, 2.5):
        omega = nuclear_transition_frequency(PARAMS, FieldVector.from_degrees(239.0, deg), 0)
        recovered = math.degrees(invert_misalignment(PARAMS, 239.0, omega))
        assert recovered == pytest.approx(deg, abs=0.01)


def test_invert_misalignment_range_check():
    with pytest.raises(ValueError):
        invert_misalignment(PARAMS, 239.0, 1e3)  # below the aligned frequency


def test_polarization_ideal():
    res = polarization_sequence(PolarizeConfig(rounds=1, pulse_model="ideal"))
    assert res.polarization >= 0.999
    zero = polarization_sequence(PolarizeConfig(rounds=0))
    assert zero.polarization == pytest.approx(0.5, abs=1e-12)
    assert zero.per_round[0] == pytest.approx(0.5, abs=1e-12)


def test_polarization_finite_reaches_96_percent():
    res = polarization_sequence(PolarizeConfig(rounds=2, pulse_model="finite", rabi_hz=1e6))
    assert res.polarization >= 0.96
    assert res.per_round[1] <= res.per_round[2] + 1e-9


def test_polarization_reset_fidelity_limits():
    res = polarization_sequence(PolarizeConfig(rounds=1, reset_fidelity=0.9))
    # depolarizing reset caps the transfer: f + (1-f)/2
    assert res.polarization == pytest.approx(0.95, abs=1e-5)


def test_tempshift_noiseless_recovers_injected_slope():
    cfg = TempShiftConfig(freq_noise_std_hz=0.0)
    res = temperature_roundtrip(cfg)
    assert res.slope_hz_per_k == pytest.approx(-272.0, abs=0.1)


def test_tempshift_with_noise_within_quoted_uncertainty():
    for seed in range(10):
        res = temperature_roundtrip(TempShiftConfig(freq_noise_std_hz=10.0, seed=seed))
        assert res.slope_hz_per_k == pytest.approx(-272.0, abs=8.0)


def test_tempshift_requires_three_points():
    with pytest.raises(ValueError):
        TempShiftConfig(delta_t_k=np.array([-1.0, 1.0]))


def test_tempshift_average_cancels_field_drift():
    # omega(+1) + omega(-1) isolates the hyperfine coupling: a +/-1 G
    # field drift moves each frequency by ~430 Hz but the average by far
    # less
    def avg(b):
        f = FieldVector(b)
        return 0.5 * (
            nuclear_transition_frequency(PARAMS, f, 1) + nuclear_transition_frequency(PARAMS, f, -1)
        )

    single_shift = abs(
        nuclear_transition_frequency(PARAMS, FieldVector(240.0), 1)
        - nuclear_transition_frequency(PARAMS, FieldVector(238.0), 1)
    )
    avg_shift = abs(avg(240.0) - avg(238.0))
    assert single_shift > 800.0
    assert avg_shift < single_shift / 10.0
