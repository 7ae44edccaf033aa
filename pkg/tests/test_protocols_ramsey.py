import math

import numpy as np
import pytest

from nvgyro.analysis import FitError
from nvgyro.noise import NoiseModel, lorentzian
from nvgyro.params import FieldVector, NVParams
from nvgyro.protocols import RamseyConfig, dq_protected_ramsey, fit_t2n, ramsey_scan
from nvgyro.protocols.scenarios import aligned_magnetic, hyperfine_variation

PARAMS = NVParams()
FIELD = FieldVector(239.0, 0.0)
TILTED = FieldVector.from_degrees(239.0, 1.6)


def test_config_validation():
    with pytest.raises(ValueError):
        RamseyConfig(manifold="ms2")
    with pytest.raises(ValueError):
        RamseyConfig(phases_rad=np.linspace(0, 2 * math.pi, 4))
    with pytest.raises(ValueError):
        RamseyConfig(times_s=np.array([1e-3, 1e-3]))
    with pytest.raises(ValueError):
        RamseyConfig(dq_flip_fraction=0.0)


def test_noiseless_contrast_is_flat():
    cfg = RamseyConfig(
        manifold="ms0",
        times_s=np.linspace(0.2e-3, 5e-3, 6),
        params=PARAMS,
        field=FIELD,
        noise=NoiseModel(),
        draws=1,
    )
    result = ramsey_scan(cfg)
    assert np.all(np.isfinite(result.contrast))
    assert np.ptp(result.contrast) < 2e-3
    assert result.contrast[0] == pytest.approx(0.5, abs=2e-3)
    assert result.fit_failures() == []


def test_noiseless_with_envelope_decays_at_t1e_rate():
    cfg = RamseyConfig(
        manifold="ms0",
        times_s=np.linspace(0.2e-3, 5e-3, 6),
        params=PARAMS,
        field=FIELD,
        noise=NoiseModel(t1e_envelope=True),
        draws=1,
    )
    result = ramsey_scan(cfg)
    expected = 0.5 * np.exp(-result.times_s / (1.5 * PARAMS.t1e_s))
    assert np.allclose(result.contrast, expected, atol=2e-3)


def test_ms0_aligned_monte_carlo_light():
    cfg = RamseyConfig(
        manifold="ms0",
        times_s=np.linspace(0.4e-3, 9e-3, 9),
        params=PARAMS,
        field=FIELD,
        noise=aligned_magnetic(PARAMS),
        draws=800,
        seed=21,
    )
    t2n, _, _ = fit_t2n(cfg.times_s, ramsey_scan(cfg).contrast)
    assert t2n == pytest.approx(4.48e-3, rel=0.10)


def test_msm1_hyperfine_limited_200us():
    cfg = RamseyConfig(
        manifold="msm1",
        times_s=np.linspace(0.02e-3, 0.45e-3, 9),
        params=PARAMS,
        field=TILTED,
        noise=hyperfine_variation(PARAMS),
        draws=2000,
        seed=22,
    )
    t2n, _, _ = fit_t2n(cfg.times_s, ramsey_scan(cfg).contrast)
    # oracle: Cauchy ensemble of width G decays exp(-2*pi*G*t), so
    # G = 796 Hz gives exactly 200 us
    assert t2n == pytest.approx(1.0 / (2.0 * math.pi * 796.0), rel=0.10)


def test_fit_t2n_wrapper():
    t = np.linspace(0.1e-3, 5e-3, 8)
    t2n, err, res = fit_t2n(t, 0.5 * np.exp(-t / 3.4e-3))
    assert t2n == pytest.approx(3.4e-3, rel=1e-6)
    assert err >= 0.0
    with pytest.raises(FitError):
        fit_t2n(t, np.zeros(8))
    # nan points are dropped, not fatal
    y = 0.5 * np.exp(-t / 2e-3)
    y[3] = np.nan
    t2n2, _, _ = fit_t2n(t, y)
    assert t2n2 == pytest.approx(2e-3, rel=1e-6)


def test_dq_midpoint_cancels_hyperfine_noise():
    times = np.array([2.2e-3])
    base = dict(params=PARAMS, field=TILTED, times_s=times,
                phases_rad=np.linspace(0, 2 * math.pi, 12, endpoint=False))
    noiseless = ramsey_scan(RamseyConfig(manifold="dq", noise=NoiseModel(), draws=1, **base))
    noisy = ramsey_scan(
        RamseyConfig(manifold="dq", noise=hyperfine_variation(PARAMS, hwhm_hz=5000.0), draws=1500, seed=5, **base)
    )
    assert noisy.contrast[0] >= 0.99 * noiseless.contrast[0]


def test_dq_displaced_flip_leaves_residual_dephasing():
    # flip at 0.4 t refocuses only 80% of the hyperfine phase: the
    # leftover 0.2 t of Cauchy noise decays exp(-0.2 * G_ang * t)
    hwhm = 500.0
    times = np.array([2.2e-3])
    base = dict(params=PARAMS, field=TILTED, times_s=times,
                phases_rad=np.linspace(0, 2 * math.pi, 12, endpoint=False),
                noise=hyperfine_variation(PARAMS, hwhm_hz=hwhm), draws=3000, seed=6)
    mid = ramsey_scan(RamseyConfig(manifold="dq", **base))
    displaced_cfg = RamseyConfig(manifold="dq", dq_flip_fraction=0.4, **base)
    displaced = ramsey_scan(displaced_cfg)
    assert displaced.contrast[0] < mid.contrast[0]
    expected = 0.5 * math.exp(-0.2 * 2.0 * math.pi * hwhm * times[0])
    assert displaced.contrast[0] == pytest.approx(expected, rel=0.10)


def test_dq_protected_ramsey_wrapper():
    cfg = RamseyConfig(
        manifold="dq",
        times_s=np.linspace(0.4e-3, 6e-3, 8),
        params=PARAMS,
        field=TILTED,
        noise=NoiseModel(t1e_envelope=True),
        draws=1,
    )
    t2n, err, result = dq_protected_ramsey(cfg)
    # only the T1e envelope dephases here
    assert t2n == pytest.approx(1.5 * PARAMS.t1e_s, rel=0.02)
    assert len(result.times_s) == 8
