import math

import numpy as np
import pytest

from nvgyro.noise import (
    EnsembleError,
    NoiseModel,
    Spread,
    ensemble_average,
    gaussian,
    lorentzian,
    offset_drift,
    sample,
    sample_stack,
    t1e_envelope_factor,
)

TWO_PI = 2.0 * math.pi


def test_zero_spreads_zero_draw():
    d = sample(NoiseModel(), 42, 7)
    assert (d.d_bz_gauss, d.d_bx_gauss, d.d_by_gauss, d.d_azz_hz, d.d_offset) == (0, 0, 0, 0, 0)


def test_determinism_and_independence():
    model = NoiseModel(b_z=lorentzian(0.1), b_x=gaussian(0.2), temperature_k=lorentzian(2.9))
    assert sample(model, 5, 11) == sample(model, 5, 11)
    assert sample(model, 5, 11) != sample(model, 5, 12)
    assert sample(model, 6, 11) != sample(model, 5, 11)


def test_stack_matches_scalar_sampling():
    model = NoiseModel(b_z=lorentzian(0.08), b_x=gaussian(0.05), temperature_k=gaussian(1.5))
    stack = sample_stack(model, 9, 20, start_index=3)
    for i in range(20):
        d = sample(model, 9, 3 + i)
        assert stack.d_bz[i] == d.d_bz_gauss
        assert stack.d_bx[i] == d.d_bx_gauss
        assert stack.d_azz_hz[i] == d.d_azz_hz


def test_gaussian_std_law_of_large_numbers():
    model = NoiseModel(b_z=gaussian(0.0823))
    stack = sample_stack(model, 0, 100_000)
    assert np.std(stack.d_bz) == pytest.approx(0.0823, rel=0.01)


def test_lorentzian_hwhm_via_median():
    # |Cauchy(G)| has median exactly G
    model = NoiseModel(b_z=lorentzian(0.0823))
    stack = sample_stack(model, 1, 100_000)
    assert np.median(np.abs(stack.d_bz)) == pytest.approx(0.0823, rel=0.02)


def test_lorentzian_axes_combine_in_quadrature():
    # any linear combination of the jointly drawn axes is again Lorentzian
    # with the root-sum-square width: the property the dephasing-rate
    # predictions rely on
    g = 0.0823
    model = NoiseModel(b_z=lorentzian(g), b_x=lorentzian(g))
    stack = sample_stack(model, 2, 100_000)
    for cz, cx in ((1.0, 0.0), (0.6, 0.8), (1.0, 1.0), (0.23, 4.0)):
        width = g * math.hypot(cz, cx)
        proj = cz * stack.d_bz + cx * stack.d_bx
        assert np.median(np.abs(proj)) == pytest.approx(width, rel=0.025)


def test_temperature_maps_to_hyperfine():
    model = NoiseModel(temperature_k=gaussian(2.0), dazz_dt_hz_per_k=-272.0)
    d = sample(model, 3, 4)
    assert d.d_azz_hz == pytest.approx(-272.0 * d.d_temp_k, rel=1e-12)


def test_spread_validation():
    with pytest.raises(ValueError):
        Spread("cauchy", 1.0)
    with pytest.raises(ValueError):
        Spread("gaussian", -1.0)
    with pytest.raises(ValueError):
        NoiseModel(drift_amplitude=0.1)  # missing period


def test_ensemble_single_draw_noiseless():
    out = ensemble_average(lambda d: np.array([1.0, 2.0]), NoiseModel(), 1, 0)
    assert np.array_equal(out, [1.0, 2.0])


def test_ensemble_reduction_is_index_ordered():
    model = NoiseModel(b_z=lorentzian(0.3))
    ref = ensemble_average(lambda d: np.array([d.d_bz_gauss, d.d_bz_gauss**2]), model, 500, 7)
    # computing the draws in any order and reducing by index reproduces the
    # same result bit for bit
    draws = {i: sample(model, 7, i) for i in np.random.default_rng(0).permutation(500)}
    total = np.zeros(2)
    for i in range(500):
        d = draws[i]
        total += np.array([d.d_bz_gauss, d.d_bz_gauss**2])
    assert np.array_equal(ref, total / 500)


def test_ensemble_error_reports_draw_index():
    def boom(draw):
        raise RuntimeError("exploded")

    with pytest.raises(EnsembleError, match=r"draw 0"):
        ensemble_average(boom, NoiseModel(), 3, 0)


def test_lorentzian_characteristic_function():
    # quasi-static Cauchy detuning of HWHM G dephases as exp(-G_ang * t)
    hwhm = 300.0  # Hz
    model = NoiseModel(b_z=lorentzian(1.0))
    times = np.linspace(0.0, 3.0 / (TWO_PI * hwhm), 7)

    def experiment(draw):
        delta = TWO_PI * hwhm * draw.d_bz_gauss
        return np.cos(delta * times)

    mean = ensemble_average(experiment, model, 8000, 3)
    expected = np.exp(-TWO_PI * hwhm * times)
    assert np.allclose(mean, expected, atol=0.02)


def test_gaussian_characteristic_function():
    sigma = TWO_PI * 300.0
    model = NoiseModel(b_z=gaussian(1.0))
    times = np.linspace(0.0, 2.5 / sigma, 7)

    def experiment(draw):
        return np.cos(sigma * draw.d_bz_gauss * times)

    mean = ensemble_average(experiment, model, 8000, 4)
    expected = np.exp(-0.5 * (sigma * times) ** 2)
    assert np.allclose(mean, expected, atol=0.02)


def test_t1e_envelope_applied():
    model = NoiseModel(t1e_envelope=True)
    times = np.array([0.0, 1e-3, 5e-3])
    out = ensemble_average(lambda d: np.ones(3), model, 4, 0, coherence_times_s=times, t1e_s=5e-3)
    assert np.allclose(out, np.exp(-times / (1.5 * 5e-3)))
    assert t1e_envelope_factor(7.5e-3, 5e-3) == pytest.approx(math.exp(-1.0))
    with pytest.raises(ValueError):
        ensemble_average(lambda d: 1.0, model, 2, 0, coherence_times_s=times, t1e_s=None)


def test_offset_drift():
    model = NoiseModel(drift_amplitude=0.05, drift_period_s=10.0)
    assert offset_drift(model, 0.0) == 0.0
    assert offset_drift(model, 2.5) == pytest.approx(0.05)
    assert offset_drift(NoiseModel(), 123.0) == 0.0
