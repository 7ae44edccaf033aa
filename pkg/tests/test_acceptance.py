"""Acceptance suite: every release criterion with its pinned tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one verdict line
per criterion.
"""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from nvgyro.cli import main as cli_main
from nvgyro.enhancement import (
    approx_alpha,
    enhancement_factors,
    gslac_field_gauss,
    noise_enhancement_f,
    predicted_t2n,
)
from nvgyro.hamiltonian import build_hamiltonian, eigensystem, nuclear_transition_frequency, propagator
from nvgyro.noise import NoiseModel, sample_stack
from nvgyro.params import FieldVector, NVParams
from nvgyro.protocols import (
    GyroConfig,
    MisalignConfig,
    PolarizeConfig,
    RamseyConfig,
    TempShiftConfig,
    misalignment_sweep,
    polarization_sequence,
    ramsey_scan,
    fit_t2n,
    temperature_roundtrip,
    zero_bias_run,
    zero_bias_stats,
)
from nvgyro.protocols.gyro import gyro_run, replace_pattern
from nvgyro.protocols.ramsey import load_template
from nvgyro.protocols.scenarios import aligned_magnetic, combined, hyperfine_variation
from nvgyro.sequence import ReadoutModel, parse_sequence, pretty_print

PARAMS = NVParams()
FIELD = FieldVector(239.0, 0.0)
TILTED = FieldVector.from_degrees(239.0, 1.6)


def report(name: str, detail: str) -> None:
    print(f"[PASS] {name}: {detail}")


def test_kappa_anchor():
    kappa = approx_alpha(PARAMS, 0).kappa
    assert kappa == pytest.approx(8.26, abs=0.01)
    report("kappa check", f"kappa = {kappa:.4f} (target 8.26 +/- 0.01)")


def test_noise_enhancement_anchor():
    f1 = noise_enhancement_f(math.radians(1.0), -15.52)
    assert f1 == pytest.approx(4.17, abs=0.005)
    report("noise-enhancement anchor", f"f(1 deg) = {f1:.4f} (target 4.17 +/- 0.005)")


def test_dephasing_prediction_anchor():
    t2n = predicted_t2n(PARAMS, 0.0)
    assert t2n == pytest.approx(4.48e-3, rel=0.01)
    report("dephasing prediction anchor", f"T2n*(0) = {t2n*1e3:.3f} ms (target 4.48 +/- 1%)")


def test_monte_carlo_vs_closed_form():
    times = np.linspace(0.4e-3, 9e-3, 10)
    cfg = RamseyConfig(
        manifold="ms0", times_s=times, params=PARAMS, field=FIELD,
        noise=aligned_magnetic(PARAMS), draws=4000, seed=11,
    )
    t2n, _, _ = fit_t2n(times, ramsey_scan(cfg).contrast)
    assert t2n == pytest.approx(4.48e-3, rel=0.05)

    times_env = np.linspace(0.3e-3, 6e-3, 10)
    cfg_env = RamseyConfig(
        manifold="ms0", times_s=times_env, params=PARAMS, field=FIELD,
        noise=aligned_magnetic(PARAMS, t1e_envelope=True), draws=4000, seed=12,
    )
    t2n_env, _, _ = fit_t2n(times_env, ramsey_scan(cfg_env).contrast)
    assert t2n_env == pytest.approx(2.80e-3, rel=0.05)
    report(
        "Monte Carlo vs closed form",
        f"T2n* = {t2n*1e3:.3f} ms (4.48 +/- 5%), with T1e envelope {t2n_env*1e3:.3f} ms (2.80 +/- 5%)",
    )


def test_misalignment_consistency():
    cfg = MisalignConfig(angles_deg=[0.5, 1.0, 2.0, 3.0, 5.0], draws=2500, seed=5)
    rows = misalignment_sweep(cfg)
    details = []
    for row in rows:
        assert row.omega_n_cf_hz == pytest.approx(row.omega_n_exact_hz, rel=0.01)
        assert row.t2n_sim_s == pytest.approx(row.t2n_pred_t1e_s, rel=0.10)
        details.append(
            f"{row.theta_deg:g} deg: d_omega {abs(row.omega_n_cf_hz/row.omega_n_exact_hz-1)*100:.2f}%, "
            f"d_T2 {abs(row.t2n_sim_s/row.t2n_pred_t1e_s-1)*100:.1f}%"
        )
    report("misalignment consistency", "; ".join(details))


def test_dq_cancellation():
    phases = np.linspace(0, 2 * math.pi, 12, endpoint=False)
    base = dict(params=PARAMS, field=TILTED, times_s=np.array([2.2e-3]), phases_rad=phases)
    noiseless = ramsey_scan(RamseyConfig(manifold="dq", noise=NoiseModel(), draws=1, **base))
    for hwhm in (1000.0, 5000.0):
        noisy = ramsey_scan(
            RamseyConfig(manifold="dq", noise=hyperfine_variation(PARAMS, hwhm_hz=hwhm),
                         draws=2000, seed=14, **base)
        )
        assert noisy.contrast[0] >= 0.99 * noiseless.contrast[0]

    unprotected = ramsey_scan(
        RamseyConfig(
            manifold="msm1", params=PARAMS, field=TILTED,
            times_s=np.array([1.0e-4, 1.5e-3]), phases_rad=phases,
            noise=hyperfine_variation(PARAMS), draws=6000, seed=15,
        )
    )
    assert unprotected.contrast[1] < 0.01
    report(
        "DQ cancellation",
        f"protected contrast ratio >= 0.99 at dAzz HWHM up to 5 kHz; "
        f"unprotected contrast {unprotected.contrast[1]:.4f} < 0.01 at 1.5 ms",
    )


def test_protected_scenario_bracket():
    cfg = RamseyConfig(
        manifold="dq", times_s=np.linspace(0.4e-3, 6.5e-3, 10),
        params=PARAMS, field=TILTED, noise=combined(PARAMS), draws=3000, seed=15,
    )
    t2n, _, _ = fit_t2n(cfg.times_s, ramsey_scan(cfg).contrast)
    assert 2.4e-3 <= t2n <= 4.4e-3
    report("protected scenario bracket", f"DQ-protected T2n* = {t2n*1e3:.3f} ms in [2.4, 4.4] ms")


def test_rotation_emulation_equivalence():
    rates = [-1000.0, -500.0, -100.0, 100.0, 500.0, 1000.0]
    rec = {}
    for emu in ("phase_mod", "iz_term"):
        cfg = GyroConfig(mode="protected", emulation=emu, params=PARAMS, field=FIELD, draws=1, seed=9)
        cfg = replace_pattern(cfg, [(cfg.point_time_s, r) for r in rates])
        rec[emu] = np.array([p.omega_rec_dps for p in gyro_run(cfg).points])
    worst = float(np.max(np.abs(rec["phase_mod"] - rec["iz_term"]) / np.abs(rates)))
    assert worst <= 1e-9
    report("rotation-emulation equivalence", f"worst relative disagreement {worst:.2e} <= 1e-9")


def test_gyroscope_statistics():
    # (a) zero-bias spread scales as 1/sqrt(repetitions)
    sigmas = {}
    for reps in (100, 400, 1600):
        cfg = GyroConfig(
            mode="protected", params=PARAMS, field=FIELD, draws=1, seed=31,
            repetitions=reps, readout=ReadoutModel(shot_noise_std=0.05),
        )
        samples = zero_bias_run(cfg, 400)
        sigmas[reps] = zero_bias_stats(samples, cfg.point_time_s).sigma_dps
    for hi, lo in ((100, 400), (400, 1600)):
        assert sigmas[hi] / sigmas[lo] == pytest.approx(2.0, rel=0.10)

    # (b) protected/unprotected spread ratio with matched shot noise and contrast
    stats = {}
    for mode in ("protected", "unprotected"):
        cfg = GyroConfig(
            mode=mode, params=PARAMS, field=FIELD, draws=1, seed=37,
            readout=ReadoutModel(shot_noise_std=0.02),
        )
        samples = zero_bias_run(cfg, 400)
        stats[mode] = zero_bias_stats(samples, cfg.point_time_s)
    ratio = stats["unprotected"].sigma_dps / stats["protected"].sigma_dps
    assert 6.0 <= ratio <= 12.0

    # (c) 2-Ramsey rejection of a +/-10% offset drift
    rates = [0.0, 800.0, -800.0, 400.0]
    quiet_cfg = GyroConfig(mode="protected", params=PARAMS, field=FIELD, draws=1, seed=9)
    quiet_cfg = replace_pattern(quiet_cfg, [(quiet_cfg.point_time_s, r) for r in rates])
    quiet = np.array([p.omega_rec_dps for p in gyro_run(quiet_cfg).points])
    drift_cfg = GyroConfig(
        mode="protected", params=PARAMS, field=FIELD, draws=1, seed=9,
        noise=NoiseModel(drift_amplitude=0.05, drift_period_s=97.0),
    )
    drift_cfg = replace_pattern(drift_cfg, [(drift_cfg.point_time_s, r) for r in rates])
    drifting = np.array([p.omega_rec_dps for p in gyro_run(drift_cfg).points])
    full_scale = quiet_cfg.unambiguous_rate_dps
    drift_change = float(np.max(np.abs(drifting - quiet)))
    assert drift_change < 1e-3 * full_scale
    report(
        "gyroscope statistics",
        f"sigma ratios {sigmas[100]/sigmas[400]:.2f}, {sigmas[400]/sigmas[1600]:.2f} (target 2 +/- 10%); "
        f"protected/unprotected ratio {ratio:.1f} in [6, 12]; "
        f"drift-induced change {drift_change/full_scale*100:.2e}% of full scale < 0.1%",
    )


def test_gslac_limit(tmp_path):
    assert cli_main(["enhancement", "--bmax", "1100", "--points", "500", "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "enhancement_summary.json").read_text())
    limit = PARAMS.gyro_ratio / math.sqrt(2.0)
    assert summary["max_abs_alpha"] == pytest.approx(limit, rel=0.02)
    report(
        "GSLAC limit",
        f"sweep max |alpha| = {summary['max_abs_alpha']:.0f} within 2% of {limit:.0f}",
    )


def test_temperature_round_trip():
    res = temperature_roundtrip(TempShiftConfig(freq_noise_std_hz=10.0, seed=0))
    assert res.slope_hz_per_k == pytest.approx(-272.0, abs=8.0)
    report(
        "temperature round trip",
        f"recovered dAzz/dT = {res.slope_hz_per_k:.2f} Hz/K (injected -272, tolerance +/- 8)",
    )


def test_polarization():
    ideal = polarization_sequence(PolarizeConfig(rounds=1, pulse_model="ideal", params=PARAMS))
    assert ideal.polarization >= 0.999
    finite = polarization_sequence(PolarizeConfig(rounds=2, pulse_model="finite", rabi_hz=1e6, params=PARAMS))
    assert finite.polarization >= 0.96
    report(
        "polarization",
        f"ideal 1 round: {ideal.polarization:.4f} >= 0.999; finite 1 MHz, 2 rounds: "
        f"{finite.polarization:.4f} >= 0.96",
    )


def test_infrastructure(tmp_path):
    # byte-identical outputs for identical (config, seed)
    args = ["ramsey", "--manifold", "ms0", "--draws", "120", "--ntimes", "5", "--seed", "8"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli_main(args + ["--out", str(a)]) == 0
    assert cli_main(args + ["--out", str(b)]) == 0
    assert (a / "ramsey_contrast.csv").read_bytes() == (b / "ramsey_contrast.csv").read_bytes()

    # parser golden files round-trip
    golden = Path(__file__).parent / "golden" / "kitchen_sink.seq"
    for text in [golden.read_text()] + [
        load_template(n) and (Path(__file__).parents[1] / "src/nvgyro/sequences" / n).read_text()
        for n in ("ramsey_ms0.seq", "ramsey_msm1.seq", "ramsey_dq.seq", "ramsey_dq_displaced.seq")
    ]:
        seq = parse_sequence(text)
        assert parse_sequence(pretty_print(seq)) == seq

    # unitarity / trace / Hermiticity property sweep
    rng = np.random.default_rng(2)
    model = NoiseModel()
    for _ in range(10):
        field = FieldVector(rng.uniform(0, 500), rng.uniform(0, 0.1))
        h = build_hamiltonian(PARAMS, field)
        assert np.linalg.norm(h - h.conj().T) <= 1e-12 * np.linalg.norm(h)
        eig = eigensystem(h)
        assert np.linalg.norm(eig.reconstruct() - h) <= 1e-9 * np.linalg.norm(h)
        u = propagator(h, rng.uniform(0, 10e-3))
        assert np.linalg.norm(u.conj().T @ u - np.eye(6)) < 1e-10
    report("infrastructure", "byte-identical reruns, golden files, property sweeps all hold")
