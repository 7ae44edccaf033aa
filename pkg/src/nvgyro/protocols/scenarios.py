"""Named noise scenarios used by the experiment drivers.

The magnetic noise strength is always tied to the electron dephasing
time (Delta_B = 1/(gamma_e T2e*)); the hyperfine spread is quoted as the
HWHM of the m_S = -1 transition-frequency noise it produces and mapped
onto a temperature spread through dAzz/dT.
"""

from __future__ import annotations

from ..enhancement import delta_b_from_t2e
from ..noise import NoiseModel, Spread, lorentzian
from ..params import NVParams

#: HWHM (Hz) of the hyperfine-variation noise that reproduces the
#: observed ~200 us unprotected dephasing: 1/(2*pi*796 Hz) = 200 us.
UNPROTECTED_AZZ_HWHM_HZ = 796.0


def aligned_magnetic(params: NVParams, t1e_envelope: bool = False) -> NoiseModel:
    """Longitudinal magnetic noise only: the theta = 0 dephasing channel."""
    d = delta_b_from_t2e(params)
    return NoiseModel(
        b_z=lorentzian(d),
        dazz_dt_hz_per_k=params.dazz_dt_hz_per_k,
        t1e_envelope=t1e_envelope,
    )


def misaligned_magnetic(params: NVParams, t1e_envelope: bool = True) -> NoiseModel:
    """Longitudinal plus in-plane transverse magnetic noise, both of mean
    strength Delta_B (the two axes the misalignment dephasing model
    propagates)."""
    d = delta_b_from_t2e(params)
    return NoiseModel(
        b_z=lorentzian(d),
        b_x=lorentzian(d),
        dazz_dt_hz_per_k=params.dazz_dt_hz_per_k,
        t1e_envelope=t1e_envelope,
    )


def hyperfine_variation(
    params: NVParams,
    hwhm_hz: float = UNPROTECTED_AZZ_HWHM_HZ,
    t1e_envelope: bool = False,
) -> NoiseModel:
    """Pure hyperfine-coupling noise (temperature/strain proxy) with the
    given HWHM of the induced m_S = +/-1 frequency shift."""
    return NoiseModel(
        temperature_k=lorentzian(hwhm_hz / abs(params.dazz_dt_hz_per_k)),
        dazz_dt_hz_per_k=params.dazz_dt_hz_per_k,
        t1e_envelope=t1e_envelope,
    )


def combined(
    params: NVParams,
    azz_hwhm_hz: float = UNPROTECTED_AZZ_HWHM_HZ,
    t1e_envelope: bool = True,
) -> NoiseModel:
    """Magnetic (z, x) plus hyperfine noise plus the T1e envelope: the
    scenario calibrated to the unprotected 200 us dephasing."""
    d = delta_b_from_t2e(params)
    return NoiseModel(
        b_z=lorentzian(d),
        b_x=lorentzian(d),
        temperature_k=lorentzian(azz_hwhm_hz / abs(params.dazz_dt_hz_per_k)),
        dazz_dt_hz_per_k=params.dazz_dt_hz_per_k,
        t1e_envelope=t1e_envelope,
    )
