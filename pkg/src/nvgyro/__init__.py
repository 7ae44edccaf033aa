"""nvgyro: a 15NV electron-nuclear spin simulator.

Exact diagonalization of the full 6-level Hamiltonian, quasi-static noise
Monte Carlo, a pulse-sequence DSL with a density-matrix executor, and the
protocol layer for dephasing scans, double-quantum coherence protection,
and the emulated nuclear-spin gyroscope.
"""

__version__ = "0.1.0"

from .enhancement import (
    EnhancementFactors,
    GslacProximityError,
    approx_alpha,
    closed_form_omega_n,
    delta_b_from_t2e,
    enhancement_factors,
    gslac_field_gauss,
    hyperfine_kappa,
    noise_enhancement_f,
    predicted_t2n,
    zq_rotation_angles,
)
from .hamiltonian import (
    LabeledEigensystem,
    build_hamiltonian,
    eigensystem,
    nuclear_transition_frequency,
    propagator,
)
from .noise import NoiseDraw, NoiseModel, Spread, ensemble_average, gaussian, lorentzian, sample
from .params import DEFAULT_FIELD, DEFAULT_PARAMS, FieldVector, NVParams

__all__ = [
    "DEFAULT_FIELD",
    "DEFAULT_PARAMS",
    "EnhancementFactors",
    "FieldVector",
    "GslacProximityError",
    "LabeledEigensystem",
    "NVParams",
    "NoiseDraw",
    "NoiseModel",
    "Spread",
    "approx_alpha",
    "build_hamiltonian",
    "closed_form_omega_n",
    "delta_b_from_t2e",
    "eigensystem",
    "enhancement_factors",
    "ensemble_average",
    "gaussian",
    "gslac_field_gauss",
    "hyperfine_kappa",
    "lorentzian",
    "noise_enhancement_f",
    "nuclear_transition_frequency",
    "predicted_t2n",
    "propagator",
    "sample",
    "zq_rotation_angles",
]
