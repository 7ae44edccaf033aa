"""Fitting and statistics primitives.

A small damped least-squares (Levenberg-Marquardt) engine drives the two
nonlinear models used throughout: exponential decay a*exp(-t/T) (with
T = exp(u) so the decay time stays positive) and the phase-sweep sinusoid
c0 + c*cos(phi - phi0). Linear regression is closed-form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

STEP_TOL = 1e-10
MAX_ITER = 200


class FitError(ValueError):
    """Degenerate or underdetermined fit input."""


@dataclass(frozen=True)
class FitResult:
    names: tuple[str, ...]
    params: np.ndarray
    stderr: np.ndarray
    residual_norm: float
    converged: bool
    n_iter: int

    def __getitem__(self, name: str) -> float:
        return float(self.params[self.names.index(name)])

    def error(self, name: str) -> float:
        return float(self.stderr[self.names.index(name)])


ModelFn = Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]


def levenberg_marquardt(model: ModelFn, y: np.ndarray, p0: np.ndarray) -> tuple[np.ndarray, bool, int]:
    """Minimize ||model(p) - y||^2 with multiplicative damping control.

    model(p) returns (values, jacobian). Iterates until the accepted step
    is below STEP_TOL (absolute + relative) or MAX_ITER is reached.
    """
    p = np.asarray(p0, dtype=float).copy()
    f, jac = model(p)
    r = f - y
    cost = float(r @ r)
    lam = 1e-3
    for it in range(1, MAX_ITER + 1):
        jtj = jac.T @ jac
        jtr = jac.T @ r
        accepted = False
        for _ in range(50):
            damped = jtj + lam * np.diag(np.maximum(np.diag(jtj), 1e-30))
            try:
                step = np.linalg.solve(damped, -jtr)
            except np.linalg.LinAlgError:
                lam *= 3.0
                continue
            p_new = p + step
            f_new, jac_new = model(p_new)
            r_new = f_new - y
            cost_new = float(r_new @ r_new)
            if cost_new <= cost:
                accepted = True
                break
            lam *= 3.0
        if not accepted:
            return p, False, it
        p, r, jac, cost = p_new, r_new, jac_new, cost_new
        lam = max(lam / 3.0, 1e-12)
        if np.linalg.norm(step) <= STEP_TOL * (1.0 + np.linalg.norm(p)):
            return p, True, it
    return p, False, MAX_ITER


def _finish(
    names: tuple[str, ...],
    model: ModelFn,
    y: np.ndarray,
    p: np.ndarray,
    converged: bool,
    n_iter: int,
) -> FitResult:
    f, jac = model(p)
    r = f - y
    dof = max(len(y) - len(p), 1)
    sigma2 = float(r @ r) / dof
    try:
        cov = sigma2 * np.linalg.pinv(jac.T @ jac)
        stderr = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError:
        stderr = np.full(len(p), np.inf)
    return FitResult(
        names=names,
        params=p,
        stderr=stderr,
        residual_norm=float(np.linalg.norm(r)),
        converged=converged,
        n_iter=n_iter,
    )


def exponential_model(t: np.ndarray) -> ModelFn:
    """a * exp(-t/T) with parameters (a, u = ln T)."""

    def model(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        a, u = p
        inv_t = math.exp(-u)
        f = a * np.exp(-t * inv_t)
        jac = np.column_stack([f / a if a != 0.0 else np.exp(-t * inv_t), f * t * inv_t])
        return f, jac

    return model


def fit_exponential(t: np.ndarray, y: np.ndarray) -> FitResult:
    """Fit y = a * exp(-t/T); returns parameters (a, t_decay)."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(t) < 4:
        raise FitError("need at least 4 points for an exponential fit")
    if np.ptp(y) == 0.0:
        raise FitError("constant signal: exponential fit is degenerate")
    positive = y > 0.0
    if np.count_nonzero(positive) >= 2:
        lin = np.polyfit(t[positive], np.log(y[positive]), 1)
        slope, intercept = lin[0], lin[1]
    else:
        slope, intercept = 0.0, math.log(max(float(np.max(np.abs(y))), 1e-300))
    t_span = float(np.ptp(t)) or 1.0
    t0 = -1.0 / slope if slope < 0.0 else t_span
    a0 = math.exp(intercept)
    model = exponential_model(t)
    p, converged, n_iter = levenberg_marquardt(model, y, np.array([a0, math.log(t0)]))
    res = _finish(("a", "u"), model, y, p, converged, n_iter)
    a, u = res.params
    t_decay = math.exp(u)
    # report in (a, T) coordinates; stderr of T via dT = T du
    params = np.array([a, t_decay])
    stderr = np.array([res.stderr[0], t_decay * res.stderr[1]])
    return FitResult(("a", "t_decay"), params, stderr, res.residual_norm, res.converged, res.n_iter)


def sinusoid_model(phi: np.ndarray) -> ModelFn:
    """c0 + c * cos(phi - phi0) with parameters (c0, c, phi0)."""

    def model(p: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        c0, c, phi0 = p
        arg = phi - phi0
        f = c0 + c * np.cos(arg)
        jac = np.column_stack([np.ones_like(phi), np.cos(arg), c * np.sin(arg)])
        return f, jac

    return model


def fit_sinusoid(phi: np.ndarray, y: np.ndarray) -> FitResult:
    """Fit y = c0 + c*cos(phi - phi0) at the known unit frequency.

    Initialized by discrete Fourier projection; the returned contrast is
    nonnegative (a sign flip is absorbed into phi0)."""
    phi = np.asarray(phi, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(phi) < 6:
        raise FitError("need at least 6 phase points")
    if float(np.ptp(phi)) < 1.5 * math.pi:
        raise FitError("phase grid must span at least 1.5*pi")
    z = 2.0 * np.mean(y * np.exp(1j * phi))
    p0 = np.array([float(np.mean(y)), abs(z), math.atan2(z.imag, z.real)])
    model = sinusoid_model(phi)
    p, converged, n_iter = levenberg_marquardt(model, y, p0)
    if p[1] < 0.0:
        p[1] = -p[1]
        p[2] += math.pi
    p[2] = math.remainder(p[2], 2.0 * math.pi)
    res = _finish(("c0", "c", "phi0"), model, y, p, converged, n_iter)
    if res["c"] <= 1e-9 * max(1.0, abs(res["c0"])):
        # vanishing contrast leaves the phase unconstrained
        stderr = res.stderr.copy()
        stderr[2] = math.inf
        res = FitResult(res.names, res.params, stderr, res.residual_norm, res.converged, res.n_iter)
    return res


def fit_linear(x: np.ndarray, y: np.ndarray) -> FitResult:
    """Ordinary least squares y = slope*x + intercept, closed form."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2 or np.ptp(x) == 0.0:
        raise FitError("need at least 2 distinct x values")
    design = np.column_stack([x, np.ones_like(x)])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    r = design @ coef - y
    dof = max(len(x) - 2, 1)
    sigma2 = float(r @ r) / dof
    cov = sigma2 * np.linalg.inv(design.T @ design)
    stderr = np.sqrt(np.diag(cov))
    return FitResult(
        names=("slope", "intercept"),
        params=coef,
        stderr=stderr,
        residual_norm=float(np.linalg.norm(r)),
        converged=True,
        n_iter=0,
    )


def summary_stats(samples: np.ndarray) -> tuple[float, float, int]:
    """(mean, unbiased std, count)."""
    samples = np.asarray(samples, dtype=float)
    n = len(samples)
    if n < 2:
        raise FitError("need at least 2 samples for a standard deviation")
    return float(np.mean(samples)), float(np.std(samples, ddof=1)), n
