"""Tensor-product quadrature over the (theta, phi) parameter rectangle.

Latitude uses Gauss-Legendre nodes, either directly in theta ("gl-theta")
or in s = sin(theta) ("gl-sin", the default).  The sin substitution makes
the rule exact for integrands of the form poly(sin theta) * cos(theta),
which covers every moment integrand of the radial family at c = 1.
Longitude uses the equally spaced periodic trapezoid rule, spectrally
accurate for smooth 2*pi-periodic integrands.

Summation is compensated and performed in a fixed order (longitude index,
then latitude rows), so results are bit-reproducible regardless of the
worker count set through MONOFORM_THREADS.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConvergenceError, EvaluationError, ParameterDomainError

RULES = ("gl-sin", "gl-theta")

#: converged_integrate refuses to push either axis beyond this node count.
NODE_CAP = 2**13


@dataclass(frozen=True)
class QuadratureSpec:
    """Node counts and latitude rule for one tensor-product evaluation."""

    n_theta: int = 128
    n_phi: int = 256
    rule: str = "gl-sin"

    def __post_init__(self):
        if self.n_theta < 8 or self.n_phi < 8:
            raise ParameterDomainError("node counts must be >= 8")
        if self.rule not in RULES:
            raise ParameterDomainError(f"unknown latitude rule {self.rule!r}")

    def doubled(self) -> "QuadratureSpec":
        return QuadratureSpec(2 * self.n_theta, 2 * self.n_phi, self.rule)


@lru_cache(maxsize=64)
def _theta_rule(n_theta: int, rule: str):
    x, w = np.polynomial.legendre.leggauss(n_theta)
    if rule == "gl-sin":
        theta = np.arcsin(x)
        weights = w / np.cos(theta)
    else:
        theta = x * (math.pi / 2.0)
        weights = w * (math.pi / 2.0)
    theta.setflags(write=False)
    weights.setflags(write=False)
    return theta, weights


def _phi_rule(n_phi: int):
    return np.arange(n_phi) * (2.0 * math.pi / n_phi), 2.0 * math.pi / n_phi


def _worker_count() -> int:
    raw = os.environ.get("MONOFORM_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _kahan_rows(values: np.ndarray) -> np.ndarray:
    """Compensated left-to-right sum along the last axis, row by row."""
    total = np.zeros(values.shape[0])
    comp = np.zeros(values.shape[0])
    for j in range(values.shape[1]):
        y = values[:, j] - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


def integrate_sphere(spec: QuadratureSpec, integrand) -> float:
    """Integral of integrand(theta, phi) over [-pi/2, pi/2] x [0, 2*pi).

    The integrand receives broadcastable 2-D arrays and must return the
    matching array of values.  A non-finite value raises EvaluationError
    carrying the offending node.
    """
    theta, w_theta = _theta_rule(spec.n_theta, spec.rule)
    phi, w_phi = _phi_rule(spec.n_phi)

    def rows(lo: int, hi: int) -> np.ndarray:
        vals = integrand(theta[lo:hi, None], phi[None, :])
        vals = np.asarray(vals, dtype=float)
        if vals.shape != (hi - lo, spec.n_phi):
            vals = np.broadcast_to(vals, (hi - lo, spec.n_phi)).copy()
        bad = ~np.isfinite(vals)
        if bad.any():
            i, j = np.argwhere(bad)[0]
            raise EvaluationError(
                "integrand returned a non-finite value",
                theta=float(theta[lo + i]),
                phi=float(phi[j]),
            )
        return _kahan_rows(vals * (w_theta[lo:hi, None] * w_phi))

    workers = _worker_count()
    if workers == 1:
        row_sums = rows(0, spec.n_theta)
    else:
        bounds = np.linspace(0, spec.n_theta, workers + 1, dtype=int)
        chunks = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ab: rows(*ab), chunks))
        row_sums = np.concatenate(parts)
    return math.fsum(row_sums.tolist())


def converged_integrate(spec: QuadratureSpec, integrand, rel_tol: float):
    """Repeat integrate_sphere with doubled node counts until stable.

    Returns (value, achieved_estimate) where the estimate is the difference
    between the last two evaluations.  Raises ConvergenceError once either
    axis would exceed the node cap.
    """
    if rel_tol <= 0.0:
        raise ParameterDomainError("rel_tol must be positive")
    current = spec
    value = integrate_sphere(current, integrand)
    while True:
        if current.n_theta * 2 > NODE_CAP or current.n_phi * 2 > NODE_CAP:
            raise ConvergenceError(
                "node budget exhausted before reaching the requested tolerance",
                diagnostics={
                    "last_value": value,
                    "n_theta": current.n_theta,
                    "n_phi": current.n_phi,
                    "rel_tol": rel_tol,
                },
            )
        finer = current.doubled()
        refined = integrate_sphere(finer, integrand)
        diff = abs(refined - value)
        if diff <= rel_tol * max(abs(refined), 1e-300):
            return refined, diff
        current, value = finer, refined
