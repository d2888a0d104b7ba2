"""Scalar evaluation of the radial construction chain.

The surface of each body is the polar graph R(u) = 1 + d * rho(u) over the
unit sphere.  rho is assembled from a strictly increasing reparametrization
F of [0, 1], its pi-scaled meridian images f and g, and a longitude blend
with n-fold dihedral symmetry.  Grid-sized evaluation goes through
:mod:`monoform.kernels`; this module provides the scalar API and the
derivative jet record used by the differential-geometry layer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import ParameterDomainError
from .params import NEAR_POLE_BAND, POLE_EPS, ShapeParams, SphericalPoint

HALF_PI = math.pi / 2.0


def eval_F(c: float, x: float) -> float:
    """Meridian reparametrization F_c(x) on [0, 1].

    Strictly increasing with F(0) = 0, F(1) = 1 and unit one-sided
    derivatives at both endpoints.  F_1 is the identity.
    """
    if not (0.0 < c <= 1.0):
        raise ParameterDomainError(f"c must be in (0, 1], got {c}")
    if not (0.0 <= x <= 1.0):
        raise ParameterDomainError(f"x must be in [0, 1], got {x}")
    if c == 1.0 or x == 0.0:
        return float(x)
    if x == 1.0:
        return 1.0
    num = c * x * x + (1.0 - c) * (1.0 - x) ** 2 * (c * x / (c + x))
    den = c * x + (1.0 - c) * (1.0 - x) ** 2
    return num / den


def eval_f(c: float, theta: float) -> float:
    """Meridian latitude map f_c, the pi-scaled image of F_c."""
    if not (-HALF_PI - 1e-15 <= theta <= HALF_PI + 1e-15):
        raise ParameterDomainError(f"theta must lie in [-pi/2, pi/2], got {theta}")
    theta = min(max(theta, -HALF_PI), HALF_PI)
    return math.pi * eval_F(c, theta / math.pi + 0.5) - HALF_PI


def eval_g(c: float, theta: float) -> float:
    """Odd reflection of f: g(theta) = -f(-theta)."""
    return -eval_f(c, -theta)


def eval_rho(params: ShapeParams, p: SphericalPoint) -> float:
    """Radial profile rho at one spherical point; exactly +-1 at the poles."""
    out = kernels.rho_grid(
        params.n, params.c, np.array([p.theta]), np.array([p.phi])
    )
    return float(out[0])


def eval_rho0(n: int, p: SphericalPoint) -> float:
    """Pointwise small-c limit of the radial profile at an interior point.

    The limit is a rational expression in the quartic latitude weights
    (pi/2 +- theta)^4 blended by the n-fold longitude factors; it is not
    defined at the poles, where the limit depends on the approach direction.
    """
    if int(n) != n or n < 2:
        raise ParameterDomainError(f"fold count n must be an integer >= 2, got {n}")
    if HALF_PI - abs(p.theta) < POLE_EPS:
        raise ParameterDomainError(
            "the small-c limit profile is only defined on the open interval |theta| < pi/2"
        )
    ap = (HALF_PI + p.theta) ** 4
    am = (HALF_PI - p.theta) ** 4
    cw = math.cos(n * p.phi / 2.0) ** 2
    sw = math.sin(n * p.phi / 2.0) ** 2
    return (am * sw - ap * cw) / (ap * cw + am * sw)


@dataclass(frozen=True)
class SurfaceJet:
    """Value and first/second partials of rho (and R) at a spherical point.

    The six spherical-coordinate entries are limits at the poles; there the
    2x2 chart Hessian ``pole_chart_second`` (projection chart onto the
    equatorial plane) carries the well-conditioned second-order data:
    -identity at the north pole, +identity at the south pole.  Inside the
    narrow band ``near_pole_band`` the spherical entries are still returned
    but are ill-conditioned; curvature consumers switch to the chart.
    """

    rho: float
    rho_theta: float
    rho_phi: float
    rho_tt: float
    rho_tp: float
    rho_pp: float
    R: float
    is_pole: bool
    near_pole_band: bool
    pole_chart_second: np.ndarray | None


def jet(params: ShapeParams, p: SphericalPoint) -> SurfaceJet:
    """Analytic derivative jet of the radial profile at one point."""
    vals = kernels.jet_grid(
        params.n, params.c, np.array([p.theta]), np.array([p.phi])
    )
    rho, r_t, r_p, r_tt, r_tp, r_pp = (float(v[0]) for v in vals)
    is_pole = HALF_PI - abs(p.theta) < POLE_EPS
    band = HALF_PI - abs(p.theta) < NEAR_POLE_BAND
    chart = None
    if is_pole:
        sign = -1.0 if p.theta > 0 else 1.0
        chart = np.array([[sign, 0.0], [0.0, sign]])
    return SurfaceJet(
        rho=rho,
        rho_theta=r_t,
        rho_phi=r_p,
        rho_tt=r_tt,
        rho_tp=r_tp,
        rho_pp=r_pp,
        R=1.0 + params.d * rho,
        is_pole=is_pole,
        near_pole_band=band,
        pole_chart_second=chart,
    )
