"""Moments of the star-shaped bodies: volume, centroid, and the first
moment about the equatorial plane together with its normalized form H.

For the polar graph R = 1 + d*rho the first moment about the (x, y)-plane
expands as M_xy = d * H(c, d) with

    H = integral of (rho + 3/2 d rho^2 + d^2 rho^3 + d^3/4 rho^4)
        * sin(theta) cos(theta)  d(phi) d(theta).

At c = 1 the profile is rho = sin(theta) and H has the closed form
4*pi*d^2/5 + 4*pi/3, which serves as the oracle for the quadrature path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterDomainError
from .params import ShapeParams
from .quadrature import QuadratureSpec, integrate_sphere

DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class MassProperties:
    """Volume, centroid, and equatorial first moment of a body.

    H is the normalized moment of the smooth family; it is None for
    polyhedral masses where the normalization has no meaning.
    """

    volume: float
    centroid: np.ndarray = field(repr=False)
    M_xy: float
    H: float | None = None


def _rho_integrand(params: ShapeParams, transform):
    def integrand(theta, phi):
        rho = kernels.rho_grid(params.n, params.c, theta, phi)
        return transform(rho, theta, phi)

    return integrand


def moment_Mxy(params: ShapeParams, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """First moment of the body about the (x, y)-plane."""
    d = params.d

    def transform(rho, theta, phi):
        R = 1.0 + d * rho
        return 0.25 * R**4 * np.cos(theta) * np.sin(theta)

    return integrate_sphere(spec, _rho_integrand(params, transform))


def H_value(params: ShapeParams, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Normalized first moment H(c, d); the d = 0 case is the pure rho term."""
    d = params.d

    def transform(rho, theta, phi):
        poly = rho + 1.5 * d * rho**2 + d**2 * rho**3 + 0.25 * d**3 * rho**4
        return poly * np.sin(theta) * np.cos(theta)

    return integrate_sphere(spec, _rho_integrand(params, transform))


def H_closed_form_c1(d: float) -> float:
    """Closed form of H at c = 1: 4*pi*d^2/5 + 4*pi/3."""
    if not (0.0 <= d <= 1.0):
        raise ParameterDomainError(f"d must be in [0, 1], got {d}")
    return 0.8 * math.pi * d * d + 4.0 * math.pi / 3.0


def rho0_phi_integral(theta) -> np.ndarray:
    """Exact longitude integral of the small-c limit profile at fixed theta.

    The limit profile is a Moebius function of cos(n*phi), so its integral
    over a full period reduces to the standard 1/(a + b*cos) forms; the
    result is a rational function of theta, independent of the fold count.
    """
    theta = np.asarray(theta, dtype=float)
    ap = (math.pi / 2.0 + theta) ** 4
    am = (math.pi / 2.0 - theta) ** 4
    r = ap / am
    sq = np.sqrt(r)
    with np.errstate(divide="ignore", invalid="ignore"):
        main = (1.0 - r) * math.pi / sq
        corr = -(1.0 + r) * (2.0 * math.pi / (r - 1.0)) * (1.0 - (1.0 + r) / (2.0 * sq))
        out = main + corr
    # r -> 1 (theta -> 0) is removable; the closed form cancels badly there.
    out = np.where(np.abs(r - 1.0) < 1e-4, _phi_integral_series(r), out)
    return out


def _phi_integral_series(r):
    # Taylor expansion of the phi integral about r = 1, truncation below
    # 1e-16 inside |r - 1| < 1e-4 where the closed form loses digits.
    e = np.asarray(r) - 1.0
    return math.pi * (-0.5 * e + 0.25 * e * e - (5.0 / 32.0) * e**3)


def H_limit_c0(n: int, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """Limit of H(c, 0) as c -> 0+, reported as the one-hemisphere moment.

    The longitude direction is integrated exactly (rho0_phi_integral), and
    the latitude integral over one hemisphere is done with Gauss-Legendre in
    s = sin(theta).  The two hemispheres contribute equally because the
    limit profile flips sign under the reflection theta -> -theta combined
    with the half-period longitude shift, so the full-sphere moment is twice
    the returned value.
    """
    if int(n) != n or n < 2:
        raise ParameterDomainError(f"fold count n must be an integer >= 2, got {n}")
    x, w = np.polynomial.legendre.leggauss(spec.n_theta)
    s = 0.5 * (x + 1.0)  # sin(theta) on the northern hemisphere
    w = 0.5 * w
    theta = np.arcsin(s)
    values = rho0_phi_integral(theta) * s
    return math.fsum((values * w).tolist())


def star_body_mass(params: ShapeParams, spec: QuadratureSpec = DEFAULT_SPEC) -> MassProperties:
    """Volume, centroid, M_xy and H of one body, all about the origin."""

    def volume_transform(rho, theta, phi):
        R = 1.0 + params.d * rho
        return R**3 / 3.0 * np.cos(theta)

    def axis_moment(component):
        def transform(rho, theta, phi):
            R = 1.0 + params.d * rho
            return 0.25 * R**4 * component(theta, phi) * np.cos(theta)

        return integrate_sphere(spec, _rho_integrand(params, transform))

    volume = integrate_sphere(spec, _rho_integrand(params, volume_transform))
    m_x = axis_moment(lambda t, p: np.cos(t) * np.cos(p))
    m_y = axis_moment(lambda t, p: np.cos(t) * np.sin(p))
    m_z = axis_moment(lambda t, p: np.sin(t) * np.ones_like(p))
    centroid = np.array([m_x, m_y, m_z]) / volume
    return MassProperties(
        volume=volume,
        centroid=centroid,
        M_xy=m_z,
        H=H_value(params, spec),
    )
