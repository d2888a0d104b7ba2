"""Numpy reference kernels for the radial profile and its derivative jet.

These are the pure-Python counterparts of the compiled kernels in
``monoform._speed``.  Both implement the same closed-form chain; the grid
entry points in :mod:`monoform.kernels` pick one at import time.

The radial profile rho(theta, phi) is built from a strictly increasing
meridian reparametrization F (a rational function of the scaled latitude),
two mirror copies f, g of it on [-pi/2, pi/2], and a longitude-dependent
blend weight a in [0, 1] with the n-fold dihedral symmetry:

    rho = a * sin(f) + (1 - a) * sin(g)

All first and second partial derivatives with respect to (theta, phi) are
hand-derived closed forms; finite differences are used only in the tests.
"""

from __future__ import annotations

import numpy as np

from .params import POLE_EPS

HALF_PI = np.pi / 2.0


def _F_chain(c: float, x: np.ndarray):
    """F, F', F'' of the meridian reparametrization for 0 < c < 1.

    Uses the factored form F = h * G with h = c*x/(c+x) and
    G = 1 + x^2 / D, D = c*x + (1-c)*(1-x)^2.  D > 0 on [0, 1] for c < 1.
    """
    W = c + x
    h = c * x / W
    h1 = c * c / (W * W)
    h2 = -2.0 * c * c / (W * W * W)

    one_x = 1.0 - x
    D = c * x + (1.0 - c) * one_x * one_x
    D1 = c - 2.0 * (1.0 - c) * one_x
    D2 = 2.0 * (1.0 - c)

    x2 = x * x
    G = 1.0 + x2 / D
    G1 = 2.0 * x / D - x2 * D1 / (D * D)
    G2 = (
        2.0 / D
        - 4.0 * x * D1 / (D * D)
        - x2 * D2 / (D * D)
        + 2.0 * x2 * D1 * D1 / (D * D * D)
    )

    F = h * G
    F1 = h1 * G + h * G1
    F2 = h2 * G + 2.0 * h1 * G1 + h * G2
    return F, F1, F2


def _fg_chain(c: float, theta: np.ndarray):
    """f, f', f'', g, g', g'' on [-pi/2, pi/2] for 0 < c < 1.

    f is the pi-scaled image of F; g is its odd reflection g(t) = -f(-t).
    """
    x = theta / np.pi + 0.5
    F, F1, F2 = _F_chain(c, x)
    f = np.pi * F - HALF_PI
    f1 = F1
    f2 = F2 / np.pi

    Fm, Fm1, Fm2 = _F_chain(c, 1.0 - x)
    g = HALF_PI - np.pi * Fm
    g1 = Fm1
    g2 = -Fm2 / np.pi
    return f, f1, f2, g, g1, g2


def _pole_mask(theta: np.ndarray):
    north = HALF_PI - theta < POLE_EPS
    south = theta + HALF_PI < POLE_EPS
    return north, south


def rho_grid(n: int, c: float, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    """Radial profile rho on arrays of latitude/longitude (same shape)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    north, south = _pole_mask(theta)

    if c == 1.0:
        rho = np.sin(theta)
    else:
        safe = np.where(north | south, 0.0, theta)
        f, _, _, g, _, _ = _fg_chain(c, safe)
        cf = np.cos(f)
        cg = np.cos(g)
        P = 0.5 * (1.0 + np.cos(n * phi))
        Q = 1.0 - P
        A = P * cf * cf
        S = A + Q * cg * cg
        a = np.clip(A / S, 0.0, 1.0)
        rho = a * np.sin(f) + (1.0 - a) * np.sin(g)

    rho = np.where(north, 1.0, rho)
    rho = np.where(south, -1.0, rho)
    return rho


def jet_grid(n: int, c: float, theta: np.ndarray, phi: np.ndarray):
    """rho and its first/second partials w.r.t. (theta, phi).

    Returns six arrays (rho, r_t, r_p, r_tt, r_tp, r_pp) of the common
    broadcast shape.  At latitudes inside the pole snap window the exact
    limit jet (+-1, 0, 0, -+1, 0, 0) is substituted.
    """
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    theta, phi = np.broadcast_arrays(theta, phi)
    north, south = _pole_mask(theta)
    at_pole = north | south

    if c == 1.0:
        st = np.sin(theta)
        ct = np.cos(theta)
        zero = np.zeros_like(st)
        rho, r_t, r_p = st.copy(), ct.copy(), zero.copy()
        r_tt, r_tp, r_pp = -st, zero.copy(), zero.copy()
    else:
        safe = np.where(at_pole, 0.0, theta)
        f, f1, f2, g, g1, g2 = _fg_chain(c, safe)
        sf, cf = np.sin(f), np.cos(f)
        sg, cg = np.sin(g), np.cos(g)

        u = cf * cf
        v = cg * cg
        u1 = -np.sin(2.0 * f) * f1
        v1 = -np.sin(2.0 * g) * g1
        u2 = -2.0 * np.cos(2.0 * f) * f1 * f1 - np.sin(2.0 * f) * f2
        v2 = -2.0 * np.cos(2.0 * g) * g1 * g1 - np.sin(2.0 * g) * g2

        P = 0.5 * (1.0 + np.cos(n * phi))
        Q = 1.0 - P
        P1 = -0.5 * n * np.sin(n * phi)
        P2 = -0.5 * n * n * np.cos(n * phi)

        S = P * u + Q * v
        S_t = P * u1 + Q * v1
        S_p = P1 * (u - v)
        K = u1 * v - u * v1

        a = np.clip(P * u / S, 0.0, 1.0)
        S2 = S * S
        S3 = S2 * S
        a_t = P * Q * K / S2
        a_p = u * v * P1 / S2
        a_tt = P * Q * ((u2 * v - u * v2) * S - 2.0 * K * S_t) / S3
        a_tp = P1 * K * ((Q - P) * S - 2.0 * P * Q * (u - v)) / S3
        a_pp = u * v * (P2 * S - 2.0 * P1 * S_p) / S3

        dlt = sf - sg
        dlt_t = cf * f1 - cg * g1
        dlt_tt = -sf * f1 * f1 + cf * f2 + sg * g1 * g1 - cg * g2

        rho = a * dlt + sg
        r_t = a_t * dlt + a * dlt_t + cg * g1
        r_p = a_p * dlt
        r_tt = a_tt * dlt + 2.0 * a_t * dlt_t + a * dlt_tt + (-sg * g1 * g1 + cg * g2)
        r_tp = a_tp * dlt + a_p * dlt_t
        r_pp = a_pp * dlt

    sign = np.where(north, 1.0, -1.0)
    for arr, pole_val in (
        (rho, sign),
        (r_t, 0.0),
        (r_p, 0.0),
        (r_tt, -sign),
        (r_tp, 0.0),
        (r_pp, 0.0),
    ):
        np.copyto(arr, pole_val, where=at_pole)
    return rho, r_t, r_p, r_tt, r_tp, r_pp
