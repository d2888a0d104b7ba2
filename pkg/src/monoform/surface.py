"""Differential geometry of the embedded surface R(theta, phi) * u(theta, phi).

Provides principal/Gaussian curvature fields, detection and Morse
classification of the critical points of the boundary distance function
measured from a reference point, the equilibrium census with its index
check S - H + U = 2, the dihedral symmetry deviation, and the sup-norm
distance of the surface from the unit sphere.

Away from the poles everything is computed from the analytic derivative
jet in spherical coordinates.  At the poles (and inside the narrow
ill-conditioned band next to them) the projection chart onto the
equatorial plane is used instead; there the profile has gradient zero and
chart Hessian -+identity, which makes both poles umbilic points.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import ParameterDomainError
from .params import NEAR_POLE_BAND, ShapeParams, SphericalPoint

log = logging.getLogger(__name__)

HALF_PI = math.pi / 2.0

#: Hessian eigenvalues below this magnitude flag a degenerate (non-Morse)
#: critical point instead of silently classifying it.
DEGENERACY_EPS = 1e-8

#: Angular separation below which two critical points are the same point.
DEDUP_ANGLE = 1e-6


@dataclass(frozen=True)
class CurvatureSample:
    """Principal curvatures at one surface point, kappa1 <= kappa2.

    Signs follow the inward-normal convention: the unit sphere has
    kappa1 = kappa2 = 1, and a convex body has both positive.
    """

    point: SphericalPoint
    kappa1: float
    kappa2: float
    gaussian: float
    mean: float


@dataclass(frozen=True)
class CurvatureField:
    """Extremes of the curvature fields over a sweep with local refinement."""

    min_principal: float
    max_principal: float
    min_gaussian: float
    max_gaussian: float
    argmin_principal: SphericalPoint
    argmin_gaussian: SphericalPoint
    grid: tuple[int, int]


@dataclass(frozen=True)
class EquilibriumPoint:
    """A classified critical point of the boundary distance function."""

    point: SphericalPoint
    location3d: np.ndarray = field(repr=False)
    kind: str  # "stable" | "unstable" | "saddle"
    hessian_eigenvalues: tuple[float, float]
    residual: float
    degenerate: bool = False


@dataclass(frozen=True)
class EquilibriumCensus:
    """Counts of stable/saddle/unstable points and the index check."""

    S: int
    H_saddle: int
    U: int
    euler_check: int
    valid: bool
    degenerate_count: int = 0


def _embedding(params: ShapeParams, theta, phi):
    """Embedding X = R*u and its first/second partials on arrays."""
    rho, r_t, r_p, r_tt, r_tp, r_pp = kernels.jet_grid(params.n, params.c, theta, phi)
    d = params.d
    R = 1.0 + d * rho
    Rt, Rp, Rtt, Rtp, Rpp = d * r_t, d * r_p, d * r_tt, d * r_tp, d * r_pp

    st, ct = np.sin(theta), np.cos(theta)
    sp, cp = np.sin(phi), np.cos(phi)
    zero = np.zeros(np.broadcast(theta, phi).shape)

    u = np.stack([ct * cp, ct * sp, st + zero], -1)
    u_t = np.stack([-st * cp, -st * sp, ct + zero], -1)
    u_p = np.stack([-ct * sp, ct * cp, zero], -1)
    u_tt = -u
    u_tp = np.stack([st * sp, -st * cp, zero], -1)
    u_pp = np.stack([-ct * cp, -ct * sp, zero], -1)

    def comb(s0, a, s1, b):
        return s0[..., None] * a + s1[..., None] * b

    X = R[..., None] * u
    Xt = comb(Rt, u, R, u_t)
    Xp = comb(Rp, u, R, u_p)
    Xtt = Rtt[..., None] * u + 2.0 * Rt[..., None] * u_t + R[..., None] * u_tt
    Xtp = Rtp[..., None] * u + Rt[..., None] * u_p + Rp[..., None] * u_t + R[..., None] * u_tp
    Xpp = Rpp[..., None] * u + 2.0 * Rp[..., None] * u_p + R[..., None] * u_pp
    return X, Xt, Xp, Xtt, Xtp, Xpp


def principal_curvature_arrays(params: ShapeParams, theta, phi):
    """(kappa_min, kappa_max) arrays on interior points, inward convention."""
    X, Xt, Xp, Xtt, Xtp, Xpp = _embedding(params, theta, phi)
    E = np.einsum("...i,...i->...", Xt, Xt)
    F = np.einsum("...i,...i->...", Xt, Xp)
    G = np.einsum("...i,...i->...", Xp, Xp)
    nrm = np.cross(Xt, Xp)  # points inward for a star-shaped polar graph
    nrm /= np.linalg.norm(nrm, axis=-1, keepdims=True)
    L = np.einsum("...i,...i->...", Xtt, nrm)
    M = np.einsum("...i,...i->...", Xtp, nrm)
    N = np.einsum("...i,...i->...", Xpp, nrm)
    den = E * G - F * F
    gauss = (L * N - M * M) / den
    mean = (E * N - 2.0 * F * M + G * L) / (2.0 * den)
    disc = np.sqrt(np.maximum(mean * mean - gauss, 0.0))
    return mean - disc, mean + disc


def pole_curvature(params: ShapeParams, north: bool) -> float:
    """Common value of both principal curvatures at a pole.

    From the chart jet: the radial graph over the chart has Hessian
    -+d*identity at the poles, giving kappa = (R_p + d)/R_p^2 at the north
    pole (R_p = 1 + d) and (R_p - d)/R_p^2 at the south pole (R_p = 1 - d).
    """
    if north:
        R_p = 1.0 + params.d
        return (R_p + params.d) / (R_p * R_p)
    R_p = 1.0 - params.d
    return (R_p - params.d) / (R_p * R_p)


def curvature_at(params: ShapeParams, p: SphericalPoint) -> CurvatureSample:
    """Principal curvature pair at one point; chart-based at/near the poles."""
    gap = HALF_PI - abs(p.theta)
    if gap < NEAR_POLE_BAND:
        kappa = pole_curvature(params, north=p.theta > 0)
        return CurvatureSample(p, kappa, kappa, kappa * kappa, kappa)
    k1, k2 = principal_curvature_arrays(
        params, np.array([p.theta]), np.array([p.phi])
    )
    k1, k2 = float(k1[0]), float(k2[0])
    return CurvatureSample(p, k1, k2, k1 * k2, 0.5 * (k1 + k2))


def _interior_grid(grid: tuple[int, int]):
    nt, nphi = grid
    theta = -HALF_PI + np.arange(1, nt + 1) * (math.pi / (nt + 1))
    phi = np.arange(nphi) * (2.0 * math.pi / nphi)
    return theta, phi


def curvature_field(params: ShapeParams, grid: tuple[int, int] = (128, 256)) -> CurvatureField:
    """Curvature extremes over a full sweep plus both poles.

    After the sweep the neighborhood of each argmin is refined with three
    levels of 9x9 subgrids, each zoomed by a factor of 4.
    """
    if grid[0] < 64 or grid[1] < 128:
        raise ParameterDomainError("curvature sweep grid must be at least 64x128")
    theta, phi = _interior_grid(grid)
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    k1, k2 = principal_curvature_arrays(params, TH, PH)
    gauss = k1 * k2

    def refine(value_fn, start_point, start_value, spacing):
        best_point, best_value = start_point, start_value
        half = spacing
        for _ in range(3):
            t0, p0 = best_point
            ts = np.clip(
                np.linspace(t0 - half[0], t0 + half[0], 9),
                -HALF_PI + 1.5 * NEAR_POLE_BAND,
                HALF_PI - 1.5 * NEAR_POLE_BAND,
            )
            ps = np.linspace(p0 - half[1], p0 + half[1], 9)
            T, P = np.meshgrid(ts, ps, indexing="ij")
            vals = value_fn(T, P)
            ij = np.unravel_index(np.argmin(vals), vals.shape)
            if vals[ij] < best_value:
                best_value = float(vals[ij])
                best_point = (float(T[ij]), float(P[ij]))
            half = (half[0] / 4.0, half[1] / 4.0)
        return best_point, best_value

    spacing = (math.pi / (grid[0] + 1), 2.0 * math.pi / grid[1])

    ij = np.unravel_index(np.argmin(k1), k1.shape)
    (t_min, p_min), min_k1 = refine(
        lambda T, P: principal_curvature_arrays(params, T, P)[0],
        (float(TH[ij]), float(PH[ij])),
        float(k1[ij]),
        spacing,
    )
    ij_g = np.unravel_index(np.argmin(gauss), gauss.shape)
    (t_ming, p_ming), min_gauss = refine(
        lambda T, P: np.prod(principal_curvature_arrays(params, T, P), axis=0),
        (float(TH[ij_g]), float(PH[ij_g])),
        float(gauss[ij_g]),
        spacing,
    )

    max_k2 = float(np.max(k2))
    max_gauss = float(np.max(gauss))
    for north in (True, False):
        kp = pole_curvature(params, north)
        theta_p = HALF_PI if north else -HALF_PI
        if kp < min_k1:
            min_k1, (t_min, p_min) = kp, (theta_p, 0.0)
        if kp * kp < min_gauss:
            min_gauss, (t_ming, p_ming) = kp * kp, (theta_p, 0.0)
        max_k2 = max(max_k2, kp)
        max_gauss = max(max_gauss, kp * kp)

    return CurvatureField(
        min_principal=min_k1,
        max_principal=max_k2,
        min_gaussian=min_gauss,
        max_gaussian=max_gauss,
        argmin_principal=SphericalPoint(t_min, p_min),
        argmin_gaussian=SphericalPoint(t_ming, p_ming),
        grid=grid,
    )


def _delta_state(params: ShapeParams, theta, phi, ref):
    """delta, gradient, Hessian and the surface-gradient norm at (theta, phi)."""
    X, Xt, Xp, Xtt, Xtp, Xpp = _embedding(params, theta, phi)
    m3 = X - ref
    delta = np.linalg.norm(m3, axis=-1)
    g1 = np.einsum("...i,...i->...", m3, Xt) / delta
    g2 = np.einsum("...i,...i->...", m3, Xp) / delta
    E = np.einsum("...i,...i->...", Xt, Xt)
    F = np.einsum("...i,...i->...", Xt, Xp)
    G = np.einsum("...i,...i->...", Xp, Xp)
    h11 = (E + np.einsum("...i,...i->...", m3, Xtt) - g1 * g1) / delta
    h12 = (F + np.einsum("...i,...i->...", m3, Xtp) - g1 * g2) / delta
    h22 = (G + np.einsum("...i,...i->...", m3, Xpp) - g2 * g2) / delta
    det_metric = E * G - F * F
    grad_norm = np.sqrt(
        np.maximum((G * g1 * g1 - 2.0 * F * g1 * g2 + E * g2 * g2) / det_metric, 0.0)
    )
    return delta, g1, g2, h11, h12, h22, (E, F, G), grad_norm


def _classify(eigs: np.ndarray):
    lo, hi = float(eigs[0]), float(eigs[1])
    degenerate = min(abs(lo), abs(hi)) < DEGENERACY_EPS
    if lo > 0.0 and hi > 0.0:
        kind = "stable"
    elif lo < 0.0 and hi < 0.0:
        kind = "unstable"
    else:
        kind = "saddle"
    return kind, (lo, hi), degenerate


def _pole_equilibrium(params: ShapeParams, ref, north: bool, tol: float):
    """Check a pole for criticality via the chart; return a point or None."""
    d = params.d
    sign = 1.0 if north else -1.0
    R_p = 1.0 + d if north else 1.0 - d
    pos = np.array([0.0, 0.0, sign * R_p])
    m3 = pos - ref
    delta = float(np.linalg.norm(m3))
    grad = np.array([-ref[0], -ref[1]]) * (R_p / delta)
    residual = float(np.linalg.norm(grad)) / R_p  # orthonormal-frame norm
    if residual >= tol:
        return None
    z_ab = -(d + R_p) if north else (R_p - d)
    h = np.empty((2, 2))
    for a in range(2):
        for b in range(2):
            h[a, b] = (
                (R_p * R_p if a == b else 0.0)
                + (m3[2] * z_ab if a == b else 0.0)
                - grad[a] * grad[b]
            ) / delta
    eigs = np.linalg.eigvalsh(h / (R_p * R_p))
    kind, pair, degenerate = _classify(eigs)
    theta = HALF_PI if north else -HALF_PI
    return EquilibriumPoint(
        point=SphericalPoint(theta, 0.0),
        location3d=pos,
        kind=kind,
        hessian_eigenvalues=pair,
        residual=residual,
        degenerate=degenerate,
    )


def find_equilibria(
    params: ShapeParams,
    reference_point=None,
    seeds_grid: tuple[int, int] = (64, 128),
    tol: float = 1e-8,
    max_iter: int = 50,
) -> list[EquilibriumPoint]:
    """All critical points of the distance-from-reference function.

    Seeds a damped Newton iteration on the tangential gradient from every
    node of a latitude/longitude grid; both poles are always examined
    through the chart.  Converged points are deduplicated within an angular
    distance of 1e-6 and returned sorted by (theta, phi).  The reference
    defaults to the computed centroid of the body and must lie strictly
    inside the inscribed sphere of radius 1 - d.
    """
    if reference_point is None:
        from .mass import star_body_mass

        reference_point = star_body_mass(params).centroid
    ref = np.asarray(reference_point, dtype=float)
    if np.linalg.norm(ref) >= 1.0 - params.d:
        raise ParameterDomainError(
            "reference point must lie strictly inside the inscribed sphere |x| < 1 - d"
        )

    nt, nphi = seeds_grid
    theta0, phi0 = _interior_grid((nt, nphi))
    TH, PH = np.meshgrid(theta0, phi0, indexing="ij")
    th = TH.ravel().copy()
    ph = PH.ravel().copy()

    # The interior Newton search stays outside the ill-conditioned band
    # next to the poles; runs heading there are absorbed by the chart-based
    # pole check instead.
    theta_cap = HALF_PI - NEAR_POLE_BAND
    step_tol = 1e-9  # metric length; a critical point is *located*, not just flat
    active = np.ones(th.size, dtype=bool)
    *_, gn = _delta_state(params, th, ph, ref)
    settled = np.zeros(th.size, dtype=bool)

    for _ in range(max_iter):
        if not active.any():
            break
        ta, pa = th[active], ph[active]
        _, g1, g2, h11, h12, h22, (E, F, G), gn_a = _delta_state(params, ta, pa, ref)
        # Tikhonov shift: negligible when the Hessian is well conditioned,
        # acts as a pseudo-inverse along exactly singular directions
        # (degenerate critical circles of axisymmetric bodies).
        mu = 1e-12 * (np.abs(h11) + np.abs(h22) + np.abs(h12)) + 1e-300
        det = (h11 + mu) * (h22 + mu) - h12 * h12
        det = np.where(np.abs(det) < 1e-300, np.inf, det)
        step_t = ((h22 + mu) * g1 - h12 * g2) / det
        step_p = ((h11 + mu) * g2 - h12 * g1) / det
        step_len = np.sqrt(
            np.maximum(
                E * step_t * step_t + 2.0 * F * step_t * step_p + G * step_p * step_p,
                0.0,
            )
        )
        done = (gn_a < tol) & (step_len < step_tol)

        lam = np.ones_like(ta)
        best_t, best_p, best_gn = ta.copy(), pa.copy(), gn_a.copy()
        undecided = ~done
        for _halving in range(8):
            if not undecided.any():
                break
            cand_t = np.clip(ta - lam * step_t, -theta_cap, theta_cap)
            cand_p = pa - lam * step_p
            *_, gn_c = _delta_state(
                params, cand_t[undecided], cand_p[undecided], ref
            )
            improved = gn_c <= best_gn[undecided]
            idx = np.flatnonzero(undecided)
            take = idx[improved]
            best_t[take] = cand_t[take]
            best_p[take] = cand_p[take]
            best_gn[take] = gn_c[improved]
            undecided[take] = False
            lam[undecided] *= 0.5

        th[active] = best_t
        ph[active] = best_p
        gn_now = gn.copy()
        gn_now[active] = best_gn
        gn = gn_now
        newly_done = np.zeros_like(active)
        newly_done[active] = done
        settled |= newly_done
        active &= ~newly_done

    # Runs stuck at the clamp belong to the poles, handled via the chart.
    at_clamp = np.abs(th) >= theta_cap - 1e-12
    discarded = int(np.count_nonzero(~settled & ~at_clamp))
    if discarded:
        log.debug("find_equilibria: %d seeds discarded without convergence", discarded)

    keep = settled & ~at_clamp
    points: list[EquilibriumPoint] = []
    for pole_north in (False, True):
        pt = _pole_equilibrium(params, ref, pole_north, tol)
        if pt is not None:
            points.append(pt)

    if keep.any():
        tk, pk = th[keep], ph[keep] % (2.0 * math.pi)
        order = np.lexsort((pk, tk))
        tk, pk = tk[order], pk[order]
        delta, g1, g2, h11, h12, h22, (E, F, G), gnk = _delta_state(params, tk, pk, ref)
        X = _embedding(params, tk, pk)[0]
        w = np.sqrt(np.maximum(G - F * F / E, 1e-300))
        for i in range(tk.size):
            T = np.array(
                [[1.0 / math.sqrt(E[i]), -F[i] / (E[i] * w[i])], [0.0, 1.0 / w[i]]]
            )
            Hm = np.array([[h11[i], h12[i]], [h12[i], h22[i]]])
            eigs = np.linalg.eigvalsh(T.T @ Hm @ T)
            kind, pair, degenerate = _classify(eigs)
            points.append(
                EquilibriumPoint(
                    point=SphericalPoint(float(tk[i]), float(pk[i])),
                    location3d=X[i],
                    kind=kind,
                    hessian_eigenvalues=pair,
                    residual=float(gnk[i]),
                    degenerate=degenerate,
                )
            )

    # Poles are listed first so a Newton run that stopped a hair away from
    # a pole deduplicates onto the exact chart-based pole entry.
    deduped: list[EquilibriumPoint] = []
    units: list[np.ndarray] = []
    cos_tol = math.cos(DEDUP_ANGLE)
    for pt in points:
        u = pt.point.unit_vector()
        if any(float(np.dot(u, v)) > cos_tol for v in units):
            continue
        deduped.append(pt)
        units.append(u)
    deduped.sort(key=lambda q: (q.point.theta, q.point.phi))
    return deduped


def census(points: list[EquilibriumPoint]) -> EquilibriumCensus:
    """Counts by kind plus the index check S - H + U (2 for a clean census)."""
    S = sum(1 for p in points if p.kind == "stable")
    H = sum(1 for p in points if p.kind == "saddle")
    U = sum(1 for p in points if p.kind == "unstable")
    degenerate = sum(1 for p in points if p.degenerate)
    euler = S - H + U
    return EquilibriumCensus(
        S=S,
        H_saddle=H,
        U=U,
        euler_check=euler,
        valid=(len(points) > 0 and degenerate == 0 and euler == 2),
        degenerate_count=degenerate,
    )


def _halton(index: np.ndarray, base: int) -> np.ndarray:
    result = np.zeros(index.shape)
    f = 1.0
    i = index.astype(np.int64) + 1
    while np.any(i > 0):
        f /= base
        result += f * (i % base)
        i //= base
    return result


def symmetry_deviation(params: ShapeParams, sample_count: int = 1000) -> float:
    """Max deviation of R under the generators phi -> phi + 2*pi/n, phi -> -phi.

    Sampled on a deterministic Halton set; the construction is exactly
    invariant, so the result is floating-point noise (<= 1e-12).
    """
    if sample_count < 100:
        raise ParameterDomainError("sample_count must be >= 100")
    idx = np.arange(sample_count)
    theta = np.arcsin(2.0 * _halton(idx, 2) - 1.0)
    phi = 2.0 * math.pi * _halton(idx, 3)

    def radius(t, p):
        return 1.0 + params.d * kernels.rho_grid(params.n, params.c, t, p)

    base = radius(theta, phi)
    rotated = radius(theta, phi + 2.0 * math.pi / params.n)
    mirrored = radius(theta, -phi)
    return float(
        max(np.abs(rotated - base).max(), np.abs(mirrored - base).max())
    )


def ball_distance_bound(params: ShapeParams, grid: tuple[int, int] = (128, 256)) -> float:
    """sup over the sample grid (poles included) of |R - 1|.

    Bounds the Hausdorff distance to the unit ball: the body is sandwiched
    between the balls of radius 1 - sup and 1 + sup.
    """
    theta, phi = _interior_grid(grid)
    TH, PH = np.meshgrid(theta, phi, indexing="ij")
    rho = kernels.rho_grid(params.n, params.c, TH, PH)
    # |rho| = 1 exactly at the poles, so the sup over the closed surface
    # is attained there whenever the interior samples stay below 1.
    peak = max(float(np.abs(rho).max()), 1.0)
    return params.d * peak
