import math

import numpy as np
import pytest

from fdtools import fd1, fd2, fd_mixed
from monoform import (
    ParameterDomainError,
    ShapeParams,
    SphericalPoint,
    ball_distance_bound,
    census,
    curvature_at,
    curvature_field,
    eval_rho,
    find_equilibria,
    pole_curvature,
    solve_c,
    star_body_mass,
    symmetry_deviation,
)

HALF_PI = math.pi / 2


# ---------------------------------------------------------------------------
# curvature


def test_unit_sphere_curvature():
    sample = curvature_at(ShapeParams(3, 1.0, 0.0), SphericalPoint(0.4, 2.0))
    assert sample.kappa1 == pytest.approx(1.0, abs=1e-12)
    assert sample.kappa2 == pytest.approx(1.0, abs=1e-12)
    assert sample.gaussian == pytest.approx(1.0, abs=1e-12)


def test_curvature_sample_identities():
    sample = curvature_at(ShapeParams(3, 0.3, 0.002), SphericalPoint(-0.8, 1.0))
    assert sample.gaussian == pytest.approx(sample.kappa1 * sample.kappa2, abs=1e-12)
    assert sample.mean == pytest.approx(0.5 * (sample.kappa1 + sample.kappa2), abs=1e-12)
    assert sample.kappa1 <= sample.kappa2


def test_pole_umbilicity():
    rng = np.random.default_rng(4)
    for _ in range(10):
        params = ShapeParams(
            int(rng.integers(2, 9)), float(rng.uniform(0.05, 1.0)), float(rng.uniform(0, 0.5))
        )
        for theta in (HALF_PI, -HALF_PI):
            s = curvature_at(params, SphericalPoint(theta, 0.0))
            assert abs(s.kappa1 - s.kappa2) < 1e-6


def test_pole_curvature_is_spherical_limit():
    # The chart value must be the limit of the spherical-coordinate formula.
    params = ShapeParams(3, 0.4, 0.2)
    for north in (True, False):
        sign = 1.0 if north else -1.0
        target = pole_curvature(params, north)
        in_band = curvature_at(params, SphericalPoint(sign * (HALF_PI - 5e-5), 0.3))
        assert in_band.kappa1 == pytest.approx(target, rel=1e-12)
        outside = curvature_at(params, SphericalPoint(sign * (HALF_PI - 2e-3), 0.3))
        assert outside.kappa1 == pytest.approx(target, rel=5e-3)
        assert outside.kappa2 == pytest.approx(target, rel=5e-3)


def test_curvature_matches_embedded_finite_differences():
    params = ShapeParams(3, 0.056, 0.001)
    rng = np.random.default_rng(12)
    for _ in range(5):
        theta = float(rng.uniform(-1.2, 1.2))
        phi = float(rng.uniform(0, 2 * math.pi))
        sample = curvature_at(params, SphericalPoint(theta, phi))
        k1, k2 = _fd_curvature(params, theta, phi)
        assert sample.kappa1 == pytest.approx(k1, rel=1e-4, abs=1e-4)
        assert sample.kappa2 == pytest.approx(k2, rel=1e-4, abs=1e-4)


def _fd_curvature(params, theta, phi, h=1e-3):
    """Principal curvatures from pure finite differences of the embedding."""

    def X(t, p):
        r = 1.0 + params.d * eval_rho(params, SphericalPoint(t, p % (2 * math.pi)))
        return r * np.array(
            [math.cos(t) * math.cos(p), math.cos(t) * math.sin(p), math.sin(t)]
        )

    Xt = np.array([fd1(lambda t, i=i: X(t, phi)[i], theta, h) for i in range(3)])
    Xp = np.array([fd1(lambda p, i=i: X(theta, p)[i], phi, h) for i in range(3)])
    Xtt = np.array([fd2(lambda t, i=i: X(t, phi)[i], theta, h) for i in range(3)])
    Xpp = np.array([fd2(lambda p, i=i: X(theta, p)[i], phi, h) for i in range(3)])
    Xtp = np.array(
        [fd_mixed(lambda t, p, i=i: X(t, p)[i], theta, phi, h) for i in range(3)]
    )
    E, F, G = Xt @ Xt, Xt @ Xp, Xp @ Xp
    n = np.cross(Xt, Xp)
    n /= np.linalg.norm(n)
    L, M, N = Xtt @ n, Xtp @ n, Xpp @ n
    den = E * G - F * F
    gauss = (L * N - M * M) / den
    mean = (E * N - 2 * F * M + G * L) / (2 * den)
    disc = math.sqrt(max(mean * mean - gauss, 0.0))
    return mean - disc, mean + disc


def test_curvature_field_sphere():
    field = curvature_field(ShapeParams(3, 1.0, 0.0), (64, 128))
    # Splitting kappa = H +- sqrt(H^2 - K) amplifies roundoff to sqrt(eps)
    # at umbilic points, so the principal extremes carry ~1e-8 noise.
    assert field.min_principal == pytest.approx(1.0, abs=1e-7)
    assert field.max_principal == pytest.approx(1.0, abs=1e-7)
    assert field.min_gaussian == pytest.approx(1.0, abs=1e-12)


def test_curvature_field_convex_below_threshold():
    field = curvature_field(ShapeParams(3, 0.056, 0.0005))
    assert field.min_principal > 0.0


def test_curvature_field_grid_convergence():
    coarse = curvature_field(ShapeParams(3, 0.056, 0.001), (64, 128))
    fine = curvature_field(ShapeParams(3, 0.056, 0.001), (128, 256))
    assert coarse.min_principal == pytest.approx(
        fine.min_principal, rel=1e-3, abs=1e-6
    )


# ---------------------------------------------------------------------------
# equilibria


def test_equilibria_axisymmetric_body_from_origin():
    # At c = 1 the radius is monotone in latitude, so the poles are the
    # only critical points; brute-force grid extrema confirm it.
    params = ShapeParams(3, 1.0, 0.2)
    points = find_equilibria(params, np.zeros(3))
    assert [p.kind for p in points] == ["stable", "unstable"]
    assert points[0].point.theta == pytest.approx(-HALF_PI, abs=1e-9)
    assert points[1].point.theta == pytest.approx(HALF_PI, abs=1e-9)

    theta = np.linspace(-HALF_PI, HALF_PI, 2001)
    radii = 1.0 + 0.2 * np.sin(theta)
    assert radii.argmin() == 0 and radii.argmax() == len(theta) - 1


def test_equilibria_on_axis_reference():
    points = find_equilibria(ShapeParams(3, 1.0, 0.2), np.array([0.0, 0.0, 0.1]))
    assert len(points) == 2
    assert {p.kind for p in points} == {"stable", "unstable"}
    for p in points:
        assert abs(abs(p.point.theta) - HALF_PI) < 1e-9
        assert p.residual < 1e-8


def test_equilibria_calibrated_body():
    c = solve_c(3, 1e-3, tol=1e-12).c_star
    params = ShapeParams(3, c, 1e-3)
    mass = star_body_mass(params)
    points = find_equilibria(params, mass.centroid)
    result = census(points)
    assert (result.S, result.H_saddle, result.U) == (1, 0, 1)
    assert result.valid
    for p in points:
        assert abs(abs(p.point.theta) - HALF_PI) < 1e-6
    # Which pole is stable is an output of the construction: the short
    # radius (south) carries the minimum of the distance function.
    assert points[0].kind == "stable" and points[0].point.theta < 0
    assert points[1].kind == "unstable" and points[1].point.theta > 0


def test_equilibria_seed_resolution_stability():
    c = solve_c(3, 1e-3, tol=1e-12).c_star
    params = ShapeParams(3, c, 1e-3)
    mass = star_body_mass(params)
    for seeds in ((32, 64), (48, 96), (64, 128)):
        result = census(find_equilibria(params, mass.centroid, seeds_grid=seeds))
        assert (result.S, result.H_saddle, result.U) == (1, 0, 1)


def test_equilibria_uncentered_body_obeys_index_theorem():
    # A non-calibrated member has extra equilibria; the index sum still
    # closes at 2 and the critical orbit structure is n-fold.
    params = ShapeParams(3, 0.3, 0.004)
    mass = star_body_mass(params)
    points = find_equilibria(params, mass.centroid)
    result = census(points)
    assert result.valid
    assert result.euler_check == 2
    assert result.S + result.H_saddle + result.U > 2


def test_degenerate_sphere_is_flagged():
    points = find_equilibria(ShapeParams(3, 1.0, 0.0), np.zeros(3), seeds_grid=(16, 32))
    result = census(points)
    assert not result.valid
    assert result.degenerate_count > 0


def test_degenerate_ring_detected_at_uncentered_axisymmetric_body():
    # Axisymmetric body with the reference at its centroid: a critical
    # circle appears and every point on it must carry the degeneracy flag.
    params = ShapeParams(3, 1.0, 0.2)
    mass = star_body_mass(params)
    points = find_equilibria(params, mass.centroid, seeds_grid=(32, 64))
    result = census(points)
    assert not result.valid
    assert result.degenerate_count > 0


def test_equilibria_reference_validation():
    with pytest.raises(ParameterDomainError):
        find_equilibria(ShapeParams(3, 1.0, 0.2), np.array([0.0, 0.0, 0.9]))


def test_census_empty_list_invalid():
    result = census([])
    assert (result.S, result.H_saddle, result.U) == (0, 0, 0)
    assert result.euler_check == 0
    assert not result.valid


def test_residuals_below_tolerance():
    params = ShapeParams(2, 0.5, 0.05)
    mass = star_body_mass(params)
    for p in find_equilibria(params, mass.centroid, tol=1e-9):
        assert p.residual < 1e-9


# ---------------------------------------------------------------------------
# symmetry and ball distance


def test_symmetry_deviation_tiny():
    rng = np.random.default_rng(21)
    for _ in range(5):
        params = ShapeParams(
            int(rng.integers(2, 8)), float(rng.uniform(0.05, 1.0)), float(rng.uniform(0, 0.9))
        )
        assert symmetry_deviation(params, 1000) <= 1e-12


def test_symmetry_deviation_c1_exact_zero():
    assert symmetry_deviation(ShapeParams(3, 1.0, 0.4), 500) == 0.0


def test_wrong_rotation_breaks_symmetry():
    # Negative control: the half-angle rotation is NOT a symmetry.
    params = ShapeParams(3, 0.1, 0.001)
    theta = 0.4
    base = eval_rho(params, SphericalPoint(theta, 0.0))
    shifted = eval_rho(params, SphericalPoint(theta, math.pi / 3))
    assert abs(shifted - base) > 1e-6


def test_monotone_radius_on_mirror_meridians():
    for c, d in ((0.1, 0.3), (0.5, 0.7), (0.9, 0.05)):
        params = ShapeParams(3, c, d)
        for phi in (0.0, math.pi / 3):
            theta = np.linspace(-HALF_PI, HALF_PI, 500)
            radii = [
                1.0 + d * eval_rho(params, SphericalPoint(t, phi)) for t in theta
            ]
            assert np.all(np.diff(radii) > 0)


def test_ball_distance_bound():
    assert ball_distance_bound(ShapeParams(3, 1.0, 0.3)) == pytest.approx(0.3, abs=0)
    assert ball_distance_bound(ShapeParams(3, 0.5, 0.0)) == 0.0
    rng = np.random.default_rng(8)
    for _ in range(5):
        params = ShapeParams(
            int(rng.integers(2, 8)), float(rng.uniform(0.05, 1.0)), float(rng.uniform(0, 0.9))
        )
        assert ball_distance_bound(params) <= params.d + 1e-15
