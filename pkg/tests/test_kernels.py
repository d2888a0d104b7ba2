"""Consistency between the compiled kernels and the numpy fallback."""

import math

import numpy as np
import pytest

from monoform import ShapeParams, SphericalPoint, eval_rho, kernels
from monoform import _kernels_np

compiled = pytest.mark.skipif(
    kernels.backend_name() != "compiled",
    reason="compiled kernels not built in this environment",
)


def _random_points(m=4000, seed=0):
    rng = np.random.default_rng(seed)
    theta = rng.uniform(-math.pi / 2, math.pi / 2, m)
    phi = rng.uniform(0.0, 2 * math.pi, m)
    # Force exact poles into the batch.
    theta[:2] = (math.pi / 2, -math.pi / 2)
    return theta, phi


@compiled
@pytest.mark.parametrize("n,c", [(3, 0.056), (2, 0.9), (7, 0.4), (5, 1.0), (3, 0.999)])
def test_backends_agree_on_jets(n, c):
    theta, phi = _random_points()
    fast = kernels.jet_grid(n, c, theta, phi)
    ref = _kernels_np.jet_grid(n, c, theta, phi)
    for a, b in zip(fast, ref):
        np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-13)


@compiled
@pytest.mark.parametrize("n,c", [(3, 0.056), (4, 0.75), (2, 1.0)])
def test_backends_agree_on_rho(n, c):
    theta, phi = _random_points(seed=5)
    np.testing.assert_allclose(
        kernels.rho_grid(n, c, theta, phi),
        _kernels_np.rho_grid(n, c, theta, phi),
        rtol=1e-13,
        atol=1e-14,
    )


def test_grid_matches_scalar_api():
    theta, phi = _random_points(m=200, seed=9)
    params = ShapeParams(6, 0.31, 0.0)
    grid = kernels.rho_grid(params.n, params.c, theta, phi)
    scalar = np.array(
        [eval_rho(params, SphericalPoint(t, p)) for t, p in zip(theta, phi)]
    )
    np.testing.assert_allclose(grid, scalar, rtol=1e-14, atol=1e-15)


def test_jet_value_channel_matches_rho():
    theta, phi = _random_points(m=1000, seed=2)
    for n, c in ((3, 0.056), (2, 1.0)):
        rho = kernels.rho_grid(n, c, theta, phi)
        jet0 = kernels.jet_grid(n, c, theta, phi)[0]
        np.testing.assert_allclose(jet0, rho, rtol=1e-14, atol=1e-15)


def test_broadcasting_shapes():
    theta = np.linspace(-1.0, 1.0, 7)[:, None]
    phi = np.linspace(0.0, 2 * math.pi, 9)[None, :]
    out = kernels.rho_grid(3, 0.5, theta, phi)
    assert out.shape == (7, 9)
    jets = kernels.jet_grid(3, 0.5, theta, phi)
    assert all(j.shape == (7, 9) for j in jets)
