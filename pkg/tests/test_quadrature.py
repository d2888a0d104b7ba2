import math

import numpy as np
import pytest

from monoform import (
    ConvergenceError,
    EvaluationError,
    ParameterDomainError,
    QuadratureSpec,
    converged_integrate,
    integrate_sphere,
)

TWO_PI_SQ = 2.0 * math.pi**2


def test_constant_integrand_gl_theta():
    spec = QuadratureSpec(64, 64, rule="gl-theta")
    assert integrate_sphere(spec, lambda t, p: np.ones_like(t * p)) == pytest.approx(
        TWO_PI_SQ, rel=1e-14
    )


def test_cos_theta_is_sphere_area():
    for rule in ("gl-sin", "gl-theta"):
        spec = QuadratureSpec(64, 64, rule=rule)
        value = integrate_sphere(spec, lambda t, p: np.cos(t) * np.ones_like(p))
        assert value == pytest.approx(4.0 * math.pi, rel=1e-13)


def test_sin2_cos_closed_form():
    spec = QuadratureSpec(16, 16)
    value = integrate_sphere(spec, lambda t, p: np.sin(t) ** 2 * np.cos(t) * np.ones_like(p))
    assert value == pytest.approx(4.0 * math.pi / 3.0, rel=1e-14)


@pytest.mark.parametrize("k", [0, 1, 2, 3, 5, 8, 15])
def test_gl_sin_monomial_exactness(k):
    # With m nodes the sin-substituted rule is exact for sin^k * cos with
    # k <= 2m - 1; use the closed form of the integral as the oracle.
    m = 8
    spec = QuadratureSpec(max(m, 8), 8)
    exact_1d = 0.0 if k % 2 else 2.0 / (k + 1)
    value = integrate_sphere(
        spec, lambda t, p: np.sin(t) ** k * np.cos(t) * np.ones_like(p)
    )
    assert value == pytest.approx(2.0 * math.pi * exact_1d, abs=1e-13)


@pytest.mark.parametrize("freq", [1, 3, 7, 31])
def test_phi_trig_exactness(freq):
    # The periodic trapezoid rule integrates e^{i k phi} exactly for |k| < n_phi.
    spec = QuadratureSpec(8, 32)
    for fn in (np.sin, np.cos):
        value = integrate_sphere(
            spec, lambda t, p, fn=fn: np.cos(t) * fn(freq * p)
        )
        assert value == pytest.approx(0.0, abs=1e-13)
    value = integrate_sphere(spec, lambda t, p: np.cos(t) * np.cos(freq * p) ** 2)
    assert value == pytest.approx(2.0 * math.pi, rel=1e-13)


def test_converged_integrate_constant():
    spec = QuadratureSpec(8, 8, rule="gl-theta")
    value, estimate = converged_integrate(spec, lambda t, p: np.ones_like(t * p), 1e-12)
    assert value == pytest.approx(TWO_PI_SQ, rel=1e-12)
    assert estimate <= 1e-12 * abs(value)


def test_converged_integrate_polynomial_profile():
    spec = QuadratureSpec(8, 8)
    value, _ = converged_integrate(
        spec, lambda t, p: np.sin(t) ** 2 * np.cos(t) * np.ones_like(p), 1e-12
    )
    assert value == pytest.approx(4.0 * math.pi / 3.0, rel=1e-12)


def test_converged_result_stable_under_doubling():
    spec = QuadratureSpec(16, 16)
    integrand = lambda t, p: np.cos(t) ** 3 * (1.0 + 0.1 * np.cos(3 * p))
    value, estimate = converged_integrate(spec, integrand, 1e-10)
    refined = integrate_sphere(QuadratureSpec(spec.n_theta * 4, spec.n_phi * 4), integrand)
    assert abs(refined - value) <= max(estimate, 1e-10 * abs(value))


def test_converged_integrate_budget_error():
    # A step integrand converges only algebraically; 1e-14 must trip the cap.
    spec = QuadratureSpec(8, 8)
    with pytest.raises(ConvergenceError) as err:
        converged_integrate(
            spec, lambda t, p: np.where(t > 0.3, 1.0, 0.0) * np.ones_like(p), 1e-14
        )
    assert "n_theta" in err.value.diagnostics


def test_non_finite_integrand_reports_node():
    spec = QuadratureSpec(8, 8)

    def bad(t, p):
        vals = np.cos(t) * np.ones_like(p)
        vals[0, 0] = np.nan
        return vals

    with pytest.raises(EvaluationError) as err:
        integrate_sphere(spec, bad)
    assert -math.pi / 2 < err.value.theta < math.pi / 2
    assert 0.0 <= err.value.phi < 2 * math.pi


def test_spec_validation():
    with pytest.raises(ParameterDomainError):
        QuadratureSpec(4, 64)
    with pytest.raises(ParameterDomainError):
        QuadratureSpec(64, 64, rule="simpson")


def test_threaded_evaluation_is_bit_identical(monkeypatch):
    spec = QuadratureSpec(64, 64)
    integrand = lambda t, p: np.cos(t) ** 2 * (1.0 + np.sin(2 * p) ** 2)
    serial = integrate_sphere(spec, integrand)
    monkeypatch.setenv("MONOFORM_THREADS", "4")
    threaded = integrate_sphere(spec, integrand)
    assert serial == threaded
