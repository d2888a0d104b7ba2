"""Parameter calibration: centering the body and locating the convexity edge.

solve_c finds, at fixed amplitude d, the shape parameter c at which the
normalized equatorial moment H(c, d) vanishes, which places the center of
mass at the origin.  check_convexity certifies positive principal curvature
on a sweep grid, and find_dstar bisects the amplitude for the largest d
that still passes, either with the calibrated c(d) (the operational
reading) or with c frozen at a reference shape value.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BracketError, ParameterDomainError
from .mass import DEFAULT_SPEC, H_value
from .params import ShapeParams, SphericalPoint
from .quadrature import QuadratureSpec
from .surface import curvature_field


@dataclass(frozen=True)
class CalibrationResult:
    """Root of H(., d) with its bracket and residual."""

    n: int
    d: float
    c_star: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


@dataclass(frozen=True)
class ConvexityResult:
    """Largest amplitude passing the curvature-positivity certificate."""

    n: int
    d_star: float
    min_gaussian: float
    grid: tuple[int, int]
    certificate_points: tuple[SphericalPoint, ...]
    fixed_c: float | None
    saturated: bool


def solve_c(
    n: int,
    d: float,
    tol: float = 1e-10,
    spec: QuadratureSpec = DEFAULT_SPEC,
    bracket: tuple[float, float] = (0.01, 0.99),
    max_iter: int = 60,
) -> CalibrationResult:
    """Bisection (with a secant polish) for the centered shape parameter.

    The sign structure H(c_lo, d) < 0 < H(c_hi, d) is verified up front;
    its absence means d is outside the centering regime and raises
    BracketError.
    """
    if tol <= 0.0:
        raise ParameterDomainError("tol must be positive")
    if not (0.0 <= d < 1.0):
        raise ParameterDomainError(f"d must be in [0, 1), got {d}")
    c_lo, c_hi = bracket
    if not (0.0 < c_lo < c_hi <= 1.0):
        raise ParameterDomainError(f"bracket must satisfy 0 < lo < hi <= 1, got {bracket}")

    def h_at(c: float) -> float:
        return H_value(ShapeParams(n, c, d), spec)

    f_lo, f_hi = h_at(c_lo), h_at(c_hi)
    if not (f_lo < 0.0 < f_hi):
        raise BracketError(
            f"H does not change sign on [{c_lo}, {c_hi}] at d={d}: "
            f"H(lo)={f_lo:.6g}, H(hi)={f_hi:.6g}"
        )

    iterations = 0
    c_mid, f_mid = c_lo, f_lo
    for _ in range(max_iter):
        iterations += 1
        c_mid = 0.5 * (c_lo + c_hi)
        f_mid = h_at(c_mid)
        if abs(f_mid) < tol:
            break
        if f_mid < 0.0:
            c_lo, f_lo = c_mid, f_mid
        else:
            c_hi, f_hi = c_mid, f_mid

    c_star, residual = c_mid, abs(f_mid)
    # Secant polish inside the final bracket.
    for _ in range(4):
        if residual < tol:
            break
        denom = f_hi - f_lo
        if denom == 0.0:
            break
        c_sec = c_hi - f_hi * (c_hi - c_lo) / denom
        if not (c_lo < c_sec < c_hi):
            break
        f_sec = h_at(c_sec)
        iterations += 1
        if abs(f_sec) < residual:
            c_star, residual = c_sec, abs(f_sec)
        if f_sec < 0.0:
            c_lo, f_lo = c_sec, f_sec
        else:
            c_hi, f_hi = c_sec, f_sec

    return CalibrationResult(
        n=n,
        d=d,
        c_star=float(c_star),
        residual=float(residual),
        bracket=(float(c_lo), float(c_hi)),
        iterations=iterations,
    )


def check_convexity(params: ShapeParams, grid_resolution: tuple[int, int] = (128, 256)):
    """(is_convex, min_gaussian, worst_point) from a refined curvature sweep.

    Convexity is certified by a strictly positive minimum principal
    curvature over the sweep grid, both poles, and the local refinement
    around the minimum.
    """
    field = curvature_field(params, grid_resolution)
    return field.min_principal > 0.0, field.min_gaussian, field.argmin_principal


def find_dstar(
    n: int,
    tol_d: float = 5e-5,
    fixed_c: float | None = None,
    grid: tuple[int, int] = (128, 256),
    d_range: tuple[float, float] = (1e-6, 0.1),
    solve_tol: float = 1e-9,
) -> ConvexityResult:
    """Bisect the amplitude for the convexity threshold d*.

    With fixed_c=None each probe first recalibrates c = solve_c(n, d); with
    a frozen fixed_c the probe uses that c directly.  Returns the largest
    accepted d; if the predicate still holds at the top of the range the
    result carries saturated=True.
    """
    if tol_d <= 0.0:
        raise ParameterDomainError("tol_d must be positive")
    d_lo, d_hi = d_range

    def probe(d: float):
        c = fixed_c if fixed_c is not None else solve_c(n, d, tol=solve_tol).c_star
        return check_convexity(ShapeParams(n, c, d), grid)

    ok_lo, gauss_lo, worst_lo = probe(d_lo)
    if not ok_lo:
        raise BracketError(
            f"body is not convex even at the bottom of the amplitude range d={d_lo}"
        )
    ok_hi, gauss_hi, worst_hi = probe(d_hi)
    if ok_hi:
        return ConvexityResult(
            n=n,
            d_star=d_hi,
            min_gaussian=gauss_hi,
            grid=grid,
            certificate_points=(worst_hi,),
            fixed_c=fixed_c,
            saturated=True,
        )

    while d_hi - d_lo > tol_d:
        d_mid = 0.5 * (d_lo + d_hi)
        ok, gauss, worst = probe(d_mid)
        if ok:
            d_lo, gauss_lo, worst_lo = d_mid, gauss, worst
        else:
            d_hi, worst_hi = d_mid, worst

    return ConvexityResult(
        n=n,
        d_star=d_lo,
        min_gaussian=gauss_lo,
        grid=grid,
        certificate_points=(worst_lo, worst_hi),
        fixed_c=fixed_c,
        saturated=False,
    )
