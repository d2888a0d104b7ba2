"""Command-line front end.

Subcommands: eval, calibrate, dstar, analyze, mesh, census, sweep.  Every
command prints JSON (or CSV for sweep) with floats at 17 significant digits
and a fixed field order, so identical inputs give byte-identical output.

Exit codes: 0 success, 2 domain error, 3 numerical failure, 4 I/O error,
5 malformed mesh input.  A flat key=value config file can supply defaults;
explicit flags override it.  MONOFORM_THREADS optionally caps the worker
count used by the quadrature grids.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .calibrate import find_dstar, solve_c
from .errors import (
    BracketError,
    ConvergenceError,
    DegenerateCensusError,
    EvaluationError,
    MassError,
    MeshError,
    MeshFormatError,
    MonoformError,
    ParameterDomainError,
)
from .mass import H_value, moment_Mxy, star_body_mass
from .meshio import detect_format, read_obj, read_stl, write_obj, write_stl
from .params import ShapeParams, SphericalPoint
from .polyhedra import convex_hull, generate_symmetric_mesh, mechanical_complexity, poly_equilibria, poly_mass
from .radial import jet as surface_jet
from .surface import (
    ball_distance_bound,
    census,
    curvature_at,
    curvature_field,
    find_equilibria,
    pole_curvature,
    symmetry_deviation,
)

SCHEMA_VERSION = 1


# ---------------------------------------------------------------------------
# Deterministic rendering


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return '"nan"'
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    return f"{x:.17g}"


def render_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f'{pad}  "{key}": {render_json(val, indent + 1)}'
            for key, val in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in seq)
        if flat:
            return "[" + ", ".join(render_json(v) for v in seq) + "]"
        items = [f"{pad}  {render_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if obj is None:
        return "null"
    if isinstance(obj, str):
        return f'"{obj}"'
    return _fmt(obj)


def _emit(doc: dict) -> None:
    sys.stdout.write(render_json(doc) + "\n")


# ---------------------------------------------------------------------------
# Config file and argument merging


def _read_config(path) -> dict[str, str]:
    out: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            body = line.split("#", 1)[0].strip()
            if not body:
                continue
            if "=" not in body:
                raise ParameterDomainError(f"{path}:{lineno}: expected key=value")
            key, value = body.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out


class Settings:
    """Flag values with config-file fallback and typed defaults."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.config = _read_config(args.config) if args.config else {}

    def get(self, name: str, default, cast):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name in self.config:
            return cast(self.config[name])
        if default is None:
            raise ParameterDomainError(f"missing required option --{name.replace('_', '-')}")
        return default

    def get_optional(self, name: str, cast):
        value = getattr(self.args, name, None)
        if value is not None:
            return value
        if name in self.config:
            return cast(self.config[name])
        return None


def _grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except ValueError as exc:
        raise ParameterDomainError(f"grid must look like 128x256, got {text!r}") from exc


def _value_range(text: str, cast):
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ParameterDomainError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ParameterDomainError("range step must be positive")
        values = np.arange(start, stop + 0.5 * step, step)
        return [cast(v) for v in values]
    return [cast(float(text))]


# ---------------------------------------------------------------------------
# Commands


def _cmd_eval(s: Settings) -> None:
    params = ShapeParams(s.get("n", None, int), s.get("c", None, float), s.get("d", None, float))
    point = SphericalPoint(s.get("theta", None, float), s.get("phi", 0.0, float))
    jet = surface_jet(params, point)
    curv = curvature_at(params, point)
    chart = None
    if jet.pole_chart_second is not None:
        chart = [list(row) for row in jet.pole_chart_second]
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "eval",
            "params": {"n": params.n, "c": params.c, "d": params.d},
            "point": {"theta": point.theta, "phi": point.phi},
            "rho": jet.rho,
            "R": jet.R,
            "jet": {
                "rho_theta": jet.rho_theta,
                "rho_phi": jet.rho_phi,
                "rho_tt": jet.rho_tt,
                "rho_tp": jet.rho_tp,
                "rho_pp": jet.rho_pp,
            },
            "is_pole": jet.is_pole,
            "near_pole_band": jet.near_pole_band,
            "pole_chart_second": chart,
            "curvature": {
                "kappa1": curv.kappa1,
                "kappa2": curv.kappa2,
                "gaussian": curv.gaussian,
                "mean": curv.mean,
            },
        }
    )


def _cmd_calibrate(s: Settings) -> None:
    raw_bracket = s.get("bracket", "0.01:0.99", str)
    try:
        lo, hi = (float(part) for part in raw_bracket.split(":"))
    except ValueError as exc:
        raise ParameterDomainError(f"bracket must be lo:hi, got {raw_bracket!r}") from exc
    result = solve_c(
        s.get("n", None, int),
        s.get("d", None, float),
        tol=s.get("tol", 1e-10, float),
        bracket=(lo, hi),
    )
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "calibrate",
            "n": result.n,
            "d": result.d,
            "c_star": result.c_star,
            "residual": result.residual,
            "bracket": list(result.bracket),
            "iterations": result.iterations,
        }
    )


def _cmd_dstar(s: Settings) -> None:
    result = find_dstar(
        s.get("n", None, int),
        tol_d=s.get("tol_d", 5e-5, float),
        fixed_c=s.get_optional("fixed_c", float),
        grid=_grid(s.get("grid", "128x256", str)),
    )
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "dstar",
            "n": result.n,
            "d_star": result.d_star,
            "min_gaussian": result.min_gaussian,
            "grid": list(result.grid),
            "certificate_points": [
                {"theta": q.theta, "phi": q.phi} for q in result.certificate_points
            ],
            "fixed_c": result.fixed_c,
            "saturated": result.saturated,
        }
    )


def _cmd_analyze(s: Settings) -> None:
    params = ShapeParams(s.get("n", None, int), s.get("c", None, float), s.get("d", None, float))
    grid = _grid(s.get("grid", "128x256", str))
    seeds = _grid(s.get("seeds", "64x128", str))
    mass = star_body_mass(params)
    where = s.get("reference", "centroid", str)
    if where == "centroid":
        reference = mass.centroid
    elif where == "origin":
        reference = np.zeros(3)
    else:
        raise ParameterDomainError(f"reference must be centroid or origin, got {where!r}")
    field = curvature_field(params, grid)
    points = find_equilibria(params, reference, seeds_grid=seeds)
    cens = census(points)
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "analyze",
            "params": {"n": params.n, "c": params.c, "d": params.d},
            "mass": {
                "volume": mass.volume,
                "centroid": list(mass.centroid),
                "M_xy": mass.M_xy,
                "H": mass.H,
            },
            "curvature": {
                "min_principal": field.min_principal,
                "max_principal": field.max_principal,
                "min_gaussian": field.min_gaussian,
                "max_gaussian": field.max_gaussian,
                "argmin_principal": {
                    "theta": field.argmin_principal.theta,
                    "phi": field.argmin_principal.phi,
                },
                "pole_kappa_north": pole_curvature(params, True),
                "pole_kappa_south": pole_curvature(params, False),
            },
            "equilibria": [
                {
                    "theta": p.point.theta,
                    "phi": p.point.phi,
                    "kind": p.kind,
                    "hessian_eigenvalues": list(p.hessian_eigenvalues),
                    "residual": p.residual,
                    "degenerate": p.degenerate,
                }
                for p in points
            ],
            "reference": list(map(float, reference)),
            "census": {
                "S": cens.S,
                "H": cens.H_saddle,
                "U": cens.U,
                "euler_check": cens.euler_check,
                "valid": cens.valid,
                "degenerate_count": cens.degenerate_count,
            },
            "symmetry_deviation": symmetry_deviation(params),
            "ball_distance_bound": ball_distance_bound(params),
        }
    )


def _cmd_mesh(s: Settings) -> None:
    params = ShapeParams(s.get("n", None, int), s.get("c", None, float), s.get("d", None, float))
    out = s.get("out", None, str)
    fmt = s.get("format", "obj" if str(out).lower().endswith(".obj") else "", str)
    if fmt == "":
        fmt = "stl" if str(out).lower().endswith(".stl") else "obj"
    if fmt not in ("obj", "stl"):
        raise ParameterDomainError(f"format must be obj or stl, got {fmt!r}")
    poly = generate_symmetric_mesh(
        params, s.get("m_theta", 32, int), s.get("m_phi", 6 * params.n, int)
    )
    if fmt == "obj":
        write_obj(out, poly.vertices, poly.faces)
    else:
        write_stl(out, poly.vertices, poly.faces)
    V, E, F = poly.counts
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "mesh",
            "params": {"n": params.n, "c": params.c, "d": params.d},
            "out": str(out),
            "format": fmt,
            "counts": {"V": V, "E": E, "F": F},
        }
    )


def _cmd_census(s: Settings) -> None:
    source = s.args.mesh_in
    fmt = detect_format(source)
    vertices, _ = read_obj(source) if fmt == "obj" else read_stl(source)
    # The census needs exact hull combinatorics; rebuild them from the
    # vertex set (file face lists may be triangulated or unordered).
    try:
        poly = convex_hull(vertices)
    except MeshError as exc:
        raise MeshFormatError(f"{source}: {exc}") from exc
    mass = poly_mass(poly)
    found, cens = poly_equilibria(poly, mass.centroid)
    complexity = None
    if cens.degenerate_count == 0:
        complexity = mechanical_complexity(poly, cens)
    V, E, F = poly.counts
    _emit(
        {
            "schema_version": SCHEMA_VERSION,
            "command": "census",
            "source": str(source),
            "format": fmt,
            "counts": {"V": V, "E": E, "F": F},
            "mass": {"volume": mass.volume, "centroid": list(mass.centroid)},
            "census": {
                "S": cens.S,
                "H": cens.H_saddle,
                "U": cens.U,
                "euler_check": cens.euler_check,
                "valid": cens.valid,
                "degenerate_count": cens.degenerate_count,
            },
            "mechanical_complexity": complexity,
        }
    )


def _cmd_sweep(s: Settings) -> None:
    ns = _value_range(s.get("n", None, str), int)
    cs = _value_range(s.get("c", None, str), float)
    ds = _value_range(s.get("d", None, str), float)
    out = getattr(s.args, "out", None)
    sink = open(out, "w", encoding="ascii") if out else sys.stdout
    try:
        sink.write("n,c,d,H,M_xy\n")
        for n in ns:
            for c in cs:
                for d in ds:
                    params = ShapeParams(n, c, d)
                    h = H_value(params)
                    m = moment_Mxy(params)
                    sink.write(f"{n},{c:.17g},{d:.17g},{h:.17g},{m:.17g}\n")
    finally:
        if out:
            sink.close()


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monoform",
        description="Construction, calibration, and equilibrium analysis of "
        "nearly spherical bodies with one stable and one unstable resting point.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key=value file with defaults")
        return p

    p = add("eval", "radial profile, jet, and curvature at one point")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)

    p = add("calibrate", "solve H(c, d) = 0 for the centered body")
    p.add_argument("--n", type=int)
    p.add_argument("--d", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--bracket", help="search interval for c as lo:hi")

    p = add("dstar", "bisect the convexity threshold amplitude")
    p.add_argument("--n", type=int)
    p.add_argument("--tol-d", dest="tol_d", type=float)
    p.add_argument("--fixed-c", dest="fixed_c", type=float)
    p.add_argument("--grid")

    p = add("analyze", "full report: mass, curvature, census, symmetry, ball bound")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--grid")
    p.add_argument("--seeds")
    p.add_argument("--reference", choices=("centroid", "origin"))

    p = add("mesh", "export a dihedrally symmetric hull mesh (OBJ or binary STL)")
    p.add_argument("--n", type=int)
    p.add_argument("--c", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--m-theta", dest="m_theta", type=int)
    p.add_argument("--m-phi", dest="m_phi", type=int)
    p.add_argument("--out")
    p.add_argument("--format", choices=("obj", "stl"))

    p = add("census", "equilibrium census of a mesh file")
    p.add_argument("mesh_in")

    p = add("sweep", "CSV of H and M_xy over parameter ranges")
    p.add_argument("--n")
    p.add_argument("--c")
    p.add_argument("--d")
    p.add_argument("--out")

    return parser


_DISPATCH = {
    "eval": _cmd_eval,
    "calibrate": _cmd_calibrate,
    "dstar": _cmd_dstar,
    "analyze": _cmd_analyze,
    "mesh": _cmd_mesh,
    "census": _cmd_census,
    "sweep": _cmd_sweep,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        _DISPATCH[args.command](Settings(args))
    except ParameterDomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MeshFormatError as exc:
        print(f"malformed mesh: {exc}", file=sys.stderr)
        return 5
    except (BracketError, ConvergenceError, EvaluationError, MassError, MeshError, DegenerateCensusError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4
    except MonoformError as exc:  # safety net for future error types
        print(f"error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
