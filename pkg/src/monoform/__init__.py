"""Nearly spherical convex bodies with a single stable and a single
unstable resting point.

The package evaluates a two-parameter family of star-shaped surfaces with
n-fold dihedral symmetry, computes its moments and curvature, calibrates
the parameters that center the body and keep it convex, locates and
classifies its resting points, and runs the analogous census on convex
polyhedra.  Hot kernels are compiled (Cython) with a numpy fallback chosen
at import; see monoform.kernels and ``python -m monoform.bench``.
"""

from .calibrate import CalibrationResult, ConvexityResult, check_convexity, find_dstar, solve_c
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
from .mass import (
    H_closed_form_c1,
    H_limit_c0,
    H_value,
    MassProperties,
    moment_Mxy,
    star_body_mass,
)
from .params import ShapeParams, SphericalPoint
from .polyhedra import (
    ConvexPolyhedron,
    PolyEquilibrium,
    convex_hull,
    generate_symmetric_mesh,
    mechanical_complexity,
    poly_equilibria,
    poly_mass,
)
from .quadrature import QuadratureSpec, converged_integrate, integrate_sphere
from .radial import SurfaceJet, eval_F, eval_f, eval_g, eval_rho, eval_rho0, jet
from .surface import (
    CurvatureField,
    CurvatureSample,
    EquilibriumCensus,
    EquilibriumPoint,
    ball_distance_bound,
    census,
    curvature_at,
    curvature_field,
    find_equilibria,
    pole_curvature,
    symmetry_deviation,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError",
    "CalibrationResult",
    "ConvergenceError",
    "ConvexPolyhedron",
    "ConvexityResult",
    "CurvatureField",
    "CurvatureSample",
    "DegenerateCensusError",
    "EquilibriumCensus",
    "EquilibriumPoint",
    "EvaluationError",
    "H_closed_form_c1",
    "H_limit_c0",
    "H_value",
    "MassError",
    "MassProperties",
    "MeshError",
    "MeshFormatError",
    "MonoformError",
    "ParameterDomainError",
    "PolyEquilibrium",
    "QuadratureSpec",
    "ShapeParams",
    "SphericalPoint",
    "SurfaceJet",
    "ball_distance_bound",
    "census",
    "check_convexity",
    "convex_hull",
    "converged_integrate",
    "curvature_at",
    "curvature_field",
    "eval_F",
    "eval_f",
    "eval_g",
    "eval_rho",
    "eval_rho0",
    "find_dstar",
    "find_equilibria",
    "generate_symmetric_mesh",
    "integrate_sphere",
    "jet",
    "mechanical_complexity",
    "moment_Mxy",
    "pole_curvature",
    "poly_equilibria",
    "poly_mass",
    "solve_c",
    "star_body_mass",
    "symmetry_deviation",
]
