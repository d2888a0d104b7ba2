"""Parameter records shared across the package."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ParameterDomainError

TWO_PI = 2.0 * math.pi

#: Half-width of the snap window around the poles.  Latitudes closer than
#: this to +-pi/2 are treated as the exact pole.
POLE_EPS = 1e-9

#: Band next to the poles where spherical-coordinate derivatives become
#: ill-conditioned (1/cos(theta) factors); consumers switch to the chart.
NEAR_POLE_BAND = 1e-4


@dataclass(frozen=True)
class ShapeParams:
    """One member of the two-parameter family of star-shaped bodies.

    n is the fold count of the dihedral symmetry (>= 2), c in (0, 1] shapes
    the meridian reparametrization, and d in [0, 1) is the radial amplitude
    of the perturbation away from the unit sphere.
    """

    n: int
    c: float
    d: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 2:
            raise ParameterDomainError(f"fold count n must be an integer >= 2, got {self.n}")
        if not (0.0 < self.c <= 1.0):
            raise ParameterDomainError(f"shape parameter c must be in (0, 1], got {self.c}")
        if not (0.0 <= self.d < 1.0):
            raise ParameterDomainError(f"amplitude d must be in [0, 1), got {self.d}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "c", float(self.c))
        object.__setattr__(self, "d", float(self.d))


@dataclass(frozen=True)
class SphericalPoint:
    """A point on the unit sphere: latitude theta in [-pi/2, pi/2], longitude phi.

    phi is reduced modulo 2*pi on construction.
    """

    theta: float
    phi: float

    def __post_init__(self):
        theta = float(self.theta)
        if not (-math.pi / 2 - 1e-15 <= theta <= math.pi / 2 + 1e-15):
            raise ParameterDomainError(f"theta must lie in [-pi/2, pi/2], got {theta}")
        theta = min(max(theta, -math.pi / 2), math.pi / 2)
        phi = float(self.phi) % TWO_PI
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)

    @property
    def is_pole(self) -> bool:
        return math.pi / 2 - abs(self.theta) < POLE_EPS

    def unit_vector(self):
        import numpy as np

        ct = math.cos(self.theta)
        return np.array(
            [ct * math.cos(self.phi), ct * math.sin(self.phi), math.sin(self.theta)]
        )
