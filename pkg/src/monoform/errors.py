"""Exception hierarchy. CLI exit codes are derived from these types."""

from __future__ import annotations


class MonoformError(Exception):
    """Base class for all package errors."""


class ParameterDomainError(MonoformError, ValueError):
    """An argument violates its documented domain."""


class EvaluationError(MonoformError):
    """An integrand produced a non-finite value; carries the node location."""

    def __init__(self, message: str, theta: float, phi: float):
        super().__init__(message)
        self.theta = theta
        self.phi = phi


class ConvergenceError(MonoformError):
    """An iteration failed to converge within its budget."""

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class BracketError(MonoformError):
    """A root bracket does not have the required sign structure."""


class MeshError(MonoformError):
    """A polyhedron is structurally invalid (open, non-manifold, degenerate)."""


class MeshFormatError(MonoformError):
    """A mesh file could not be parsed."""


class MassError(MonoformError):
    """Mass-property integration over an inconsistently oriented surface."""


class DegenerateCensusError(MonoformError):
    """An equilibrium census with degenerate flags was used where a clean one is required."""
