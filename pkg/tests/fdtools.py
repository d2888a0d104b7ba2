"""Finite-difference stencils used as independent oracles in the tests."""

from __future__ import annotations

import numpy as np

# 5-point central stencils, O(h^4).
_W1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_W2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0
_OFFS = np.array([-2, -1, 0, 1, 2], dtype=float)


def fd1(f, x: float, h: float) -> float:
    vals = np.array([f(x + o * h) for o in _OFFS])
    return float(_W1 @ vals) / h


def fd2(f, x: float, h: float) -> float:
    vals = np.array([f(x + o * h) for o in _OFFS])
    return float(_W2 @ vals) / (h * h)


def fd_mixed(f, x: float, y: float, h: float) -> float:
    """d^2 f / dx dy via nested 5-point first derivatives."""
    inner = [fd1(lambda yy, xo=xo: f(x + xo * h, yy), y, h) for xo in _OFFS]
    return float(_W1 @ np.array(inner)) / h


def one_sided_second(f, x0: float, h: float) -> float:
    """4-point one-sided second derivative at x0 stepping by +h (O(h^2))."""
    v = np.array([f(x0), f(x0 + h), f(x0 + 2 * h), f(x0 + 3 * h)])
    return float((2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / (h * h))
