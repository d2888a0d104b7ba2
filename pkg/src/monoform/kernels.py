"""Kernel backend selection.

The hot paths (quadrature grids, curvature sweeps, equilibrium searches)
evaluate the radial profile and its derivative jet on large arrays.  A
compiled Cython extension (``monoform._speed``) provides these kernels; the
numpy implementation in :mod:`monoform._kernels_np` is the fallback and the
reference.  Selection happens once at import:

* if ``MONOFORM_PURE_PYTHON=1`` is set, the numpy kernels are used;
* otherwise the compiled extension is used when importable.

``python -m monoform.bench`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels_np

try:  # pragma: no cover - depends on build environment
    from . import _speed
except ImportError:  # pragma: no cover
    _speed = None

_FORCE_PURE = os.environ.get("MONOFORM_PURE_PYTHON") == "1"
_ACTIVE = _kernels_np if (_speed is None or _FORCE_PURE) else _speed


def backend_name() -> str:
    """'compiled' when the Cython kernels are active, else 'python'."""
    return "python" if _ACTIVE is _kernels_np else "compiled"


def rho_grid(n: int, c: float, theta, phi) -> np.ndarray:
    """Radial profile on broadcast arrays of (theta, phi)."""
    theta, phi = np.broadcast_arrays(
        np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    if _ACTIVE is _kernels_np:
        return _kernels_np.rho_grid(n, c, theta, phi)
    out = np.empty(theta.size)
    _ACTIVE.rho_flat(
        n, c, np.ascontiguousarray(theta.ravel()), np.ascontiguousarray(phi.ravel()), out
    )
    return out.reshape(theta.shape)


def jet_grid(n: int, c: float, theta, phi):
    """(rho, r_t, r_p, r_tt, r_tp, r_pp) on broadcast arrays of (theta, phi)."""
    theta, phi = np.broadcast_arrays(
        np.asarray(theta, dtype=float), np.asarray(phi, dtype=float)
    )
    if _ACTIVE is _kernels_np:
        return _kernels_np.jet_grid(n, c, theta, phi)
    out = np.empty((6, theta.size))
    _ACTIVE.jet_flat(
        n, c, np.ascontiguousarray(theta.ravel()), np.ascontiguousarray(phi.ravel()), out
    )
    return tuple(out[i].reshape(theta.shape) for i in range(6))
