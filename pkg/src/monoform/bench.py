"""Benchmark of the compiled kernels against the numpy fallback.

Run as ``python -m monoform.bench``.  Times the radial-profile and jet
kernels on quadrature-sized grids plus the two dominant consumers (moment
quadrature and a curvature sweep), once per available backend.
"""

from __future__ import annotations

import time

import numpy as np

from . import _kernels_np, kernels
from .mass import H_value
from .params import ShapeParams
from .quadrature import QuadratureSpec
from .surface import principal_curvature_arrays


def _time(fn, repeat: int = 5) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run(sizes=((128, 256), (256, 512), (512, 1024))) -> list[dict]:
    params = ShapeParams(n=3, c=0.056, d=0.001)
    rows = []
    backends = [("python", _kernels_np)]
    if kernels.backend_name() == "compiled":
        backends.append(("compiled", None))  # dispatch through kernels module

    for nt, nphi in sizes:
        theta = np.linspace(-np.pi / 2 + 1e-3, np.pi / 2 - 1e-3, nt)
        phi = np.linspace(0.0, 2 * np.pi, nphi, endpoint=False)
        TH, PH = np.meshgrid(theta, phi, indexing="ij")
        for name, module in backends:
            if module is not None:
                rho_fn = lambda: module.rho_grid(3, 0.056, TH, PH)
                jet_fn = lambda: module.jet_grid(3, 0.056, TH, PH)
            else:
                rho_fn = lambda: kernels.rho_grid(3, 0.056, TH, PH)
                jet_fn = lambda: kernels.jet_grid(3, 0.056, TH, PH)
            rows.append(
                {
                    "backend": name,
                    "grid": f"{nt}x{nphi}",
                    "rho_ms": 1e3 * _time(rho_fn),
                    "jet_ms": 1e3 * _time(jet_fn),
                }
            )

    # End-to-end consumers at the default resolution, active backend only.
    spec = QuadratureSpec()
    rows.append(
        {
            "backend": kernels.backend_name(),
            "grid": "H_value 128x256",
            "rho_ms": 1e3 * _time(lambda: H_value(params, spec)),
            "jet_ms": 1e3
            * _time(
                lambda: principal_curvature_arrays(
                    params,
                    *np.meshgrid(
                        np.linspace(-1.5, 1.5, 128),
                        np.linspace(0.0, 2 * np.pi, 256, endpoint=False),
                        indexing="ij",
                    ),
                )
            ),
        }
    )
    return rows


def main() -> None:
    print(f"active backend: {kernels.backend_name()}")
    rows = run()
    header = f"{'backend':<10} {'grid':<16} {'rho [ms]':>10} {'jet [ms]':>10}"
    print(header)
    print("-" * len(header))
    for row in rows:
        print(
            f"{row['backend']:<10} {row['grid']:<16} "
            f"{row['rho_ms']:>10.3f} {row['jet_ms']:>10.3f}"
        )


if __name__ == "__main__":
    main()
