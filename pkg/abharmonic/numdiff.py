"""
Central finite differences in the complex plane.

Used as an independent check of the closed-form and under-the-integral
derivatives, and for the discrete Laplacian of the operator residual.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

ComplexFunc = Callable[[np.ndarray], np.ndarray]


class WirtingerDiff(NamedTuple):
    value: complex
    dz: complex
    dzbar: complex
    laplacian: complex


def wirtinger_fd(func: ComplexFunc, z: complex, h: float = 1e-5) -> WirtingerDiff:
    """Finite-difference value, ``d/dz``, ``d/dzbar`` and ``Laplacian`` of ``func`` at ``z``.

    ``func`` must accept an array of points. The five stencil points
    ``z, z +- h, z +- ih`` are evaluated in a single call.

    ``d/dz = (f_x - i f_y) / 2`` and ``d/dzbar = (f_x + i f_y) / 2`` with
    second-order central differences for ``f_x`` and ``f_y``; the
    Laplacian is the 5-point stencil, so ``w_{z zbar} = laplacian / 4``.
    """
    z = complex(z)
    stencil = np.array([z, z + h, z - h, z + 1j * h, z - 1j * h])
    f0, fxp, fxm, fyp, fym = np.asarray(func(stencil), dtype=complex)
    fx = (fxp - fxm) / (2.0 * h)
    fy = (fyp - fym) / (2.0 * h)
    laplacian = (fxp + fxm + fyp + fym - 4.0 * f0) / h ** 2
    return WirtingerDiff(
        complex(f0),
        complex(0.5 * (fx - 1j * fy)),
        complex(0.5 * (fx + 1j * fy)),
        complex(laplacian),
    )


def derivative_fd(func: Callable[[float], complex], x: float, h: float = 1e-6) -> complex:
    """Central difference of a function of one real variable."""
    return (func(x + h) - func(x - h)) / (2.0 * h)
