"""
Hypergeometric series representation of (alpha, beta)-harmonic functions.

Every (alpha, beta)-harmonic ``w`` on the disk is

    w(z) = sum_{m>=0} c_m F(-alpha, m-beta; m+1; |z|^2) z^m
         + sum_{m>=1} c_{-m} F(-beta, m-alpha; m+1; |z|^2) conj(z)^m

and the Poisson-type integral of ``f`` has

    c_k    = c_{alpha,beta} (alpha+1)_k / k! * fhat(k)
    c_{-k} = c_{alpha,beta} (beta+1)_k / k! * fhat(-k)

with ``fhat(k) = (1/2pi) int f(e^{it}) e^{-ikt} dt``. The sign of the
Fourier index is held in :data:`ORIENTATION` and can be re-derived
against the quadrature solver with :func:`detect_orientation`.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Mapping, Optional

import numpy as np

from .boundary import BoundaryFunction, FourierBoundary
from .dirichlet import extend
from .errors import ParameterError
from .kernel import DiskPoint, ParamPair, PointLike, _result, as_points, c_const
from .numdiff import wirtinger_fd
from .specfun import hyp2f1, pochhammer_ratio

logger = logging.getLogger(__name__)

ORIENTATION = 1


@dataclass(frozen=True)
class CoefficientSeq:
    """Two-sided coefficients ``{c_m : |m| <= M}``; missing entries are zero."""

    M: int
    c: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.M < 0:
            raise ParameterError(f"truncation M = {self.M} must be nonnegative")
        cleaned = {int(m): complex(v) for m, v in self.c.items()}
        outside = [m for m in cleaned if abs(m) > self.M]
        if outside:
            raise ParameterError(f"indices {sorted(outside)} exceed the truncation M = {self.M}")
        object.__setattr__(self, "c", cleaned)

    def __getitem__(self, m: int) -> complex:
        return self.c.get(m, 0j)

    def to_json(self) -> Dict[str, Any]:
        return {
            "M": self.M,
            "coeffs": [{"m": m, "re": v.real, "im": v.imag} for m, v in sorted(self.c.items())],
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "CoefficientSeq":
        try:
            coeffs = {
                int(e["m"]): complex(float(e.get("re", 0.0)), float(e.get("im", 0.0)))
                for e in data.get("coeffs", [])
            }
            M = int(data.get("M", max((abs(m) for m in coeffs), default=0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed coefficient data: {exc}") from None
        return cls(M, coeffs)


def load_coeffs(path: str | Path) -> CoefficientSeq:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParameterError(f"cannot read coefficient file {path}: {exc}") from None
    return CoefficientSeq.from_json(data)


def _series_at(params: ParamPair, coeffs: CoefficientSeq, z: complex) -> complex:
    a, b = params.alpha, params.beta
    x = abs(z) ** 2
    total = 0j
    for m, cm in coeffs.c.items():
        if cm == 0:
            continue
        if m >= 0:
            total += cm * hyp2f1(-a, m - b, m + 1, x) * z ** m
        else:
            n = -m
            total += cm * hyp2f1(-b, n - a, n + 1, x) * z.conjugate() ** n
    return total


def eval_series(params: ParamPair, coeffs: CoefficientSeq, z: PointLike):
    """Evaluate the hypergeometric series at a point or an array of points."""
    zz = as_points(z)
    values = np.array([_series_at(params, coeffs, complex(p)) for p in zz.ravel()], dtype=complex)
    return _result(values.reshape(zz.shape))


def coeffs_from_boundary(
    params: ParamPair,
    f: BoundaryFunction,
    M: Optional[int] = None,
    orientation: int = ORIENTATION,
) -> CoefficientSeq:
    """Series coefficients of the Poisson-type integral of ``f``.

    ``M`` defaults to the degree of ``f`` (``N/2 - 1`` for samples). The
    Fourier coefficients are taken from an FFT on ``4 max(M, 8)`` nodes
    (more if ``f`` needs them), which is exact for trigonometric
    polynomials.
    """
    if orientation not in (1, -1):
        raise ParameterError(f"orientation = {orientation} must be +1 or -1")
    M = f.degree if M is None else int(M)
    if M < 0:
        raise ParameterError(f"M = {M} must be nonnegative")
    n = max(4 * max(M, 8), f.min_nodes)
    spectrum = np.fft.fft(f.on_grid(n)) / n

    def fhat(k: int) -> complex:
        return complex(spectrum[k % n])

    c = c_const(params)
    coeffs = {0: c * fhat(0)}
    for k in range(1, M + 1):
        coeffs[k] = c * pochhammer_ratio(params.alpha + 1, k) * fhat(orientation * k)
        coeffs[-k] = c * pochhammer_ratio(params.beta + 1, k) * fhat(-orientation * k)
    return CoefficientSeq(M, coeffs)


def apply_D(coeffs: CoefficientSeq) -> CoefficientSeq:
    """Coefficients of ``D w = z w_z - conj(z) w_zbar``: ``c_m -> m c_m``
    and ``c_{-m} -> -m c_{-m}``."""
    return CoefficientSeq(coeffs.M, {m: m * v for m, v in coeffs.c.items()})


def detect_orientation(params: Optional[ParamPair] = None) -> int:
    """Fourier index sign that makes the series reproduce the quadrature solver.

    Both signs are tried on ``f = e^{it}`` at a fixed interior point.
    """
    params = params or ParamPair(0.5, 0.25)
    f = FourierBoundary({1: 1.0})
    z = DiskPoint(0.5, 0.7).z
    reference = extend(params, f, z)
    errors = {
        sign: abs(eval_series(params, coeffs_from_boundary(params, f, 1, sign), z) - reference)
        for sign in (1, -1)
    }
    sign = min(errors, key=errors.get)
    logger.debug("orientation errors %s; choosing %+d", errors, sign)
    return sign


def series_residual(
    params: ParamPair, coeffs: CoefficientSeq, z: PointLike, h: float = 1e-4
) -> tuple[complex, complex]:
    """``(Delta_{alpha,beta} w, w)`` for the series ``w`` at ``z``, with
    every derivative taken by central differences of step ``h``."""
    zz = complex(as_points(z))
    fd = wirtinger_fd(lambda pts: eval_series(params, coeffs, pts), zz, h)
    a, b = params.alpha, params.beta
    residual = (
        (1.0 - abs(zz) ** 2) * fd.laplacian / 4.0
        + a * zz * fd.dz
        + b * zz.conjugate() * fd.dzbar
        - a * b * fd.value
    )
    return residual, fd.value
