"""
Dirichlet problem for the (alpha, beta)-Laplacian.

The solution with boundary data ``f`` is the Poisson-type integral

    w(z) = (1/2pi) int_0^{2pi} K_{alpha,beta}(z e^{-it}) f(e^{it}) dt

which is evaluated with the periodic trapezoidal rule. The integrand is
smooth and periodic, so the rule converges geometrically; the kernel
has a peak of width ``~ 1 - |z|`` and the node count grows like
``64 / (1 - |z|)`` above a floor of 512 nodes (see
:class:`~abharmonic.config.QuadratureConfig`).

Derivatives ``d^k dbar^l w`` are obtained by differentiating under the
integral sign; ``d/dz`` of ``K(z e^{-it})`` brings out a factor
``e^{-it}`` and ``d/dzbar`` a factor ``e^{it}``.

Evaluating a whole circle ``|z| = r`` is a circular convolution of the
kernel samples with the boundary samples and is done with the FFT
(:func:`extend_circle`); integral means and grids go through it.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from .boundary import BoundaryFunction, lp_mean, uniform_angles
from .bounds import theorem31_rhs
from .config import QuadratureConfig, get_config, next_power_of_two
from .errors import ParameterError
from .kernel import (
    ParamPair,
    PointLike,
    _check_order,
    _result,
    as_points,
    c_const,
    u_derivative_array,
)
from .numdiff import wirtinger_fd

logger = logging.getLogger(__name__)

# kernel evaluations per vectorised block
_CHUNK_ELEMENTS = 1 << 20
MEAN_TOLERANCE = 1e-8


@dataclass(frozen=True)
class EvalGrid:
    """Polar evaluation grid: ``radii`` times ``n_theta`` uniform angles."""

    radii: Tuple[float, ...]
    n_theta: int

    def __post_init__(self) -> None:
        radii = tuple(float(r) for r in self.radii)
        object.__setattr__(self, "radii", radii)
        if not radii:
            raise ParameterError("grid needs at least one radius")
        if any(r < 0.0 or r >= 1.0 for r in radii):
            raise ParameterError("grid radii must lie in [0, 1)")
        if any(b <= a for a, b in zip(radii, radii[1:])):
            raise ParameterError("grid radii must be strictly increasing")
        if int(self.n_theta) <= 0:
            raise ParameterError(f"n_theta = {self.n_theta} must be positive")
        object.__setattr__(self, "n_theta", int(self.n_theta))

    @classmethod
    def from_string(cls, spec: str) -> "EvalGrid":
        """Parse ``"r0:r1:nr,ntheta"``."""
        try:
            span, n_theta = spec.split(",")
            r0, r1, nr = span.split(":")
            radii = np.linspace(float(r0), float(r1), int(nr))
            return cls(tuple(radii), int(n_theta))
        except ValueError as exc:
            if isinstance(exc, ParameterError):
                raise
            raise ParameterError(
                f"grid {spec!r} must look like r0:r1:nr,ntheta"
            ) from None

    @property
    def angles(self) -> np.ndarray:
        return uniform_angles(self.n_theta)

    def points(self) -> np.ndarray:
        """All grid points, row-major over radius then angle."""
        return (np.asarray(self.radii)[:, None] * np.exp(1j * self.angles)[None, :]).ravel()


@dataclass(frozen=True)
class IntegralMeanReport:
    r: float
    p: float
    value: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.value

    @property
    def passed(self) -> bool:
        return self.value <= self.bound * (1.0 + MEAN_TOLERANCE)


def quadrature_nodes(
    r: float, f: Optional[BoundaryFunction] = None, config: Optional[QuadratureConfig] = None
) -> int:
    """Trapezoid node count for evaluation radius ``r``.

    Raises
    ------
    ParameterError
        If ``r`` exceeds the configured radius cap.
    """
    config = config or get_config()
    if r > config.max_radius:
        raise ParameterError(
            f"radius r = {r} is too close to the boundary (max {config.max_radius})"
        )
    n = max(config.node_floor, next_power_of_two(64.0 / (1.0 - r)))
    if f is not None:
        n = max(n, f.min_nodes)
    return n


def _transform(
    params: ParamPair, f: BoundaryFunction, z: np.ndarray, k: int, l: int, nodes: int
) -> np.ndarray:
    """``d^k dbar^l w`` at the flat point array ``z`` with ``nodes`` trapezoid nodes."""
    t = uniform_angles(nodes)
    fvals = f.on_grid(nodes)
    rotation = np.exp(-1j * t)
    chain = np.exp(1j * (l - k) * t)
    c = c_const(params)
    out = np.empty(z.size, dtype=complex)
    step = max(1, _CHUNK_ELEMENTS // nodes)
    for start in range(0, z.size, step):
        zeta = z[start:start + step, None] * rotation[None, :]
        kern = c * u_derivative_array(params, zeta, k, l) * chain[None, :]
        out[start:start + step] = kern @ fvals / nodes
    return out


def extend_points(
    params: ParamPair,
    f: BoundaryFunction,
    z: PointLike,
    k: int = 0,
    l: int = 0,
    nodes: Optional[int] = None,
):
    """``d^k dbar^l w`` at one point or an array of points.

    Parameters
    ----------
    params : ParamPair
    f : BoundaryFunction
    z : DiskPoint, complex or array of complex
    k, l : int
        Derivative orders, ``k + l <= 4``.
    nodes : int, optional
        Override the trapezoid node count (default chosen from the
        largest ``|z|``).

    Returns
    -------
    complex or numpy.ndarray
        Same shape as ``z``.
    """
    _check_order(k, l)
    zz = as_points(z)
    flat = zz.ravel()
    r_max = float(np.max(np.abs(flat))) if flat.size else 0.0
    default_nodes = quadrature_nodes(r_max, f)
    if nodes is None:
        nodes = default_nodes
    elif nodes <= 2 * f.degree:
        raise ParameterError(f"{nodes} nodes cannot resolve degree {f.degree}")
    logger.debug("trapezoid with %d nodes for %d points", nodes, flat.size)
    values = _transform(params, f, flat, k, l, nodes).reshape(zz.shape)
    return _result(values)


def extend(params: ParamPair, f: BoundaryFunction, z: PointLike):
    """The solution ``w`` of the Dirichlet problem with boundary data ``f``."""
    return extend_points(params, f, z)


def extend_dz(params: ParamPair, f: BoundaryFunction, z: PointLike):
    """``dw/dz`` by differentiation under the integral sign."""
    return extend_points(params, f, z, 1, 0)


def extend_dzbar(params: ParamPair, f: BoundaryFunction, z: PointLike):
    """``dw/dzbar`` by differentiation under the integral sign."""
    return extend_points(params, f, z, 0, 1)


def extend_derivative(params: ParamPair, f: BoundaryFunction, z: PointLike, k: int, l: int):
    """``d^k dbar^l w`` for ``k + l <= 4``."""
    return extend_points(params, f, z, k, l)


def extend_circle(
    params: ParamPair,
    f: BoundaryFunction,
    r: float,
    n_theta: Optional[int] = None,
    k: int = 0,
    l: int = 0,
) -> Tuple[np.ndarray, np.ndarray]:
    """``d^k dbar^l w`` on the whole circle ``|z| = r``.

    With ``theta_m = t_m = 2 pi m / n`` the trapezoid sum is the circular
    convolution of ``G(phi) = c D^{k,l}u(r e^{i phi}) e^{i(k-l) phi}``
    with the boundary samples, times ``e^{i(l-k) theta_m}``.

    Returns
    -------
    (theta, values)
        ``n_theta`` uniform angles (default: the configured mean grid)
        and the values there.
    """
    _check_order(k, l)
    config = get_config()
    if not 0.0 <= r < 1.0:
        raise ParameterError(f"r = {r} must satisfy 0 <= r < 1")
    wanted = config.mean_nodes if n_theta is None else int(n_theta)
    if wanted <= 0:
        raise ParameterError(f"n_theta = {wanted} must be positive")
    needed = quadrature_nodes(r, f, config)
    n = next_power_of_two(max(wanted, needed))
    theta = uniform_angles(wanted)
    if n % wanted:
        # angles of the requested grid are not a subset of the FFT grid
        return theta, _transform(params, f, r * np.exp(1j * theta), k, l, needed)
    phi = uniform_angles(n)
    g = c_const(params) * u_derivative_array(params, r * np.exp(1j * phi), k, l)
    g = g * np.exp(1j * (k - l) * phi)
    conv = np.fft.ifft(np.fft.fft(g) * np.fft.fft(f.on_grid(n))) / n
    values = np.exp(1j * (l - k) * phi) * conv
    logger.debug("circle r=%g evaluated on %d angles (%d requested)", r, n, wanted)
    return theta, values[:: n // wanted]


def extend_grid(params: ParamPair, f: BoundaryFunction, grid: EvalGrid) -> pd.DataFrame:
    """Field values on ``grid`` as a frame with columns ``r, theta, re, im``."""
    rows: List[pd.DataFrame] = []
    for r in grid.radii:
        theta, values = extend_circle(params, f, r, grid.n_theta)
        rows.append(
            pd.DataFrame(
                {"r": r, "theta": theta, "re": values.real, "im": values.imag}
            )
        )
    return pd.concat(rows, ignore_index=True)


def _check_p(p: float) -> float:
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ParameterError(f"p = {p} must satisfy p >= 1 or p = inf")
    return p


def circle_means(
    params: ParamPair,
    f: BoundaryFunction,
    r: float,
    p_list: Sequence[float],
    k: int = 0,
    l: int = 0,
) -> Dict[float, float]:
    """``M_p(r, d^k dbar^l w)`` for every ``p`` in ``p_list``.

    Finite exponents average over the mean grid; ``p = inf`` is the
    maximum over the finer norm grid.
    """
    config = get_config()
    p_list = [_check_p(p) for p in p_list]
    means: Dict[float, float] = {}
    finite = [p for p in p_list if not math.isinf(p)]
    if finite:
        _, values = extend_circle(params, f, r, config.mean_nodes, k, l)
        means.update((p, lp_mean(values, p)) for p in finite)
    if len(finite) < len(p_list):
        _, values = extend_circle(params, f, r, config.norm_nodes, k, l)
        means[math.inf] = lp_mean(values, math.inf)
    return means


def integral_mean(params: ParamPair, f: BoundaryFunction, r: float, p: float) -> float:
    """``M_p(r, w)``; ``p = inf`` is the maximum over the norm grid."""
    p = _check_p(p)
    return circle_means(params, f, r, (p,))[p]


def integral_mean_report(
    params: ParamPair,
    f: BoundaryFunction,
    r: float,
    p: float,
    f_norm: Optional[float] = None,
) -> IntegralMeanReport:
    """``M_p(r, w)`` next to its sharp upper bound."""
    p = _check_p(p)
    if f_norm is None:
        f_norm = f.lp_norm(p, get_config().norm_nodes)
    value = integral_mean(params, f, r, p)
    return IntegralMeanReport(r, p, value, theorem31_rhs(params, p, r, f_norm))


def boundary_convergence_report(
    params: ParamPair,
    f: BoundaryFunction,
    radii: Sequence[float],
    n_theta: Optional[int] = None,
) -> List[float]:
    """``sup_theta |w(r e^{i theta}) - f(e^{i theta})|`` for each radius.

    Meaningful for continuous boundary data; sampled data is compared
    with its trigonometric interpolant.
    """
    errors = []
    for r in radii:
        theta, values = extend_circle(params, f, r, n_theta)
        errors.append(float(np.max(np.abs(values - f(theta)))))
    return errors


def operator_residual(
    params: ParamPair, f: BoundaryFunction, z: PointLike, h: float = 1e-4
) -> complex:
    """``Delta_{alpha,beta} w`` at ``z``.

    The mixed derivative ``w_{z zbar}`` is a quarter of the 5-point
    Laplacian of :func:`extend` with step ``h``; the first derivatives
    come from the integral. One node count serves every stencil point.
    """
    zz = complex(as_points(z))
    nodes = quadrature_nodes(abs(zz) + h, f)
    a, b = params.alpha, params.beta

    def w(points: np.ndarray) -> np.ndarray:
        return _transform(params, f, np.asarray(points, dtype=complex).ravel(), 0, 0, nodes)

    fd = wirtinger_fd(w, zz, h)
    pair = np.array([zz])
    w_z = complex(_transform(params, f, pair, 1, 0, nodes)[0])
    w_zbar = complex(_transform(params, f, pair, 0, 1, nodes)[0])
    return (
        (1.0 - abs(zz) ** 2) * fd.laplacian / 4.0
        + a * zz * w_z
        + b * zz.conjugate() * w_zbar
        - a * b * fd.value
    )
