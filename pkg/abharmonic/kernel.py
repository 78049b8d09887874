"""
The canonical (alpha, beta)-harmonic function and its Poisson kernel.

``u_{alpha,beta}(z) = (1-|z|^2)^{alpha+beta+1} / ((1-z)^{alpha+1} (1-conj z)^{beta+1})``
and ``K_{alpha,beta} = c_{alpha,beta} u_{alpha,beta}``. Complex powers use
the principal logarithm; ``Log(1 - conj z)`` is taken as the conjugate of
``Log(1 - z)``, which is the principal value because ``Re(1 - z) > 0`` on
the disk.

Every evaluator accepts a :class:`DiskPoint`, a complex scalar or a numpy
array of complex points and returns a complex scalar or an array of the
same shape.

Exact higher derivatives ``d^k dbar^l u`` are produced by symbolic
differentiation in a small term algebra: a :class:`KernelTerm` is

    coeff * z^i * conj(z)^j * (1-|z|^2)^s * (1-z)^{-p} * (1-conj z)^{-q}

and a :class:`KernelSum` (a tuple of terms) is closed under both
Wirtinger derivatives.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from .config import get_config
from .errors import OrderTooHighError, ParameterError
from .specfun import gamma, is_integer, nearest_integer

logger = logging.getLogger(__name__)

MAX_DERIVATIVE_ORDER = 4


@dataclass(frozen=True)
class ParamPair:
    """The complex parameter pair ``(alpha, beta)``.

    Neither parameter may be a negative integer (within ``1e-9``) and
    ``Re(alpha + beta) > -1``.
    """

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        for name, value in (("alpha", self.alpha), ("beta", self.beta)):
            if nearest_integer(value) <= -1 and is_integer(value, 1e-9):
                raise ParameterError(f"{name} = {value} must not be a negative integer")
        if self.s <= -1.0:
            raise ParameterError(
                f"Re(alpha + beta) = {self.s} must be greater than -1"
            )

    @property
    def s(self) -> float:
        """``Re(alpha + beta)``."""
        return (self.alpha + self.beta).real

    @property
    def is_real(self) -> bool:
        return self.alpha.imag == 0.0 and self.beta.imag == 0.0

    @property
    def exp_factor(self) -> float:
        """``exp((pi/2) |Im(alpha - beta)|)``."""
        return math.exp(0.5 * math.pi * abs((self.alpha - self.beta).imag))

    def swapped(self) -> "ParamPair":
        return ParamPair(self.beta, self.alpha)

    def as_json(self) -> dict:
        return {
            "alpha": [self.alpha.real, self.alpha.imag],
            "beta": [self.beta.real, self.beta.imag],
        }

    def __str__(self) -> str:
        return f"({_fmt(self.alpha)}, {_fmt(self.beta)})"


def _fmt(value: complex) -> str:
    if value.imag == 0:
        return f"{value.real:g}"
    return f"{value.real:g}{value.imag:+g}i"


@dataclass(frozen=True)
class DiskPoint:
    """A point ``z = r e^{i theta}`` of the open unit disk."""

    r: float
    theta: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "r", float(self.r))
        object.__setattr__(self, "theta", float(self.theta))
        if not 0.0 <= self.r < 1.0:
            raise ParameterError(f"r = {self.r} must satisfy 0 <= r < 1")

    @classmethod
    def from_complex(cls, z: complex) -> "DiskPoint":
        z = complex(z)
        return cls(abs(z), math.atan2(z.imag, z.real))

    @property
    def z(self) -> complex:
        return self.r * complex(math.cos(self.theta), math.sin(self.theta))


PointLike = Union[DiskPoint, complex, float, np.ndarray]


def as_points(z: PointLike) -> np.ndarray:
    """Convert a point argument to a complex array, checking ``|z| < 1``."""
    if isinstance(z, DiskPoint):
        return np.asarray(z.z, dtype=complex)
    arr = np.asarray(z, dtype=complex)
    if arr.size and np.max(np.abs(arr)) >= 1.0:
        raise ParameterError("points must lie in the open unit disk")
    return arr


def _result(values: np.ndarray) -> Union[complex, np.ndarray]:
    return complex(values) if values.ndim == 0 else values


def c_const(params: ParamPair) -> complex:
    """``c_{alpha,beta} = Gamma(alpha+1) Gamma(beta+1) / Gamma(alpha+beta+1)``."""
    a, b = params.alpha, params.beta
    return gamma(a + 1) * gamma(b + 1) / gamma(a + b + 1)


def _log_terms(z: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    return np.log1p(-np.abs(z) ** 2), np.log(1.0 - z)


def _u(params: ParamPair, z: np.ndarray) -> np.ndarray:
    a, b = params.alpha, params.beta
    log_rho, log_w = _log_terms(z)
    return np.exp((a + b + 1) * log_rho - (a + 1) * log_w - (b + 1) * np.conj(log_w))


def _u_dz(params: ParamPair, z: np.ndarray) -> np.ndarray:
    a, b = params.alpha, params.beta
    rho = 1.0 - np.abs(z) ** 2
    zb = np.conj(z)
    factor = (a + 1) * (1 - zb) / ((1 - z) * rho) - b * zb / rho
    return factor * _u(params, z)


def _u_dzbar(params: ParamPair, z: np.ndarray) -> np.ndarray:
    a, b = params.alpha, params.beta
    rho = 1.0 - np.abs(z) ** 2
    factor = (b + 1) * (1 - z) / ((1 - np.conj(z)) * rho) - a * z / rho
    return factor * _u(params, z)


def u_value(params: ParamPair, z: PointLike):
    """Evaluate ``u_{alpha,beta}`` at ``z``."""
    return _result(_u(params, as_points(z)))


def kernel_value(params: ParamPair, z: PointLike):
    """Evaluate the Poisson-type kernel ``K_{alpha,beta} = c_{alpha,beta} u``."""
    return _result(c_const(params) * _u(params, as_points(z)))


def u_dz(params: ParamPair, z: PointLike):
    """``d/dz u_{alpha,beta}`` in closed form."""
    return _result(_u_dz(params, as_points(z)))


def u_dzbar(params: ParamPair, z: PointLike):
    """``d/d(conj z) u_{alpha,beta}`` in closed form."""
    return _result(_u_dzbar(params, as_points(z)))


def u_modulus_bound(params: ParamPair, z: PointLike):
    """Pointwise bound ``exp((pi/2)|Im(a-b)|) (1-|z|^2)^{s+1} / |1-z|^{s+2}``."""
    zz = as_points(z)
    s = params.s
    bound = params.exp_factor * (1.0 - np.abs(zz) ** 2) ** (s + 1) / np.abs(1.0 - zz) ** (s + 2)
    return float(bound) if bound.ndim == 0 else bound


@dataclass(frozen=True)
class KernelTerm:
    """``coeff z^i conj(z)^j (1-|z|^2)^s (1-z)^{-p} (1-conj z)^{-q}``."""

    coeff: complex
    i: int
    j: int
    s: complex
    p: complex
    q: complex

    def dz(self) -> Tuple["KernelTerm", ...]:
        c, i, j, s, p, q = self.coeff, self.i, self.j, self.s, self.p, self.q
        out = []
        if i:
            out.append(KernelTerm(c * i, i - 1, j, s, p, q))
        if s != 0:
            out.append(KernelTerm(-c * s, i, j + 1, s - 1, p, q))
        if p != 0:
            out.append(KernelTerm(c * p, i, j, s, p + 1, q))
        return tuple(t for t in out if t.coeff != 0)

    def dzbar(self) -> Tuple["KernelTerm", ...]:
        c, i, j, s, p, q = self.coeff, self.i, self.j, self.s, self.p, self.q
        out = []
        if j:
            out.append(KernelTerm(c * j, i, j - 1, s, p, q))
        if s != 0:
            out.append(KernelTerm(-c * s, i + 1, j, s - 1, p, q))
        if q != 0:
            out.append(KernelTerm(c * q, i, j, s, p, q + 1))
        return tuple(t for t in out if t.coeff != 0)

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        log_rho, log_w = _log_terms(z)
        power = np.exp(self.s * log_rho - self.p * log_w - self.q * np.conj(log_w))
        return self.coeff * z ** self.i * np.conj(z) ** self.j * power


@dataclass(frozen=True)
class KernelSum:
    """A finite sum of :class:`KernelTerm`; immutable."""

    terms: Tuple[KernelTerm, ...]

    @classmethod
    def canonical(cls, params: ParamPair) -> "KernelSum":
        a, b = params.alpha, params.beta
        return cls((KernelTerm(1 + 0j, 0, 0, a + b + 1, a + 1, b + 1),))

    def dz(self) -> "KernelSum":
        return KernelSum(tuple(t for term in self.terms for t in term.dz()))

    def dzbar(self) -> "KernelSum":
        return KernelSum(tuple(t for term in self.terms for t in term.dzbar()))

    def evaluate(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        total = np.zeros(z.shape, dtype=complex)
        for term in self.terms:
            total += term.evaluate(z)
        return total


def _check_order(k: int, l: int) -> None:
    if k < 0 or l < 0:
        raise ParameterError(f"derivative orders k = {k}, l = {l} must be nonnegative")
    if k + l > MAX_DERIVATIVE_ORDER:
        raise OrderTooHighError(
            f"k + l = {k + l} exceeds the supported order {MAX_DERIVATIVE_ORDER}"
        )


@lru_cache(maxsize=256)
def derivative_terms(params: ParamPair, k: int, l: int) -> KernelSum:
    """Symbolic ``d^k dbar^l u_{alpha,beta}``."""
    _check_order(k, l)
    expr = KernelSum.canonical(params)
    for _ in range(l):
        expr = expr.dzbar()
    for _ in range(k):
        expr = expr.dz()
    logger.debug("d^%d dbar^%d u has %d terms", k, l, len(expr.terms))
    return expr


def u_derivative_array(params: ParamPair, z: np.ndarray, k: int, l: int) -> np.ndarray:
    """Array version of :func:`u_higher_deriv` using the closed forms when available."""
    _check_order(k, l)
    if (k, l) == (0, 0):
        return _u(params, z)
    if (k, l) == (1, 0):
        return _u_dz(params, z)
    if (k, l) == (0, 1):
        return _u_dzbar(params, z)
    return derivative_terms(params, k, l).evaluate(z)


def u_higher_deriv(params: ParamPair, z: PointLike, k: int, l: int):
    """Exact ``d^k dbar^l u_{alpha,beta}(z)`` for ``k + l <= 4``.

    Raises
    ------
    OrderTooHighError
        If ``k + l > 4``.
    """
    _check_order(k, l)
    return _result(derivative_terms(params, k, l).evaluate(as_points(z)))


def kernel_derivative(params: ParamPair, z: PointLike, k: int, l: int):
    """``c_{alpha,beta} d^k dbar^l u_{alpha,beta}(z)``."""
    return _result(c_const(params) * u_derivative_array(params, as_points(z), k, l))


def u_operator_residual(params: ParamPair, z: PointLike):
    """``Delta_{alpha,beta} u`` evaluated from the exact derivatives (should vanish)."""
    zz = as_points(z)
    a, b = params.alpha, params.beta
    u = u_derivative_array(params, zz, 0, 0)
    residual = (
        (1.0 - np.abs(zz) ** 2) * u_derivative_array(params, zz, 1, 1)
        + a * zz * u_derivative_array(params, zz, 1, 0)
        + b * np.conj(zz) * u_derivative_array(params, zz, 0, 1)
        - a * b * u
    )
    return _result(residual)


def estimate_Ckl(
    params: ParamPair,
    k: int,
    l: int,
    n_radii: int | None = None,
    n_angles: int | None = None,
    r_max: float | None = None,
) -> float:
    """Grid estimate of ``C_{alpha,beta,k,l}``.

    Returns the maximum over a polar grid of
    ``|d^k dbar^l u| (1-|z|^2)^{k+l} / |u|``; a lower estimate of the
    constant of the pointwise derivative bound. Refining the grid (any
    superset of sample points) can only increase the value.
    """
    _check_order(k, l)
    if (k, l) == (0, 0):
        return 1.0
    config = get_config()
    n_radii = config.ckl_radii if n_radii is None else n_radii
    n_angles = config.ckl_angles if n_angles is None else n_angles
    r_max = config.ckl_rmax if r_max is None else r_max
    radii = np.linspace(0.0, r_max, n_radii)
    angles = 2.0 * np.pi * np.arange(n_angles) / n_angles
    z = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
    u = _u(params, z)
    deriv = u_derivative_array(params, z, k, l)
    ratio = np.abs(deriv) * (1.0 - np.abs(z) ** 2) ** (k + l) / np.abs(u)
    return float(np.max(ratio))
