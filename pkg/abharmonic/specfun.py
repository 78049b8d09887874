"""
Special functions with complex parameters.

Gamma is evaluated with the Lanczos approximation (g = 7, nine
coefficients) and the reflection formula for ``Re(z) < 0.5``. The Gauss
hypergeometric function ``F(a, b; c; x)`` is evaluated for complex
``a, b, c`` and real ``0 <= x < 1`` by its power series, switching to the
``x -> 1 - x`` connection formula close to ``x = 1`` whenever that
formula is applicable. The Pochhammer symbol is a plain product so that
it stays finite at nonpositive ``a``.

All functions are pure and thread safe.
"""

from __future__ import annotations

import cmath
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Union

from .errors import ConvergenceError, ParameterError, PoleError

logger = logging.getLogger(__name__)

Number = Union[int, float, complex]

POLE_TOLERANCE = 1e-9
SERIES_TOLERANCE = 1e-15
MAX_TERMS = 100_000
TRANSFORM_THRESHOLD = 0.75
# c - a - b closer than this to an integer makes the connection formula
# cancel catastrophically; the direct series is used instead.
INTEGER_GAP = 1e-6

_LANCZOS_G = 7
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_TWO_PI = math.sqrt(2.0 * math.pi)


def nearest_integer(z: complex) -> int:
    return int(round(z.real))


def is_nonpositive_integer(z: Number, tol: float = POLE_TOLERANCE) -> bool:
    """True when ``z`` lies within ``tol`` of one of ``0, -1, -2, ...``."""
    z = complex(z)
    n = nearest_integer(z)
    return n <= 0 and abs(z - n) <= tol


def is_integer(z: Number, tol: float) -> bool:
    z = complex(z)
    return abs(z - nearest_integer(z)) <= tol


def gamma(z: Number) -> complex:
    """Gamma function for complex argument.

    Positive integers up to 170 return the exact factorial so that
    identities such as ``Gamma(1) = 1`` hold bit for bit.

    Raises
    ------
    PoleError
        If ``z`` is within ``1e-9`` of a nonpositive integer.
    """
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at z = {z}")
    if z.imag == 0.0 and z.real.is_integer() and 0 < z.real <= 170:
        return complex(math.factorial(int(z.real) - 1))
    if z.real < 0.5:
        # reflection
        return cmath.pi / (cmath.sin(cmath.pi * z) * gamma(1.0 - z))
    z -= 1.0
    x = _LANCZOS_COEFFS[0]
    for i in range(1, len(_LANCZOS_COEFFS)):
        x += _LANCZOS_COEFFS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_TWO_PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def rgamma(z: Number) -> complex:
    """Reciprocal Gamma, ``0`` at the poles of Gamma."""
    if is_nonpositive_integer(z):
        return 0j
    return 1.0 / gamma(z)


def pochhammer(a: Number, n: int) -> complex:
    """Rising factorial ``(a)_n = a (a+1) ... (a+n-1)`` with ``(a)_0 = 1``."""
    if n < 0:
        raise ParameterError(f"Pochhammer index n = {n} must be nonnegative")
    a = complex(a)
    result = 1 + 0j
    for j in range(n):
        result *= a + j
    return result


def pochhammer_ratio(a: Number, n: int) -> complex:
    """``(a)_n / n!`` as a running product, safe for large ``n``."""
    if n < 0:
        raise ParameterError(f"Pochhammer index n = {n} must be nonnegative")
    a = complex(a)
    result = 1 + 0j
    for j in range(n):
        result *= (a + j) / (j + 1)
    return result


@dataclass(frozen=True)
class HypParams:
    """Arguments of ``F(a, b; c; x)``.

    ``c`` may not be zero or a negative integer and ``x`` must satisfy
    ``0 <= x < 1``.
    """

    a: complex
    b: complex
    c: complex
    x: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))
        object.__setattr__(self, "c", complex(self.c))
        object.__setattr__(self, "x", float(self.x))
        if is_nonpositive_integer(self.c):
            raise ParameterError(f"c = {self.c} must not be zero or a negative integer")
        if not 0.0 <= self.x < 1.0:
            raise ParameterError(f"x = {self.x} must satisfy 0 <= x < 1")

    @property
    def terminates(self) -> bool:
        return is_nonpositive_integer(self.a, 0.0) or is_nonpositive_integer(self.b, 0.0)


def _power_series(a: complex, b: complex, c: complex, x: float) -> complex:
    total = 1 + 0j
    if x == 0.0:
        return total
    term = 1 + 0j
    for n in range(MAX_TERMS):
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1)) * x
        term *= ratio
        total += term
        if term == 0:
            return total
        # stop only once the terms are also shrinking
        next_ratio = abs((a + n + 1) * (b + n + 1) / ((c + n + 1) * (n + 2))) * x
        if abs(term) < SERIES_TOLERANCE * abs(total) and next_ratio < 1.0:
            logger.debug("2F1 series converged after %d terms at x=%g", n + 1, x)
            return total
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {x}) did not converge in {MAX_TERMS} terms"
    )


def _connection_formula(a: complex, b: complex, c: complex, x: float) -> complex:
    d = c - a - b
    y = 1.0 - x
    first = gamma(c) * gamma(d) * rgamma(c - a) * rgamma(c - b)
    second = gamma(c) * gamma(-d) * rgamma(a) * rgamma(b)
    value = first * _power_series(a, b, 1.0 - d, y)
    if second != 0:
        value += second * cmath.exp(d * math.log(y)) * _power_series(c - a, c - b, 1.0 + d, y)
    return value


def hyp2f1(
    a: Union[HypParams, Number],
    b: Optional[Number] = None,
    c: Optional[Number] = None,
    x: Optional[float] = None,
) -> complex:
    """Gauss hypergeometric function ``F(a, b; c; x)``.

    Accepts either a :class:`HypParams` or the four arguments directly.

    Raises
    ------
    ParameterError
        If ``c`` is zero or a negative integer, or ``x`` is outside ``[0, 1)``.
    ConvergenceError
        If the series hits the iteration cap.
    """
    params = a if isinstance(a, HypParams) else HypParams(a, b, c, x)
    a, b, c, x = params.a, params.b, params.c, params.x
    if params.terminates or x <= TRANSFORM_THRESHOLD:
        return _power_series(a, b, c, x)
    d = c - a - b
    if d.real > 0:
        if not is_integer(d, INTEGER_GAP):
            return _connection_formula(a, b, c, x)
        _warn_direct_series(a, b, c)
    return _power_series(a, b, c, x)


@lru_cache(maxsize=256)
def _warn_direct_series(a: complex, b: complex, c: complex) -> None:
    # once per parameter triple
    logger.warning(
        "c - a - b = %s is an integer; using the direct series for x > %s",
        c - a - b, TRANSFORM_THRESHOLD,
    )


def hyp2f1_limit_at_1(a: Number, b: Number, c: Number) -> complex:
    """``lim_{x -> 1} F(a, b; c; x) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))``.

    Raises
    ------
    ParameterError
        If ``Re(c - a - b) <= 0`` or one of ``c, c - a, c - b`` is a
        nonpositive integer.
    """
    a, b, c = complex(a), complex(b), complex(c)
    d = c - a - b
    if d.real <= 0:
        raise ParameterError(f"Re(c - a - b) = {d.real} must be positive")
    for name, value in (("c", c), ("c - a", c - a), ("c - b", c - b)):
        if is_nonpositive_integer(value):
            raise ParameterError(f"{name} = {value} must not be a nonpositive integer")
    return gamma(c) * gamma(d) / (gamma(c - a) * gamma(c - b))


def hyp2f1_derivative(a: Number, b: Number, c: Number, x: float) -> complex:
    """``d/dx F(a, b; c; x) = (ab / c) F(a+1, b+1; c+1; x)``."""
    a, b, c = complex(a), complex(b), complex(c)
    if c == 0:
        raise ParameterError("c must be nonzero")
    HypParams(a, b, c, x)
    if a * b == 0:
        return 0j
    return a * b / c * hyp2f1(a + 1, b + 1, c + 1, x)
