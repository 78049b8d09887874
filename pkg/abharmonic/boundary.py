"""
Boundary data on the unit circle.

A boundary function ``f(e^{it})`` is represented by one of three
variants, all derived from :class:`BoundaryFunction`:

``ConstantBoundary``
    ``f`` identically equal to a complex constant.

``FourierBoundary``
    A trigonometric polynomial ``sum_{|m| <= M} a_m e^{imt}``.

``SampledBoundary``
    ``N`` uniform samples at ``t_j = 2 pi j / N`` (``N >= 8`` a power of
    two), extended off the sample points by trigonometric interpolation.

Every variant exposes its Fourier coefficients and can be sampled on any
uniform grid that resolves its degree. Sampling goes through the FFT, so
evaluating a degree ``M`` polynomial on ``n`` nodes costs ``O(n log n)``.

The JSON forms are::

    {"type": "constant", "value": [re, im]}
    {"type": "fourier", "coeffs": [{"m": -2, "re": 0.1, "im": 0.0}, ...]}
    {"type": "samples", "values": [[re, im], ...]}
"""

from __future__ import annotations

import json
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, ClassVar, Dict, Mapping, Sequence

import numpy as np

from .config import next_power_of_two
from .errors import ParameterError

logger = logging.getLogger(__name__)


def lp_mean(values: np.ndarray, p: float) -> float:
    """Discrete ``(mean |v|^p)^{1/p}``; ``p = inf`` gives ``max |v|``."""
    mags = np.abs(np.asarray(values))
    if math.isinf(p):
        return float(np.max(mags))
    if p < 1:
        raise ParameterError(f"p = {p} must satisfy p >= 1 or p = inf")
    return float(np.mean(mags ** p) ** (1.0 / p))


def uniform_angles(n: int) -> np.ndarray:
    return 2.0 * np.pi * np.arange(n) / n


class BoundaryFunction(ABC):
    """Base class of the boundary data representations.

    Subclasses implement :meth:`fourier_coefficients` and
    :meth:`to_json`; sampling, norms and degree handling are shared.
    """

    kind: ClassVar[str]

    @abstractmethod
    def fourier_coefficients(self) -> Dict[int, complex]:
        """Map ``m -> a_m`` of the (interpolating) Fourier expansion."""
        raise NotImplementedError

    @abstractmethod
    def to_json(self) -> Dict[str, Any]:
        raise NotImplementedError

    @property
    def degree(self) -> int:
        coeffs = self.fourier_coefficients()
        return max((abs(m) for m in coeffs), default=0)

    @property
    def min_nodes(self) -> int:
        """Smallest power-of-two grid that samples ``f`` without aliasing."""
        return max(8, next_power_of_two(2 * self.degree + 1))

    def on_grid(self, n: int) -> np.ndarray:
        """Values at ``t_j = 2 pi j / n``, ``j = 0..n-1``."""
        if n <= 2 * self.degree:
            raise ParameterError(
                f"{n} nodes cannot resolve a boundary function of degree {self.degree}"
            )
        spectrum = np.zeros(n, dtype=complex)
        for m, a_m in self.fourier_coefficients().items():
            spectrum[m % n] += a_m
        return np.fft.ifft(spectrum) * n

    def __call__(self, t: np.ndarray) -> np.ndarray:
        """Values at arbitrary angles by direct summation."""
        t = np.asarray(t, dtype=float)
        total = np.zeros(t.shape, dtype=complex)
        for m, a_m in self.fourier_coefficients().items():
            total += a_m * np.exp(1j * m * t)
        return total

    def lp_norm(self, p: float, n: int = 4096) -> float:
        """``||f||_{L^p(T)}`` on a uniform grid of at least ``n`` nodes."""
        return lp_mean(self.on_grid(max(n, self.min_nodes)), p)

    def l2_norm_parseval(self) -> float:
        """``||f||_{L^2}`` from the coefficients (Parseval)."""
        coeffs = self.fourier_coefficients()
        return math.sqrt(sum(abs(a) ** 2 for a in coeffs.values()))


@dataclass(frozen=True)
class ConstantBoundary(BoundaryFunction):
    kind: ClassVar[str] = "constant"
    value: complex = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", complex(self.value))

    def fourier_coefficients(self) -> Dict[int, complex]:
        return {0: self.value}

    def to_json(self) -> Dict[str, Any]:
        return {"type": self.kind, "value": [self.value.real, self.value.imag]}


@dataclass(frozen=True)
class FourierBoundary(BoundaryFunction):
    kind: ClassVar[str] = "fourier"
    coeffs: Mapping[int, complex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned = {int(m): complex(a) for m, a in self.coeffs.items()}
        object.__setattr__(self, "coeffs", cleaned)

    def fourier_coefficients(self) -> Dict[int, complex]:
        return dict(self.coeffs)

    def to_json(self) -> Dict[str, Any]:
        return {
            "type": self.kind,
            "coeffs": [
                {"m": m, "re": a.real, "im": a.imag} for m, a in sorted(self.coeffs.items())
            ],
        }


@dataclass(frozen=True, eq=False)
class SampledBoundary(BoundaryFunction):
    """Uniform samples; the Nyquist coefficient is dropped so that the
    interpolant has degree ``N/2 - 1``."""

    kind: ClassVar[str] = "samples"
    values: np.ndarray = field(default_factory=lambda: np.ones(8, dtype=complex))

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex).ravel()
        n = values.size
        if n < 8 or n & (n - 1):
            raise ParameterError(f"sample count N = {n} must be a power of two >= 8")
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return self.values.size

    @property
    def degree(self) -> int:
        return self.n_samples // 2 - 1

    @property
    def min_nodes(self) -> int:
        return self.n_samples

    def fourier_coefficients(self) -> Dict[int, complex]:
        n = self.n_samples
        spectrum = np.fft.fft(self.values) / n
        half = n // 2
        coeffs = {k: complex(spectrum[k]) for k in range(half)}
        coeffs.update({k - n: complex(spectrum[k]) for k in range(half + 1, n)})
        return coeffs

    def on_grid(self, n: int) -> np.ndarray:
        if n == self.n_samples:
            return self.values.copy()
        return super().on_grid(n)

    def to_json(self) -> Dict[str, Any]:
        return {"type": self.kind, "values": [[v.real, v.imag] for v in self.values]}


def _pair(value: Any, what: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, Sequence) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    raise ParameterError(f"{what} must be a number or an [re, im] pair, got {value!r}")


def boundary_from_json(data: Mapping[str, Any]) -> BoundaryFunction:
    """Build a boundary function from its JSON dictionary.

    Raises
    ------
    ParameterError
        If the ``type`` is unknown or the payload is malformed.
    """
    kind = str(data.get("type", "")).lower().strip()
    if kind == ConstantBoundary.kind:
        return ConstantBoundary(_pair(data.get("value", 1.0), "value"))
    if kind == FourierBoundary.kind:
        coeffs: Dict[int, complex] = {}
        for entry in data.get("coeffs", []):
            try:
                m = int(entry["m"])
                coeffs[m] = coeffs.get(m, 0j) + complex(
                    float(entry.get("re", 0.0)), float(entry.get("im", 0.0))
                )
            except (KeyError, TypeError, ValueError) as exc:
                raise ParameterError(f"bad fourier coefficient {entry!r}: {exc}") from None
        return FourierBoundary(coeffs)
    if kind == SampledBoundary.kind:
        values = [_pair(v, "sample") for v in data.get("values", [])]
        return SampledBoundary(np.asarray(values, dtype=complex))
    raise ParameterError(f"unknown boundary type: {kind!r}")


def load_boundary(path: str | Path) -> BoundaryFunction:
    """Read a boundary JSON file."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        logger.error("Failed to read boundary file %s: %s", path, exc)
        raise ParameterError(f"cannot read boundary file {path}: {exc}") from None
    return boundary_from_json(data)


def random_trig_polynomial(rng: np.random.Generator, degree: int) -> FourierBoundary:
    """Trigonometric polynomial of degree ``<= degree`` with coefficients
    uniform on the closed unit disk."""
    if degree < 0:
        raise ParameterError(f"degree = {degree} must be nonnegative")
    size = 2 * degree + 1
    radius = np.sqrt(rng.uniform(0.0, 1.0, size))
    phase = rng.uniform(0.0, 2.0 * np.pi, size)
    coeffs = radius * np.exp(1j * phase)
    return FourierBoundary({m: coeffs[m + degree] for m in range(-degree, degree + 1)})
