"""
Closed-form right-hand sides of the integral mean, derivative and
coefficient inequalities.

Notation used throughout: ``s = Re(alpha + beta)``, ``q`` the Hoelder
conjugate of ``p``, ``E = exp((pi/2) |Im(alpha - beta)|)`` and
``v = (s + 2) q / 2``.

=========  ==========================================================
T31        ``M_p(r, w) <= |c| E F(-s/2, -s/2; 1; r^2) ||f||_p``
T31cap     ``M_p(r, w) <= E B(alpha, beta) ||f||_p``
T32z       ``|w_z| <= C_p(r) E ||f||_p / (1 - r^2)^{1 + 1/p}``
T32zbar    same with ``D_p(r)``
T33        ``M_p(r, d^k dbar^l w) <= C_kl / (1 - r^2)^{k+l} * T31``
T44i       ``|c_k| <= |c| |(alpha+1)_k| / k! ||f||_p`` (and ``c_{-k}``)
T44ii      ``k!/|(alpha+1)_k| |c_k| + k!/|(beta+1)_k| |c_{-k}| <= 2 |c| C_q ||f||_p``
T45        weighted ``|w_z| + |w_zbar|`` bound, separate ``p = 1`` branch
=========  ==========================================================

``C_q = ((1/2pi) int_0^{2pi} |cos kt|^q dt)^{1/q}`` is computed with
Gauss-Legendre panels on each quarter period of ``|cos kt|``.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, NamedTuple, Optional

import numpy as np
from scipy.special import roots_legendre

from .errors import ParameterError
from .kernel import ParamPair, _check_order, c_const, estimate_Ckl
from .specfun import gamma, hyp2f1, pochhammer_ratio

logger = logging.getLogger(__name__)

GL_POINTS = 64


class Theorem(str, enum.Enum):
    T31 = "T31"
    T31CAP = "T31cap"
    T32Z = "T32z"
    T32ZBAR = "T32zbar"
    T33 = "T33"
    T44I = "T44i"
    T44II = "T44ii"
    T45 = "T45"


class DerivativeBounds(NamedTuple):
    C_r: float
    C_const: float
    D_r: float
    D_const: float


class Theorem44Bounds(NamedTuple):
    bound_ck: float
    bound_cminusk: float
    combined: float


def conjugate_exponent(p: float) -> float:
    """``q = p / (p - 1)``; ``p = 1`` gives ``inf`` and ``p = inf`` gives 1."""
    p = float(p)
    if math.isnan(p) or p < 1.0:
        raise ParameterError(f"p = {p} must satisfy p >= 1 or p = inf")
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _check_radius(r: float) -> None:
    if not 0.0 <= r < 1.0:
        raise ParameterError(f"r = {r} must satisfy 0 <= r < 1")


def b_const(params: ParamPair) -> float:
    """``B(alpha, beta) = Gamma(s + 1) / Gamma(s/2 + 1)^2``."""
    s = params.s
    return (gamma(s + 1.0) / gamma(0.5 * s + 1.0) ** 2).real


def mean_hypergeometric(params: ParamPair, r: float) -> float:
    """``F(-s/2, -s/2; 1; r^2)``."""
    s = params.s
    return hyp2f1(-0.5 * s, -0.5 * s, 1.0, r * r).real


def _holder_factor(params: ParamPair, q: float, r: float) -> float:
    """``F(1 - v, 1 - v; 1; r^2)^{1/q}``."""
    v = 0.5 * (params.s + 2.0) * q
    return hyp2f1(1.0 - v, 1.0 - v, 1.0, r * r).real ** (1.0 / q)


def theorem31_rhs(params: ParamPair, p: float, r: float, f_norm: float) -> float:
    """Sharp bound of the integral mean ``M_p(r, w)``."""
    conjugate_exponent(p)
    _check_radius(r)
    return abs(c_const(params)) * params.exp_factor * mean_hypergeometric(params, r) * f_norm


def theorem31_cap(params: ParamPair, f_norm: float) -> float:
    """Radius-free bound ``E B(alpha, beta) ||f||_p``."""
    return params.exp_factor * b_const(params) * f_norm


def theorem32_bounds(params: ParamPair, p: float, r: float) -> DerivativeBounds:
    """Constants of the first-derivative bounds.

    Raises
    ------
    ParameterError
        If ``p = 1``; the conjugate exponent must be finite.
    """
    q = conjugate_exponent(p)
    if math.isinf(q):
        raise ParameterError("the derivative bound needs p > 1 (finite conjugate exponent)")
    _check_radius(r)
    c_abs = abs(c_const(params))
    a, b = params.alpha, params.beta
    F1 = _holder_factor(params, q, r)
    v = 0.5 * (params.s + 2.0) * q
    G = (gamma(2.0 * v - 1.0) / gamma(v) ** 2).real ** (1.0 / q)
    return DerivativeBounds(
        C_r=c_abs * (abs(a + 1) + abs(b) * r) * F1,
        C_const=c_abs * (abs(a + 1) + abs(b)) * G,
        D_r=c_abs * (abs(b + 1) + abs(a) * r) * F1,
        D_const=c_abs * (abs(b + 1) + abs(a)) * G,
    )


def theorem32_rhs(
    params: ParamPair, p: float, r: float, f_norm: float, conjugate: bool = False
) -> float:
    """Bound of ``|w_z|`` (``conjugate=True``: ``|w_zbar|``) on ``|z| = r``."""
    bounds = theorem32_bounds(params, p, r)
    factor = bounds.D_r if conjugate else bounds.C_r
    return factor * params.exp_factor * f_norm / (1.0 - r * r) ** (1.0 + 1.0 / p)


def theorem33_rhs(
    params: ParamPair, p: float, r: float, k: int, l: int, ckl: float, f_norm: float
) -> float:
    """Bound of ``M_p(r, d^k dbar^l w)`` given the pointwise constant ``ckl``."""
    _check_order(k, l)
    if not ckl > 0:
        raise ParameterError(f"C_kl = {ckl} must be positive")
    return theorem31_rhs(params, p, r, f_norm) * ckl / (1.0 - r * r) ** (k + l)


@lru_cache(maxsize=None)
def _gauss_legendre(n: int):
    return roots_legendre(n)


def c_q(q: float, k: int = 1) -> float:
    """``((1/2pi) int_0^{2pi} |cos kt|^q dt)^{1/q}``; ``q = inf`` gives 1."""
    if k < 1:
        raise ParameterError(f"k = {k} must be at least 1")
    q = float(q)
    if math.isinf(q):
        return 1.0
    if q < 1.0:
        raise ParameterError(f"q = {q} must be at least 1")
    x, w = _gauss_legendre(GL_POINTS)
    width = 0.5 * math.pi / k
    starts = width * np.arange(4 * k)
    t = starts[:, None] + 0.5 * width * (x[None, :] + 1.0)
    total = 0.5 * width * np.sum(w[None, :] * np.abs(np.cos(k * t)) ** q)
    return float((total / (2.0 * math.pi)) ** (1.0 / q))


def theorem44_bounds(params: ParamPair, p: float, k: int, f_norm: float) -> Theorem44Bounds:
    """Coefficient bounds for the mode index ``k >= 1``."""
    if k < 1:
        raise ParameterError(f"k = {k} must be at least 1")
    q = conjugate_exponent(p)
    c_abs = abs(c_const(params))
    return Theorem44Bounds(
        bound_ck=c_abs * abs(pochhammer_ratio(params.alpha + 1, k)) * f_norm,
        bound_cminusk=c_abs * abs(pochhammer_ratio(params.beta + 1, k)) * f_norm,
        combined=2.0 * c_abs * c_q(q, k) * f_norm,
    )


def theorem45_rhs(params: ParamPair, p: float, r: float, f_norm: float) -> float:
    """Bound of ``|w_z| / (|alpha+1| + |beta| r) + |w_zbar| / (|beta+1| + |alpha| r)``."""
    q = conjugate_exponent(p)
    _check_radius(r)
    c_abs = abs(c_const(params))
    s = params.s
    if math.isinf(q):
        return 2.0 * c_abs * params.exp_factor * (1.0 - r * r) ** s / (1.0 - r) ** (s + 2.0) * f_norm
    F2 = _holder_factor(params, q, r)
    return 2.0 * c_abs * f_norm / (1.0 - r * r) ** (1.0 + 1.0 / p) * params.exp_factor * F2


_LHS = {
    Theorem.T31: "M_p(r, w)",
    Theorem.T31CAP: "M_p(r, w)",
    Theorem.T32Z: "|w_z(z)|, |z| = r",
    Theorem.T32ZBAR: "|w_zbar(z)|, |z| = r",
    Theorem.T33: "M_p(r, d^k dbar^l w)",
    Theorem.T44I: "|c_k|",
    Theorem.T44II: "k!/|(alpha+1)_k| |c_k| + k!/|(beta+1)_k| |c_-k|",
    Theorem.T45: "|w_z|/(|alpha+1| + |beta| r) + |w_zbar|/(|beta+1| + |alpha| r)",
}


@dataclass(frozen=True)
class BoundSpec:
    """One bound to evaluate: theorem selector plus its arguments."""

    theorem: Theorem
    params: ParamPair
    p: float = 2.0
    r: float = 0.5
    k: int = 1
    l: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "theorem", Theorem(self.theorem))
        conjugate_exponent(self.p)
        _check_radius(self.r)

    def evaluate(self, f_norm: float = 1.0, ckl: Optional[float] = None) -> Dict[str, Any]:
        """Right-hand side and its ingredients as a JSON-ready dictionary.

        ``ckl`` is only used by ``T33``; when omitted the grid estimate
        from :func:`abharmonic.kernel.estimate_Ckl` is used.
        """
        params, p, r = self.params, self.p, self.r
        theorem = self.theorem
        components: Dict[str, Any] = {
            "params": params.as_json(),
            "p": p,
            "r": r,
            "f_norm": f_norm,
            "c_abs": abs(c_const(params)),
            "exp_factor": params.exp_factor,
        }
        if theorem is Theorem.T31:
            components["F"] = mean_hypergeometric(params, r)
            components["B"] = b_const(params)
            rhs = theorem31_rhs(params, p, r, f_norm)
        elif theorem is Theorem.T31CAP:
            components["B"] = b_const(params)
            rhs = theorem31_cap(params, f_norm)
        elif theorem in (Theorem.T32Z, Theorem.T32ZBAR):
            components.update(theorem32_bounds(params, p, r)._asdict())
            rhs = theorem32_rhs(params, p, r, f_norm, theorem is Theorem.T32ZBAR)
        elif theorem is Theorem.T33:
            if ckl is None:
                ckl = estimate_Ckl(params, self.k, self.l)
            components.update(k=self.k, l=self.l, C_kl=ckl)
            rhs = theorem33_rhs(params, p, r, self.k, self.l, ckl, f_norm)
        elif theorem in (Theorem.T44I, Theorem.T44II):
            bounds = theorem44_bounds(params, p, self.k, f_norm)
            components.update(bounds._asdict())
            components.update(k=self.k, C_q=c_q(conjugate_exponent(p), self.k))
            rhs = bounds.bound_ck if theorem is Theorem.T44I else bounds.combined
        else:
            rhs = theorem45_rhs(params, p, r, f_norm)
        if not math.isfinite(rhs):
            raise ParameterError(f"{theorem.value} bound is not finite for {params}, p={p}, r={r}")
        return {"theorem": theorem.value, "lhs_spec": _LHS[theorem], "rhs_value": rhs,
                "components": components}
