"""
Numerical verification of the integral mean, derivative and coefficient
inequalities.

Each suite draws random trigonometric polynomials (coefficients uniform
on the closed unit disk), computes the left-hand side with the
quadrature or series solvers and compares it with the closed-form
right-hand side from :mod:`abharmonic.bounds`. Every comparison becomes
one :class:`Check`; solver errors are recorded as failed checks and
never abort a run. The order of the checks depends only on the
:class:`SuiteConfig`, so a fixed seed gives identical reports.

Suites
------
``t31``          integral means, the radius-free cap and the equality case
``t32``          first derivatives at random points (``p > 1``)
``t33``          integral means of derivatives of order 1 and 2
``t44``          series coefficients, plus the classical ``4/pi`` corollary
``t45``          weighted first-derivative bound
``subharmonic``  sub-mean-value test of ``F(-alpha, -beta; 1; |z|^2)``
``residual``     ``Delta_{alpha,beta} w = 0`` for quadrature, series and ``D``
``sharpness``    the derivative bound is approached as ``rho -> 1``
"""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import get_suite
from .boundary import (
    BoundaryFunction,
    ConstantBoundary,
    FourierBoundary,
    SampledBoundary,
    random_trig_polynomial,
    uniform_angles,
)
from .bounds import (
    conjugate_exponent,
    theorem31_cap,
    theorem31_rhs,
    theorem32_bounds,
    theorem32_rhs,
    theorem33_rhs,
    theorem44_bounds,
    theorem45_rhs,
)
from .config import get_config
from .dirichlet import EvalGrid, circle_means, extend_points, operator_residual
from .errors import AlphaBetaError, ParameterError
from .kernel import ParamPair, c_const, estimate_Ckl, u_dz, u_dzbar
from .series import apply_D, coeffs_from_boundary, series_residual
from .specfun import hyp2f1, pochhammer_ratio

logger = logging.getLogger(__name__)

DEFAULT_PARAMS: Tuple[ParamPair, ...] = (
    ParamPair(0.0, 0.0),
    ParamPair(0.5, 0.5),
    ParamPair(1.0, 0.5),
    ParamPair(1 + 0.5j, 1 - 0.5j),
    ParamPair(0.5 + 0.5j, 0.2 - 0.3j),
    ParamPair(2 + 1j, 1.0),
)
SHARP_ALPHAS = (0.0, 0.5, 1.0)
SUBHARMONIC_VALUES = (0.5, 1.0, 2.0)
RESIDUAL_TOLERANCE = 1e-5
RESIDUAL_MAX_RADIUS = 0.75
SUBMEAN_SLACK = 1e-10
LAPLACIAN_SLACK = 1e-8
SHARPNESS_RHOS = (0.9, 0.95, 0.99)
SHARPNESS_SAMPLES = 4096
SHARPNESS_WINDOW = 0.1
# the extremal ratio meets the bound; allow for trapezoid and interpolation error
SHARPNESS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class SuiteConfig:
    """Settings of a verification run.

    Attributes
    ----------
    seed : int
        Seed of the random boundary and point ensembles.

    n_boundary : int
        Random trigonometric polynomials per suite.

    degree : int
        Their Fourier degree.

    param_grid : tuple of ParamPair
        Parameter pairs every boundary is tested with.

    radii, p_list :
        Circles and exponents of the integral mean checks.

    tolerance_rel : float
        A check passes when ``lhs <= rhs (1 + tolerance_rel)``.

    n_points : int
        Random points of the residual suite.

    n_random_params : int
        Extra pairs drawn by :func:`sample_params` and appended to
        ``param_grid``; half of them complex.
    """

    seed: int = 42
    n_boundary: int = 50
    degree: int = 4
    param_grid: Tuple[ParamPair, ...] = DEFAULT_PARAMS
    radii: Tuple[float, ...] = (0.3, 0.6, 0.9, 0.95)
    p_list: Tuple[float, ...] = (1.0, 2.0, 4.0, math.inf)
    tolerance_rel: float = 1e-8
    n_points: int = 100
    n_random_params: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "param_grid", tuple(self.param_grid))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))
        object.__setattr__(self, "p_list", tuple(float(p) for p in self.p_list))
        if self.n_boundary <= 0 or self.degree <= 0 or self.n_points <= 0:
            raise ParameterError("n_boundary, degree and n_points must be positive")
        if self.n_random_params < 0:
            raise ParameterError("n_random_params must be nonnegative")
        if any(not 0.0 <= r < 1.0 for r in self.radii):
            raise ParameterError("suite radii must lie in [0, 1)")
        if not 0.0 < self.tolerance_rel <= 1e-2:
            raise ParameterError(f"tolerance_rel = {self.tolerance_rel} must lie in (0, 1e-2]")
        for p in self.p_list:
            conjugate_exponent(p)

    def boundaries(self) -> List[FourierBoundary]:
        rng = np.random.default_rng(self.seed)
        return [random_trig_polynomial(rng, self.degree) for _ in range(self.n_boundary)]

    def rng(self, stream: int) -> np.random.Generator:
        """Independent, reproducible generator for one suite."""
        return np.random.default_rng([self.seed, stream])

    def params(self) -> Tuple[ParamPair, ...]:
        """``param_grid`` followed by the seeded random pairs."""
        if not self.n_random_params:
            return self.param_grid
        return self.param_grid + tuple(sample_params(self.rng(0), self.n_random_params))


def _json_float(value: Optional[float]) -> Any:
    if value is None:
        return None
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if math.isnan(value):
        return "nan"
    return value


@dataclass(frozen=True)
class Check:
    """One comparison ``lhs <= rhs``."""

    name: str
    params: Optional[ParamPair]
    p: Optional[float]
    r: Optional[float]
    lhs: float
    rhs: float
    passed: bool
    detail: str = ""

    @property
    def margin(self) -> float:
        return self.rhs - self.lhs

    def as_row(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "params": str(self.params) if self.params is not None else "",
            "p": self.p,
            "r": self.r,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "pass": self.passed,
            "detail": self.detail,
        }

    def to_json(self) -> Dict[str, Any]:
        row = self.as_row()
        row["params"] = self.params.as_json() if self.params is not None else None
        for key in ("p", "r", "lhs", "rhs", "margin"):
            row[key] = _json_float(row[key])
        return row


@dataclass
class VerificationReport:
    checks: List[Check] = field(default_factory=list)

    def add(
        self,
        name: str,
        params: Optional[ParamPair],
        p: Optional[float],
        r: Optional[float],
        lhs: float,
        rhs: float,
        tolerance_rel: float = 0.0,
        detail: str = "",
        passed: Optional[bool] = None,
    ) -> Check:
        """Record ``lhs <= rhs (1 + tolerance_rel)`` (or an explicit verdict)."""
        lhs, rhs = float(lhs), float(rhs)
        if passed is None:
            passed = bool(lhs <= rhs * (1.0 + tolerance_rel))
        check = Check(name, params, p, r, lhs, rhs, bool(passed), detail)
        if not check.passed:
            logger.error("check %s failed for %s: lhs=%.17g rhs=%.17g %s",
                         name, params, lhs, rhs, detail)
        self.checks.append(check)
        return check

    def add_error(
        self, name: str, params: Optional[ParamPair], p: Optional[float],
        r: Optional[float], exc: Exception,
    ) -> None:
        logger.error("check %s raised for %s: %s", name, params, exc)
        self.checks.append(
            Check(name, params, p, r, math.nan, math.nan, False, f"{type(exc).__name__}: {exc}")
        )

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    @property
    def failed(self) -> int:
        return sum(1 for c in self.checks if not c.passed)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    @property
    def summary(self) -> Dict[str, Any]:
        margins = [c.margin for c in self.checks if not math.isnan(c.margin)]
        return {
            "total": len(self.checks),
            "failed": self.failed,
            "worst_margin": min(margins) if margins else None,
        }

    def to_json(self) -> Dict[str, Any]:
        summary = dict(self.summary)
        summary["worst_margin"] = _json_float(summary["worst_margin"])
        return {"checks": [c.to_json() for c in self.checks], "summary": summary}

    def rows(self) -> List[Dict[str, Any]]:
        return [c.as_row() for c in self.checks]

    def write_json(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_json(), indent=2))


def _guarded(
    report: VerificationReport,
    name: str,
    params: Optional[ParamPair],
    p: Optional[float],
    r: Optional[float],
    body: Callable[[], None],
) -> None:
    try:
        body()
    except (AlphaBetaError, ArithmeticError, ValueError) as exc:
        report.add_error(name, params, p, r, exc)


def sample_params(rng: np.random.Generator, n: int, complex_fraction: float = 0.5) -> List[ParamPair]:
    """Random admissible pairs; real parts in ``[-0.45, 2]``, ``|Im| <= 1.5``."""
    out = []
    for i in range(n):
        re = rng.uniform(-0.45, 2.0, 2)
        im = rng.uniform(-1.5, 1.5, 2) if i < complex_fraction * n else np.zeros(2)
        out.append(ParamPair(complex(re[0], im[0]), complex(re[1], im[1])))
    return out


def _norms(f: BoundaryFunction, p_list: Iterable[float]) -> Dict[float, float]:
    n = get_config().norm_nodes
    return {p: f.lp_norm(p, n) for p in p_list}


def _cap_scale(params: ParamPair) -> Tuple[float, str]:
    """Factor applied to ``E B ||f||``.

    The cap bounds ``M_p`` only for ``|c_{alpha,beta}| <= 1``; above that
    the check uses ``|c| E B ||f||``, the limit of the sharp bound.
    """
    c_abs = abs(c_const(params))
    if c_abs <= 1.0 + 1e-12:
        return 1.0, ""
    return c_abs, f"|c| = {c_abs:.6g} > 1: cap scaled by |c|"


def run_t31(cfg: SuiteConfig) -> VerificationReport:
    """Integral means against the sharp bound and the radius-free cap."""
    report = VerificationReport()
    tol = cfg.tolerance_rel
    for f in cfg.boundaries():
        norms = _norms(f, cfg.p_list)
        for params in cfg.params():
            for r in cfg.radii:
                def body(params=params, r=r, f=f, norms=norms) -> None:
                    means = circle_means(params, f, r, cfg.p_list)
                    scale, detail = _cap_scale(params)
                    for p in cfg.p_list:
                        lhs = means[p]
                        report.add("t31", params, p, r, lhs,
                                   theorem31_rhs(params, p, r, norms[p]), tol)
                        report.add("t31_cap", params, p, r, lhs,
                                   scale * theorem31_cap(params, norms[p]), tol, detail)
                _guarded(report, "t31", params, None, r, body)
    report.extend(run_t31_equality(cfg))
    return report


def run_t31_equality(cfg: SuiteConfig) -> VerificationReport:
    """``f = 1``: equality for real ``alpha = beta``, the ratio elsewhere."""
    report = VerificationReport()
    one = ConstantBoundary(1.0)
    sharp = tuple(ParamPair(a, a) for a in SHARP_ALPHAS)
    for params in sharp + tuple(cfg.params()):
        for r in cfg.radii:
            def body(params=params, r=r) -> None:
                means = circle_means(params, one, r, cfg.p_list)
                for p in cfg.p_list:
                    lhs = means[p]
                    rhs = theorem31_rhs(params, p, r, 1.0)
                    if params in sharp:
                        report.add("t31_sharp", params, p, r, abs(rhs - lhs),
                                   cfg.tolerance_rel * rhs, detail="equality gap")
                    else:
                        report.add("t31_ratio", params, p, r, lhs, rhs, cfg.tolerance_rel,
                                   detail=f"ratio {lhs / rhs:.12g}")
            _guarded(report, "t31_sharp", params, None, r, body)
    return report


def _random_points(cfg: SuiteConfig, stream: int, count: int) -> np.ndarray:
    """One random angle per (boundary, params, radius) triple."""
    return cfg.rng(stream).uniform(0.0, 2.0 * np.pi, count)


def run_t32(cfg: SuiteConfig) -> VerificationReport:
    """First derivatives at a random point of each circle (``p > 1``)."""
    report = VerificationReport()
    tol = cfg.tolerance_rel
    p_list = [p for p in cfg.p_list if p > 1.0]
    boundaries = cfg.boundaries()
    angles = iter(_random_points(cfg, 32, len(boundaries) * len(cfg.params()) * len(cfg.radii)))
    for f in boundaries:
        norms = _norms(f, p_list)
        for params in cfg.params():
            for r in cfg.radii:
                z = r * np.exp(1j * next(angles))

                def body(params=params, r=r, z=z, f=f, norms=norms) -> None:
                    w_z = abs(extend_points(params, f, z, 1, 0))
                    w_zbar = abs(extend_points(params, f, z, 0, 1))
                    for p in p_list:
                        report.add("t32_dz", params, p, r, w_z,
                                   theorem32_rhs(params, p, r, norms[p]), tol)
                        report.add("t32_dzbar", params, p, r, w_zbar,
                                   theorem32_rhs(params, p, r, norms[p], conjugate=True), tol)
                _guarded(report, "t32", params, None, r, body)
    for params in cfg.params():
        for p in p_list:
            for r in cfg.radii:
                def consts(params=params, p=p, r=r) -> None:
                    b = theorem32_bounds(params, p, r)
                    report.add("t32_const", params, p, r, b.C_r, b.C_const, tol, "C_r <= C")
                    report.add("t32_const", params, p, r, b.D_r, b.D_const, tol, "D_r <= D")
                _guarded(report, "t32_const", params, p, r, consts)
    return report


@lru_cache(maxsize=256)
def _ckl(params: ParamPair, k: int, l: int) -> float:
    return estimate_Ckl(params, k, l)


T33_ORDERS = ((1, 0), (0, 1), (2, 0), (1, 1), (0, 2))


def run_t33(cfg: SuiteConfig) -> VerificationReport:
    """Integral means of ``d^k dbar^l w`` with ``1 <= k + l <= 2``."""
    report = VerificationReport()
    tol = cfg.tolerance_rel
    for f in cfg.boundaries():
        norms = _norms(f, cfg.p_list)
        for params in cfg.params():
            for k, l in T33_ORDERS:
                for r in cfg.radii:
                    def body(params=params, k=k, l=l, r=r, f=f, norms=norms) -> None:
                        ckl = _ckl(params, k, l)
                        means = circle_means(params, f, r, cfg.p_list, k, l)
                        for p in cfg.p_list:
                            report.add("t33", params, p, r, means[p],
                                       theorem33_rhs(params, p, r, k, l, ckl, norms[p]), tol,
                                       detail=f"k={k} l={l}")
                    _guarded(report, "t33", params, None, r, body)
    return report


def run_t44(cfg: SuiteConfig) -> VerificationReport:
    """Coefficient bounds for every mode ``1 <= k <= degree``."""
    report = VerificationReport()
    tol = cfg.tolerance_rel
    for f in cfg.boundaries():
        norms = _norms(f, cfg.p_list)
        for params in cfg.params():
            def body(params=params, f=f, norms=norms) -> None:
                coeffs = coeffs_from_boundary(params, f, cfg.degree)
                for p in cfg.p_list:
                    for k in range(1, cfg.degree + 1):
                        b = theorem44_bounds(params, p, k, norms[p])
                        ck, cmk = abs(coeffs[k]), abs(coeffs[-k])
                        detail = f"k={k}"
                        report.add("t44_i", params, p, None, ck, b.bound_ck, tol, detail)
                        report.add("t44_i", params, p, None, cmk, b.bound_cminusk, tol, detail)
                        weighted = (ck / abs(pochhammer_ratio(params.alpha + 1, k))
                                    + cmk / abs(pochhammer_ratio(params.beta + 1, k)))
                        report.add("t44_ii", params, p, None, weighted, b.combined, tol, detail)
            _guarded(report, "t44", params, None, None, body)
    report.extend(classical_coefficient_check(cfg))
    return report


def classical_coefficient_check(cfg: SuiteConfig, count: int = 100) -> VerificationReport:
    """``|a_k| + |b_k| <= (4/pi) ||f||_inf`` for harmonic ``w`` (``alpha = beta = 0``)."""
    report = VerificationReport()
    params = ParamPair(0.0, 0.0)
    rng = cfg.rng(44)
    n = get_config().norm_nodes
    for _ in range(count):
        f = random_trig_polynomial(rng, cfg.degree)
        sup = f.lp_norm(math.inf, n)
        coeffs = coeffs_from_boundary(params, f, cfg.degree)
        for k in range(1, cfg.degree + 1):
            lhs = abs(coeffs[k]) + abs(coeffs[-k])
            rhs = theorem44_bounds(params, math.inf, k, sup).combined
            report.add("classical_4_over_pi", params, math.inf, None, lhs, rhs,
                       cfg.tolerance_rel, f"k={k}")
    return report


def run_t45(cfg: SuiteConfig) -> VerificationReport:
    """Weighted first-derivative bound at a random point of each circle."""
    report = VerificationReport()
    tol = cfg.tolerance_rel
    boundaries = cfg.boundaries()
    angles = iter(_random_points(cfg, 45, len(boundaries) * len(cfg.params()) * len(cfg.radii)))
    for f in boundaries:
        norms = _norms(f, cfg.p_list)
        for params in cfg.params():
            a, b = params.alpha, params.beta
            for r in cfg.radii:
                z = r * np.exp(1j * next(angles))

                def body(params=params, r=r, z=z, f=f, norms=norms, a=a, b=b) -> None:
                    w_z = abs(extend_points(params, f, z, 1, 0))
                    w_zbar = abs(extend_points(params, f, z, 0, 1))
                    lhs = w_z / (abs(a + 1) + abs(b) * r) + w_zbar / (abs(b + 1) + abs(a) * r)
                    for p in cfg.p_list:
                        report.add("t45", params, p, r, lhs,
                                   theorem45_rhs(params, p, r, norms[p]), tol)
                _guarded(report, "t45", params, None, r, body)
    return report


def run_inequality_suite(cfg: SuiteConfig) -> VerificationReport:
    report = VerificationReport()
    for suite in (run_t31, run_t32, run_t33, run_t44, run_t45):
        logger.debug("running %s", suite.__name__)
        report.extend(suite(cfg))
    return report


def default_subharmonic_grid() -> EvalGrid:
    return EvalGrid(tuple(np.linspace(0.0, 0.98, 32)), 16)


def subharmonicity_check(
    params: ParamPair, grid: Optional[EvalGrid] = None, delta: float = 1e-2
) -> VerificationReport:
    """Sub-mean-value and Laplacian sign of ``F(-alpha, -beta; 1; |z|^2)``.

    Raises
    ------
    ParameterError
        Unless ``alpha, beta`` are real and positive, ``delta <= 1e-2`` and
        every grid radius is at most ``1 - 2 delta``.
    """
    if not (params.is_real and params.alpha.real > 0 and params.beta.real > 0):
        raise ParameterError(f"subharmonicity needs real positive alpha, beta; got {params}")
    if not 0.0 < delta <= 1e-2:
        raise ParameterError(f"delta = {delta} must lie in (0, 1e-2]")
    grid = grid or default_subharmonic_grid()
    if max(grid.radii) > 1.0 - 2.0 * delta:
        raise ParameterError(f"grid radii must not exceed 1 - 2 delta = {1.0 - 2.0 * delta}")
    a, b = -params.alpha, -params.beta

    def F(z: complex) -> float:
        return hyp2f1(a, b, 1.0, abs(z) ** 2).real

    report = VerificationReport()
    circle = delta * np.exp(1j * uniform_angles(16))
    for point in grid.points():
        r = abs(point)
        center = F(point)
        mean = float(np.mean([F(point + d) for d in circle]))
        report.add("submean", params, None, r, center, mean + SUBMEAN_SLACK)
        ring = [F(point + delta), F(point - delta), F(point + 1j * delta), F(point - 1j * delta)]
        lap = (sum(ring) - 4.0 * center) / delta ** 2
        value = 0.25 * (1.0 - r * r) * lap
        report.add("laplacian_sign", params, None, r, -value, LAPLACIAN_SLACK,
                   detail=f"(1/4)(1-|z|^2) Laplacian = {value:.6g}")
    return report


def run_subharmonic(cfg: SuiteConfig) -> VerificationReport:
    report = VerificationReport()
    for a in SUBHARMONIC_VALUES:
        for b in SUBHARMONIC_VALUES:
            report.extend(subharmonicity_check(ParamPair(a, b)))
    return report


def _random_disk_point(rng: np.random.Generator, r_max: float) -> complex:
    return r_max * math.sqrt(rng.uniform()) * complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))


def residual_suite(cfg: SuiteConfig) -> VerificationReport:
    """``|Delta_{alpha,beta} w| <= 1e-5 (1 + |w|)`` for quadrature, series
    and ``D``-transformed series solutions at random points."""
    report = VerificationReport()
    rng = cfg.rng(7)
    grid = cfg.params()
    for i in range(cfg.n_points):
        params = grid[i % len(grid)]
        f = random_trig_polynomial(rng, cfg.degree)
        z = _random_disk_point(rng, RESIDUAL_MAX_RADIUS)
        r = abs(z)

        def quadrature(params=params, f=f, z=z, r=r) -> None:
            res = operator_residual(params, f, z)
            w = extend_points(params, f, z)
            report.add("residual_quadrature", params, None, r, abs(res),
                       RESIDUAL_TOLERANCE * (1.0 + abs(w)))

        def series(params=params, f=f, z=z, r=r) -> None:
            coeffs = coeffs_from_boundary(params, f, cfg.degree)
            for name, seq in (("residual_series", coeffs), ("residual_D", apply_D(coeffs))):
                res, w = series_residual(params, seq, z)
                report.add(name, params, None, r, abs(res), RESIDUAL_TOLERANCE * (1.0 + abs(w)))

        _guarded(report, "residual_quadrature", params, None, r, quadrature)
        _guarded(report, "residual_series", params, None, r, series)
    return report


def sharpness_extremal(p: float, rho: float, conjugate: bool = False) -> SampledBoundary:
    """``f_rho(e^{is}) = (1-rho^2)^{2/(1-p)} (1+cos s)^{1/(p-1)} e^{is}``
    (``e^{-is}`` for the conjugate family), on 4096 samples."""
    if not p > 1.0 or math.isinf(p):
        raise ParameterError(f"p = {p} must satisfy 1 < p < inf")
    if not 0.0 < rho < 1.0:
        raise ParameterError(f"rho = {rho} must lie in (0, 1)")
    s = uniform_angles(SHARPNESS_SAMPLES)
    sign = -1.0 if conjugate else 1.0
    values = ((1.0 - rho ** 2) ** (2.0 / (1.0 - p))
              * (1.0 + np.cos(s)) ** (1.0 / (p - 1.0)) * np.exp(1j * sign * s))
    return SampledBoundary(values)


def holder_extremal(
    params: ParamPair, p: float, rho: float, conjugate: bool = False
) -> SampledBoundary:
    """Boundary data maximising ``|w_z(rho)|`` (``|w_zbar(rho)|``) for fixed ``||f||_p``.

    With ``k(t) = c e^{-it} u_z(rho e^{-it})`` (``c e^{it} u_zbar`` for the
    conjugate) the maximiser is ``|k|^{q-1} conj(k) / |k|``, and the
    resulting ratio is ``||k||_q``.
    """
    q = conjugate_exponent(p)
    if math.isinf(q):
        raise ParameterError("the extremal family needs p > 1")
    if not 0.0 < rho < 1.0:
        raise ParameterError(f"rho = {rho} must lie in (0, 1)")
    t = uniform_angles(SHARPNESS_SAMPLES)
    zeta = rho * np.exp(-1j * t)
    c = c_const(params)
    if conjugate:
        k = c * np.exp(1j * t) * u_dzbar(params, zeta)
    else:
        k = c * np.exp(-1j * t) * u_dz(params, zeta)
    mag = np.abs(k)
    phase = np.divide(np.conj(k), mag, out=np.zeros_like(k), where=mag > 0)
    return SampledBoundary(mag ** (q - 1.0) * phase)


def _derivative_ratio(params: ParamPair, f: BoundaryFunction, p: float, rho: float,
                      conjugate: bool) -> float:
    order = (0, 1) if conjugate else (1, 0)
    w = abs(extend_points(params, f, rho, *order))
    return (1.0 - rho ** 2) ** (1.0 + 1.0 / p) * w / f.lp_norm(p, SHARPNESS_SAMPLES)


def sharpness_experiment(
    params: Optional[ParamPair] = None,
    p: float = 2.0,
    rhos: Sequence[float] = SHARPNESS_RHOS,
    tolerance_rel: float = SHARPNESS_TOLERANCE,
) -> VerificationReport:
    """Normalised derivative ratio along ``rho -> 1``.

    Asserts that the extremal ratio stays below the bound, increases
    strictly with ``rho`` and ends within 10% of the limiting constant.
    The ratio of the closed-form family is recorded against the bound.
    """
    params = params or ParamPair(0.0, 0.0)
    report = VerificationReport()
    for conjugate in (False, True):
        tag = "dzbar" if conjugate else "dz"
        ratios = []
        for rho in rhos:
            bounds = theorem32_bounds(params, p, rho)
            limit = bounds.D_r if conjugate else bounds.C_r
            ratio = _derivative_ratio(params, holder_extremal(params, p, rho, conjugate),
                                      p, rho, conjugate)
            ratios.append(ratio)
            report.add(f"sharp_{tag}_bound", params, p, rho, ratio, limit * params.exp_factor,
                       tolerance_rel, f"ratio {ratio:.12g}")
            literal = _derivative_ratio(params, sharpness_extremal(p, rho, conjugate),
                                        p, rho, conjugate)
            report.add(f"sharp_{tag}_literal", params, p, rho, literal,
                       limit * params.exp_factor, tolerance_rel, f"ratio {literal:.12g}")
        for (r0, a), (r1, b) in zip(zip(rhos, ratios), zip(rhos[1:], ratios[1:])):
            report.add(f"sharp_{tag}_increasing", params, p, r1, a, b,
                       passed=a < b, detail=f"rho {r0} -> {r1}")
        final = theorem32_bounds(params, p, rhos[-1])
        target = (final.D_const if conjugate else final.C_const) * params.exp_factor
        report.add(f"sharp_{tag}_limit", params, p, rhos[-1], abs(ratios[-1] - target),
                   SHARPNESS_WINDOW * target, detail=f"limit {target:.12g}")
    return report


def run_sharpness(cfg: SuiteConfig) -> VerificationReport:
    return sharpness_experiment(tolerance_rel=max(cfg.tolerance_rel, SHARPNESS_TOLERANCE))


def run_all(cfg: SuiteConfig) -> VerificationReport:
    report = run_inequality_suite(cfg)
    for suite in (run_subharmonic, residual_suite, run_sharpness):
        report.extend(suite(cfg))
    return report


def run_suite(name: str, cfg: Optional[SuiteConfig] = None) -> VerificationReport:
    """Run a suite by name (``all``, ``t31`` ... ``sharpness``)."""
    cfg = cfg or SuiteConfig()
    report = get_suite(name)(cfg)
    logger.info("suite %s: %s", name, report.summary)
    return report
