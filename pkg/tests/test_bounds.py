import math

import mpmath
import numpy as np
from pytest import approx, mark, raises

from abharmonic.bounds import (
    BoundSpec,
    Theorem,
    b_const,
    c_q,
    conjugate_exponent,
    mean_hypergeometric,
    theorem31_cap,
    theorem31_rhs,
    theorem32_bounds,
    theorem32_rhs,
    theorem33_rhs,
    theorem44_bounds,
    theorem45_rhs,
)
from abharmonic.errors import ParameterError
from abharmonic.kernel import ParamPair, c_const, estimate_Ckl

CLASSICAL = ParamPair(0, 0)


@mark.parametrize("p q".split(), ((2, 2), (4, 4 / 3), (1, math.inf), (math.inf, 1)))
def test_conjugate_exponent(p, q):
    assert conjugate_exponent(p) == approx(q)


@mark.parametrize("p", (0.5, -1, math.nan))
def test_conjugate_exponent_rejects(p):
    with raises(ParameterError):
        conjugate_exponent(p)


@mark.parametrize("q expected".split(), (
    (1, 2 / math.pi),
    (2, 1 / math.sqrt(2)),
    (4, (3 / 8) ** 0.25),
    (math.inf, 1.0),
))
def test_c_q_closed_forms(q, expected):
    assert c_q(q) == approx(expected, rel=1e-12)


@mark.parametrize("q", (1.5, 3.0, 7.25))
def test_c_q_matches_mpmath(q):
    integral = mpmath.quad(lambda t: abs(mpmath.cos(t)) ** q, [0, mpmath.pi / 2])
    expected = float((4 * integral / (2 * mpmath.pi)) ** (1 / q))
    assert c_q(q) == approx(expected, rel=1e-8)


@mark.parametrize("k", (2, 3, 7))
def test_c_q_does_not_depend_on_mode(k):
    assert c_q(3.0, k) == approx(c_q(3.0, 1), rel=1e-12)


def test_c_q_rejects():
    with raises(ParameterError):
        c_q(2.0, 0)
    with raises(ParameterError):
        c_q(0.5)


def test_classical_integral_mean_bound():
    assert theorem31_rhs(CLASSICAL, 2.0, 0.7, 1.5) == approx(1.5)
    assert b_const(CLASSICAL) == approx(1.0)


def test_radius_free_cap_constant():
    assert b_const(ParamPair(0.5, 0.5)) == approx(4 / math.pi, rel=1e-13)
    assert theorem31_cap(ParamPair(0.5, 0.5), 2.0) == approx(8 / math.pi, rel=1e-13)


@mark.parametrize("alpha", (0.5, 1.0, 0.3 + 0.4j))
def test_integral_mean_bound_approaches_cap(alpha):
    params = ParamPair(alpha, 0.5)
    values = [theorem31_rhs(params, 2.0, r, 1.0) for r in (0.1, 0.5, 0.9, 0.999)]
    assert all(a <= b for a, b in zip(values, values[1:]))
    assert values[-1] <= theorem31_cap(params, 1.0)


def test_exp_factor_enters_the_bound():
    params = ParamPair(0.5 + 0.5j, 0.5 - 0.5j)
    plain = abs(c_const(params)) * mean_hypergeometric(params, 0.4)
    assert theorem31_rhs(params, 2.0, 0.4, 1.0) / plain == approx(math.exp(0.5 * math.pi), rel=1e-6)


def test_classical_derivative_constants():
    bounds = theorem32_bounds(CLASSICAL, 2.0, 0.5)
    assert bounds.C_r == approx(math.sqrt(1.25), rel=1e-13)
    assert bounds.D_r == approx(math.sqrt(1.25), rel=1e-13)
    assert bounds.C_const == approx(math.sqrt(2), rel=1e-13)
    assert bounds.D_const == approx(math.sqrt(2), rel=1e-13)
    assert theorem32_rhs(CLASSICAL, 2.0, 0.5, 1.0) == approx(math.sqrt(1.25) / 0.75 ** 1.5)


@mark.parametrize("params", (CLASSICAL, ParamPair(1.0, 0.5), ParamPair(1 + 0.5j, 1 - 0.5j)), ids=str)
@mark.parametrize("p", (1.5, 2.0, 4.0, math.inf))
def test_radius_dependent_constants_stay_below_limits(params, p):
    for r in (0.0, 0.5, 0.9, 0.99):
        b = theorem32_bounds(params, p, r)
        assert b.C_r <= b.C_const * (1 + 1e-12)
        assert b.D_r <= b.D_const * (1 + 1e-12)


def test_derivative_bound_needs_p_above_one():
    with raises(ParameterError):
        theorem32_bounds(CLASSICAL, 1.0, 0.5)


def test_higher_derivative_bound():
    assert theorem33_rhs(CLASSICAL, 2.0, 0.5, 1, 1, 3.0, 1.0) == approx(3.0 / 0.75 ** 2)
    with raises(ParameterError):
        theorem33_rhs(CLASSICAL, 2.0, 0.5, 1, 0, 0.0, 1.0)


def test_coefficient_bounds():
    bounds = theorem44_bounds(CLASSICAL, 2.0, 3, 1.0)
    assert bounds.bound_ck == approx(1.0)
    assert bounds.bound_cminusk == approx(1.0)
    assert bounds.combined == approx(math.sqrt(2), rel=1e-12)
    assert theorem44_bounds(CLASSICAL, math.inf, 1, 1.0).combined == approx(4 / math.pi, rel=1e-12)
    with raises(ParameterError):
        theorem44_bounds(CLASSICAL, 2.0, 0, 1.0)


@mark.parametrize("r", (0.0, 0.3, 0.8))
def test_weighted_derivative_bound_classical(r):
    assert theorem45_rhs(CLASSICAL, math.inf, r, 1.0) == approx(2 / (1 - r * r), rel=1e-13)
    assert theorem45_rhs(CLASSICAL, 1.0, r, 1.0) == approx(2 / (1 - r) ** 2, rel=1e-13)


def test_bound_spec_evaluate():
    result = BoundSpec(Theorem.T45, CLASSICAL, math.inf, 0.5).evaluate()
    assert result["theorem"] == "T45"
    assert result["rhs_value"] == approx(2 / 0.75)
    assert result["components"]["c_abs"] == approx(1.0)
    assert "w_z" in result["lhs_spec"]


def test_bound_spec_parses_names():
    spec = BoundSpec("T44ii", CLASSICAL, 2.0)
    assert spec.theorem is Theorem.T44II
    assert spec.evaluate(2.0)["rhs_value"] == approx(2 * math.sqrt(2))
    with raises(ValueError):
        BoundSpec("T99", CLASSICAL)
    with raises(ParameterError):
        BoundSpec(Theorem.T31, CLASSICAL, 2.0, 1.0)


def test_bound_spec_estimates_derivative_constant():
    params = ParamPair(0.5, 0.5)
    spec = BoundSpec(Theorem.T33, params, 2.0, 0.5, 1, 1)
    result = spec.evaluate()
    assert result["components"]["C_kl"] == approx(estimate_Ckl(params, 1, 1))
    assert spec.evaluate(ckl=2.0)["rhs_value"] == approx(
        theorem31_rhs(params, 2.0, 0.5, 1.0) * 2.0 / 0.75 ** 2
    )


@mark.parametrize("q", (1.0, 1.5, 2.0, 4.0))
def test_c_q_is_at_most_one_for_every_mode(q):
    values = [c_q(q, k) for k in range(1, 9)]
    assert max(values) <= 1.0
    assert max(values) - min(values) <= 1e-10


@mark.parametrize("params", (CLASSICAL, ParamPair(1.0, 0.5), ParamPair(1 + 0.5j, 1 - 0.5j),
                             ParamPair(-0.3, 0.4)), ids=str)
@mark.parametrize("p", (1.0, 2.0, 4.0, math.inf))
def test_weighted_derivative_bound_grows_with_r(params, p):
    values = [theorem45_rhs(params, p, r, 1.0) for r in np.linspace(0.0, 0.99, 50)]
    assert all(a <= b for a, b in zip(values, values[1:]))


@mark.parametrize("params", (CLASSICAL, ParamPair(0.5, 0.5), ParamPair(1 + 0.5j, 1 - 0.5j)), ids=str)
@mark.parametrize("p", (1.0, 2.0, math.inf))
@mark.parametrize("r", (0.0, 0.4, 0.9))
def test_order_zero_derivative_bound_is_the_mean_bound(params, p, r):
    assert theorem33_rhs(params, p, r, 0, 0, 1.0, 2.5) == theorem31_rhs(params, p, r, 2.5)
