import math

import numpy as np
from pytest import approx, mark, raises

from abharmonic.boundary import ConstantBoundary, FourierBoundary, random_trig_polynomial
from abharmonic.config import QUAD_NODES_ENV, get_config
from abharmonic.dirichlet import (
    EvalGrid,
    boundary_convergence_report,
    circle_means,
    extend,
    extend_circle,
    extend_derivative,
    extend_dz,
    extend_dzbar,
    extend_grid,
    extend_points,
    integral_mean,
    integral_mean_report,
    operator_residual,
    quadrature_nodes,
)
from abharmonic.errors import ParameterError
from abharmonic.kernel import ParamPair, c_const
from abharmonic.numdiff import wirtinger_fd
from abharmonic.specfun import hyp2f1
from abharmonic.verify import sample_params

PARAMS = (
    ParamPair(0.0, 0.0),
    ParamPair(1.0, 0.5),
    ParamPair(1 + 0.5j, 1 - 0.5j),
    ParamPair(0.5 + 0.5j, 0.2 - 0.3j),
)


@mark.parametrize("beta", (0.0, 0.5, 1 + 0.3j))
def test_constants_are_reproduced_when_alpha_vanishes(beta):
    z = np.array([0.0, 0.4j, -0.7 + 0.2j, 0.9])
    assert np.allclose(extend(ParamPair(0.0, beta), ConstantBoundary(1.0), z), 1.0, atol=1e-12)


def test_harmonic_extension_of_first_mode():
    z = 0.3 - 0.5j
    assert extend(ParamPair(0, 0), FourierBoundary({1: 1.0}), z) == approx(z, abs=1e-13)
    assert extend(ParamPair(0, 0), FourierBoundary({-2: 1.0}), z) == approx(z.conjugate() ** 2, abs=1e-13)


@mark.parametrize("params", PARAMS, ids=str)
def test_first_mode_matches_hypergeometric_form(params):
    z = 0.45 + 0.3j
    expected = (c_const(params) * (params.alpha + 1)
                * hyp2f1(-params.alpha, 1 - params.beta, 2, abs(z) ** 2) * z)
    assert extend(params, FourierBoundary({1: 1.0}), z) == approx(expected, rel=1e-11)


@mark.parametrize("params", PARAMS, ids=str)
def test_derivatives_match_finite_differences(params, rng):
    f = random_trig_polynomial(rng, 3)
    z = 0.35 - 0.25j
    fd = wirtinger_fd(lambda pts: extend_points(params, f, pts), z)
    w_z, w_zbar = extend_dz(params, f, z), extend_dzbar(params, f, z)
    assert abs(w_z - fd.dz) <= 1e-6 * (1 + abs(w_z))
    assert abs(w_zbar - fd.dzbar) <= 1e-6 * (1 + abs(w_zbar))


def test_second_derivative_matches_finite_differences(rng):
    params = ParamPair(0.5, 1.0)
    f = random_trig_polynomial(rng, 2)
    z = -0.2 + 0.4j
    fd = wirtinger_fd(lambda pts: extend_points(params, f, pts, 0, 1), z)
    exact = extend_derivative(params, f, z, 1, 1)
    assert abs(exact - fd.dz) <= 1e-5 * (1 + abs(exact))


@mark.parametrize("params", PARAMS, ids=str)
@mark.parametrize("n_theta", (64, 48))
def test_circle_matches_pointwise_evaluation(params, n_theta, rng):
    f = random_trig_polynomial(rng, 4)
    theta, values = extend_circle(params, f, 0.8, n_theta)
    assert theta.shape == values.shape == (n_theta,)
    direct = extend_points(params, f, 0.8 * np.exp(1j * theta))
    assert np.allclose(values, direct, rtol=1e-10, atol=1e-12)


def test_circle_derivative_matches_pointwise_evaluation(rng):
    params = ParamPair(1.0, 0.5)
    f = random_trig_polynomial(rng, 3)
    theta, values = extend_circle(params, f, 0.6, 32, k=1, l=1)
    direct = extend_points(params, f, 0.6 * np.exp(1j * theta), 1, 1)
    assert np.allclose(values, direct, rtol=1e-10, atol=1e-12)


def test_quadrature_nodes(monkeypatch):
    assert quadrature_nodes(0.5) == 512
    assert quadrature_nodes(0.99) == 8192
    assert quadrature_nodes(0.1, FourierBoundary({700: 1.0})) == 2048
    with raises(ParameterError):
        quadrature_nodes(0.9995)
    monkeypatch.setenv(QUAD_NODES_ENV, "1024")
    assert quadrature_nodes(0.5) == 1024


def test_evaluation_near_the_boundary_is_refused():
    with raises(ParameterError):
        extend(ParamPair(0, 0), ConstantBoundary(1.0), 0.9995)


def test_node_override_must_resolve_the_boundary():
    f = FourierBoundary({10: 1.0})
    with raises(ParameterError):
        extend_points(ParamPair(0, 0), f, 0.2, nodes=16)


def test_eval_grid():
    grid = EvalGrid.from_string("0:0.9:10,64")
    assert len(grid.radii) == 10
    assert grid.radii[-1] == approx(0.9)
    assert grid.points().shape == (640,)
    for bad in ("0:0.9,64", "0:1:3,8", "0.5:0.2:3,8", "0:0.5:3,0", "a:b:c,d"):
        with raises(ParameterError):
            EvalGrid.from_string(bad)


def test_extend_grid_frame(rng):
    f = random_trig_polynomial(rng, 2)
    frame = extend_grid(ParamPair(0.5, 0.5), f, EvalGrid((0.2, 0.5), 16))
    assert list(frame.columns) == ["r", "theta", "re", "im"]
    assert len(frame) == 32
    row = frame.iloc[17]
    w = extend(ParamPair(0.5, 0.5), f, row.r * np.exp(1j * row.theta))
    assert complex(row.re, row.im) == approx(w, rel=1e-10, abs=1e-12)


@mark.parametrize("params", PARAMS, ids=str)
@mark.parametrize("p", (1.0, 2.0, 3.0, math.inf))
def test_integral_means_stay_below_the_bound(params, p, rng):
    f = random_trig_polynomial(rng, 4)
    for r in (0.3, 0.9):
        report = integral_mean_report(params, f, r, p)
        assert report.passed, report


def test_integral_mean_equality_for_constants():
    params = ParamPair(0.5, 0.5)
    report = integral_mean_report(params, ConstantBoundary(1.0), 0.6, 2.0)
    assert report.value == approx(report.bound, rel=1e-10)
    assert report.margin == approx(0.0, abs=1e-9)


def test_integral_mean_rejects_small_exponent():
    with raises(ParameterError):
        integral_mean(ParamPair(0, 0), ConstantBoundary(1.0), 0.5, 0.5)


@mark.parametrize("params", (ParamPair(0, 0), ParamPair(0.5, 0.5)), ids=str)
def test_boundary_values_are_attained(params, rng):
    f = random_trig_polynomial(rng, 3)
    errors = boundary_convergence_report(params, f, (0.5, 0.9, 0.99), 128)
    assert errors[2] < errors[1] < errors[0]


@mark.parametrize("params", PARAMS, ids=str)
def test_operator_residual_vanishes(params, rng):
    f = random_trig_polynomial(rng, 3)
    z = 0.4 + 0.3j
    w = extend(params, f, z)
    assert abs(operator_residual(params, f, z)) <= 1e-5 * (1 + abs(w))


CLOSED_FORM_PARAMS = (
    ParamPair(0, 0), ParamPair(0.5, 0.5), ParamPair(1, 0.5),
    ParamPair(-0.3, 0.4), ParamPair(2, 1), ParamPair(0.25, 1.5),
    ParamPair(1 + 0.5j, 1 - 0.5j), ParamPair(0.5 + 0.5j, 0.2 - 0.3j), ParamPair(2 + 1j, 1),
    ParamPair(0.3j, -0.2 + 0.3j), ParamPair(-0.4 + 1j, 0.5), ParamPair(1.5 - 1j, 0.5 + 1.2j),
)


@mark.parametrize("params", CLOSED_FORM_PARAMS, ids=str)
def test_constant_boundary_closed_form(params):
    rng = np.random.default_rng(11)
    z = 0.95 * np.sqrt(rng.uniform(size=100)) * np.exp(2j * np.pi * rng.uniform(size=100))
    w = extend(params, ConstantBoundary(1.0), z)
    expected = [c_const(params) * hyp2f1(-params.alpha, -params.beta, 1, abs(p) ** 2) for p in z]
    assert np.allclose(w, expected, rtol=0, atol=1e-6)


def _circle_points(rng, count, r):
    return r * np.exp(2j * np.pi * rng.uniform(size=count))


@mark.parametrize("params", PARAMS[1:], ids=str)
def test_doubling_the_nodes_changes_nothing(params, rng):
    f = random_trig_polynomial(rng, 4)
    z = _circle_points(rng, 20, 0.9)
    n = quadrature_nodes(0.9, f)
    coarse = extend_points(params, f, z, nodes=n)
    fine = extend_points(params, f, z, nodes=2 * n)
    assert np.all(np.abs(coarse - fine) <= 1e-10 * (1 + np.abs(fine)))


@mark.parametrize("params", PARAMS[1:], ids=str)
def test_extension_is_linear(params, rng):
    f, g = random_trig_polynomial(rng, 3), random_trig_polynomial(rng, 4)
    a, b = 0.7 - 1.2j, -0.4 + 0.3j
    combined = FourierBoundary({
        m: a * f.coeffs.get(m, 0) + b * g.coeffs.get(m, 0) for m in set(f.coeffs) | set(g.coeffs)
    })
    z = _circle_points(rng, 20, 0.9)
    expected = a * extend(params, f, z) + b * extend(params, g, z)
    assert np.allclose(extend(params, combined, z), expected, rtol=1e-12, atol=1e-12)


def test_derivatives_on_random_cases(rng):
    cases = 0
    for params in sample_params(rng, 10):
        f = random_trig_polynomial(rng, 3)
        for z in 0.85 * np.sqrt(rng.uniform(size=10)) * np.exp(2j * np.pi * rng.uniform(size=10)):
            fd = wirtinger_fd(lambda pts: extend_points(params, f, pts), complex(z))
            w_z, w_zbar = extend_dz(params, f, z), extend_dzbar(params, f, z)
            assert abs(w_z - fd.dz) <= 1e-5 * (1 + abs(w_z)), (params, z)
            assert abs(w_zbar - fd.dzbar) <= 1e-5 * (1 + abs(w_zbar)), (params, z)
            cases += 1
    assert cases == 100


def test_sup_mean_uses_the_norm_grid(rng):
    params = ParamPair(1.0, 0.5)
    f = random_trig_polynomial(rng, 4)
    _, fine = extend_circle(params, f, 0.9, get_config().norm_nodes)
    _, coarse = extend_circle(params, f, 0.9)
    assert integral_mean(params, f, 0.9, math.inf) == np.max(np.abs(fine))
    assert integral_mean(params, f, 0.9, math.inf) >= np.max(np.abs(coarse)) * (1 - 1e-12)


def test_circle_means_share_one_evaluation_per_grid(rng):
    params = ParamPair(0.5 + 0.5j, 0.2 - 0.3j)
    f = random_trig_polynomial(rng, 3)
    means = circle_means(params, f, 0.6, (1.0, 2.0, math.inf), k=1, l=0)
    assert set(means) == {1.0, 2.0, math.inf}
    assert means[1.0] <= means[2.0] <= means[math.inf]
    _, values = extend_circle(params, f, 0.6, k=1)
    assert means[2.0] == approx(np.sqrt(np.mean(np.abs(values) ** 2)), rel=1e-12)
