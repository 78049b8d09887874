import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st
from pytest import approx, mark, raises

from abharmonic.errors import OrderTooHighError, ParameterError
from abharmonic.kernel import (
    DiskPoint,
    ParamPair,
    c_const,
    derivative_terms,
    estimate_Ckl,
    kernel_derivative,
    kernel_value,
    u_dz,
    u_dzbar,
    u_higher_deriv,
    u_modulus_bound,
    u_operator_residual,
    u_value,
)
from abharmonic.numdiff import wirtinger_fd
from abharmonic.verify import sample_params

PARAMS = (
    ParamPair(0.0, 0.0),
    ParamPair(0.5, 0.5),
    ParamPair(1.0, 0.5),
    ParamPair(1 + 0.5j, 1 - 0.5j),
    ParamPair(0.5 + 0.5j, 0.2 - 0.3j),
    ParamPair(-0.3, 0.4),
)
POINTS = (0.5, 0.3 + 0.4j, -0.6 + 0.1j, 0.2 - 0.7j)


def test_classical_kernel_value():
    assert kernel_value(ParamPair(0, 0), DiskPoint(0.5, 0.0)) == approx(3.0, rel=1e-14)


@mark.parametrize("z", POINTS)
def test_classical_kernel_is_poisson(z):
    expected = (1 - abs(z) ** 2) / abs(1 - z) ** 2
    assert kernel_value(ParamPair(0, 0), z) == approx(expected, rel=1e-14)


@mark.parametrize("params", PARAMS, ids=str)
def test_u_is_one_at_origin(params):
    assert u_value(params, 0.0) == approx(1.0)


@mark.parametrize("alpha beta expected".split(), (
    (0, 0, 1.0),
    (1, 0, 1.0),
    (0.5, 0.5, math.pi / 4),
    (1, 1, 0.5),
))
def test_c_const(alpha, beta, expected):
    assert c_const(ParamPair(alpha, beta)) == approx(expected, rel=1e-13)


@mark.parametrize("alpha beta".split(), ((-1, 0), (0.5, -2), (-0.6, -0.5), (-1 + 1e-12, 2)))
def test_invalid_params(alpha, beta):
    with raises(ParameterError):
        ParamPair(alpha, beta)


def test_param_pair_helpers():
    params = ParamPair(1 + 0.5j, 0.2)
    assert params.s == approx(1.2)
    assert not params.is_real
    assert params.exp_factor == approx(math.exp(0.25 * math.pi))
    assert params.swapped() == ParamPair(0.2, 1 + 0.5j)
    assert params.as_json() == {"alpha": [1.0, 0.5], "beta": [0.2, 0.0]}
    assert str(ParamPair(0.5, 0)) == "(0.5, 0)"


def test_disk_point():
    point = DiskPoint.from_complex(0.3 - 0.4j)
    assert point.r == approx(0.5)
    assert point.z == approx(0.3 - 0.4j)
    with raises(ParameterError):
        DiskPoint(1.0)
    with raises(ParameterError):
        u_value(ParamPair(0, 0), np.array([0.1, 1.2]))


def test_array_shape_is_preserved():
    values = u_value(ParamPair(0.5, 0.2), np.zeros((2, 3), dtype=complex))
    assert values.shape == (2, 3)
    assert np.allclose(values, 1.0)


@mark.parametrize("params", PARAMS, ids=str)
@mark.parametrize("z", POINTS)
def test_conjugate_symmetry(params, z):
    assert u_value(params.swapped(), z) == approx(u_value(params, complex(z).conjugate()), rel=1e-12)


@mark.parametrize("params", [p for p in PARAMS if p.is_real], ids=str)
@mark.parametrize("z", POINTS)
def test_conjugate_of_real_kernel_swaps_parameters(params, z):
    assert complex(u_value(params, z)).conjugate() == approx(u_value(params.swapped(), z), rel=1e-12)


@mark.parametrize("params", PARAMS, ids=str)
@mark.parametrize("z", POINTS)
def test_first_derivatives_match_finite_differences(params, z):
    fd = wirtinger_fd(lambda pts: u_value(params, pts), z)
    exact_z, exact_zbar = u_dz(params, z), u_dzbar(params, z)
    assert abs(exact_z - fd.dz) <= 1e-6 * (1 + abs(exact_z))
    assert abs(exact_zbar - fd.dzbar) <= 1e-6 * (1 + abs(exact_zbar))


@mark.parametrize("params", PARAMS, ids=str)
def test_symbolic_first_derivatives_match_closed_forms(params):
    z = np.array(POINTS, dtype=complex)
    assert np.allclose(derivative_terms(params, 1, 0).evaluate(z), u_dz(params, z), rtol=1e-12)
    assert np.allclose(derivative_terms(params, 0, 1).evaluate(z), u_dzbar(params, z), rtol=1e-12)


@mark.parametrize("params", PARAMS[1:5], ids=str)
@mark.parametrize("k l".split(), ((1, 1), (2, 0), (2, 1), (1, 2), (3, 0)))
def test_higher_derivatives_match_finite_differences(params, k, l):
    z = 0.3 + 0.2j
    # step once more in z from the order (k - 1, l)
    fd = wirtinger_fd(lambda pts: u_higher_deriv(params, pts, k - 1, l), z)
    exact = u_higher_deriv(params, z, k, l)
    assert abs(exact - fd.dz) <= 1e-5 * (1 + abs(exact))


def test_kernel_derivative_scales_by_c():
    params = ParamPair(0.5, 1.0)
    z = 0.4 - 0.2j
    assert kernel_derivative(params, z, 1, 1) == approx(
        c_const(params) * u_higher_deriv(params, z, 1, 1), rel=1e-12
    )


def test_derivative_order_limits():
    params = ParamPair(0.5, 0.5)
    with raises(OrderTooHighError):
        u_higher_deriv(params, 0.1, 3, 2)
    with raises(ParameterError):
        u_higher_deriv(params, 0.1, -1, 0)
    assert isinstance(OrderTooHighError("x"), ParameterError)


@mark.parametrize("params", PARAMS, ids=str)
def test_canonical_function_solves_the_equation(params):
    z = np.array(POINTS, dtype=complex)
    residual = u_operator_residual(params, z)
    scale = 1 + np.abs(u_value(params, z)) / (1 - np.abs(z) ** 2) ** 2
    assert np.all(np.abs(residual) <= 1e-10 * scale)


points = st.builds(
    lambda r, t: r * complex(math.cos(t), math.sin(t)),
    st.floats(0.0, 0.95), st.floats(0.0, 2 * math.pi),
)


@given(z=points, index=st.integers(0, len(PARAMS) - 1))
def test_modulus_bound(z, index):
    params = PARAMS[index]
    assert abs(u_value(params, z)) <= u_modulus_bound(params, z) * (1 + 1e-12)


def test_estimate_ckl_trivial_order():
    assert estimate_Ckl(ParamPair(1, 2), 0, 0) == 1.0


@mark.parametrize("params", PARAMS[:4], ids=str)
def test_estimate_ckl_grows_with_refinement(params):
    coarse = estimate_Ckl(params, 1, 0, n_radii=16, n_angles=64, r_max=0.9)
    fine = estimate_Ckl(params, 1, 0, n_radii=31, n_angles=128, r_max=0.9)
    assert fine >= coarse * (1 - 1e-12) > 0


def test_estimate_ckl_classical_first_order():
    # (1-|z|^2) |u_z| / |u| = |1 - conj z| / |1 - z| for the Poisson kernel
    value = estimate_Ckl(ParamPair(0, 0), 1, 0, n_radii=16, n_angles=64, r_max=0.9)
    assert value == approx(1.0, rel=1e-12)


def _disk_points(rng, count, r_max):
    return r_max * np.sqrt(rng.uniform(size=count)) * np.exp(2j * np.pi * rng.uniform(size=count))


def test_modulus_bound_on_random_parameters(rng):
    z = _disk_points(rng, 10_000, 0.99)
    pairs = sample_params(rng, 20)
    assert sum(p.is_real for p in pairs) == 10
    for params in pairs:
        assert np.all(np.abs(u_value(params, z)) <= u_modulus_bound(params, z) * (1 + 1e-12)), params


def test_first_derivatives_on_random_cases(rng):
    cases = [(params, z) for params in sample_params(rng, 10) for z in _disk_points(rng, 10, 0.85)]
    assert len(cases) == 100
    for params, z in cases:
        fd = wirtinger_fd(lambda pts: u_value(params, pts), complex(z))
        exact_z, exact_zbar = u_dz(params, z), u_dzbar(params, z)
        assert abs(exact_z - fd.dz) <= 1e-6 * (1 + abs(exact_z)), (params, z)
        assert abs(exact_zbar - fd.dzbar) <= 1e-6 * (1 + abs(exact_zbar)), (params, z)
