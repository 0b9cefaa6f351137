import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bergcauchy.series import (
    BoundaryFunction,
    CoefficientSeries,
    LaurentTail,
    b2_disk_norm,
    b21_exterior_norm,
    boundary_to_modes,
    evaluate,
    mode_numbers,
    modes_to_samples,
    rho_seminorm,
)
from conftest import polar_oracle

complexes = st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False)
coeff_lists = st.lists(complexes, min_size=1, max_size=12)


def test_b2_norm_constant():
    assert b2_disk_norm(CoefficientSeries([1])) == pytest.approx(1.7724538509, abs=1e-10)


def test_b2_norm_z():
    assert b2_disk_norm(CoefficientSeries([0, 1])) == pytest.approx(math.sqrt(math.pi / 2), rel=1e-15)


def test_b2_norm_against_disk_oracle():
    oracle = polar_oracle(lambda z: abs(1 + 2j * z) ** 2).real
    assert oracle == pytest.approx(3 * math.pi, rel=1e-12)
    assert b2_disk_norm(CoefficientSeries([1, 2j])) == pytest.approx(math.sqrt(3 * math.pi), rel=1e-14)


@pytest.mark.parametrize("k", range(33))
def test_monomial_identity_chain(k):
    assert b2_disk_norm(CoefficientSeries.monomial(k)) ** 2 * (k + 1) == pytest.approx(math.pi, rel=1e-15)


def test_trailing_zeros_do_not_matter():
    assert b2_disk_norm(CoefficientSeries([1, 2, 0, 0])) == b2_disk_norm(CoefficientSeries([1, 2]))
    assert b21_exterior_norm(LaurentTail([1, 2, 0, 0])) == b21_exterior_norm(LaurentTail([1, 2]))


@pytest.mark.parametrize(
    "coeffs, expected",
    [([1], math.sqrt(math.pi)), ([0, 1], math.sqrt(2 * math.pi)), ([], 0.0), ([0, 0], 0.0)],
)
def test_b21_exterior_norm(coeffs, expected):
    assert b21_exterior_norm(LaurentTail(coeffs)) == pytest.approx(expected, rel=1e-15, abs=0)


def test_b21_exterior_norm_rejects_center():
    with pytest.raises(ValueError):
        b21_exterior_norm(LaurentTail([1], center=0.5))


def test_b21_norm_matches_annulus_oracle_plus_tail():
    # R = 4: iint_{1<|z|<4} |gamma'|^2 plus the closed-form remainder beyond R
    F = np.array([1.0, -0.5j, 0.25 + 0.1j])
    gamma = LaurentTail(F)
    dgamma = gamma.derivative()
    R = 4.0
    inner = polar_oracle(lambda z: abs(dgamma(z)) ** 2, 1.0, R).real
    # |gamma'|^2 integrated over |z| > R: cross terms vanish, k^2|F_k|^2 * pi R^{-2k} / k
    k = np.arange(1, F.size + 1)
    tail = float(np.sum(math.pi * k * np.abs(F) ** 2 * R ** (-2.0 * k)))
    assert inner + tail == pytest.approx(b21_exterior_norm(gamma) ** 2, abs=1e-8)


def test_rho_single_modes():
    M = 64
    assert rho_seminorm(BoundaryFunction.from_callable(lambda t: np.exp(-1j * t), M)) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    for k in range(0, 5):
        assert rho_seminorm(BoundaryFunction.from_callable(lambda t, k=k: np.exp(1j * k * t), M)) == pytest.approx(0.0, abs=1e-14)
    f = BoundaryFunction.from_callable(lambda t: 3 * np.exp(-2j * t), M)
    assert rho_seminorm(f) == pytest.approx(math.sqrt(18 * math.pi), rel=1e-14)
    # same value by the exterior route: F = -3/z^2
    assert b21_exterior_norm(LaurentTail([0, -3])) == pytest.approx(math.sqrt(18 * math.pi), rel=1e-15)


def test_rho_ignores_nonnegative_modes():
    f = BoundaryFunction.from_mode_dict({-1: 1.0, 0: 5.0, 3: 2j}, 32)
    g = BoundaryFunction.from_mode_dict({-1: 1.0}, 32)
    assert rho_seminorm(f) == rho_seminorm(g)


def test_modes_of_exp_minus_itheta():
    f = boundary_to_modes(BoundaryFunction.from_callable(lambda t: np.exp(-1j * t), 8))
    assert f.canonical == "modes"
    expected = np.zeros(8, dtype=complex)
    expected[-1] = 1.0
    np.testing.assert_allclose(f.values, expected, atol=1e-15)
    assert f.mode(-1) == pytest.approx(1.0)


def test_modes_of_constant():
    f = boundary_to_modes(BoundaryFunction(np.full(8, 5.0)))
    assert f.mode(0) == pytest.approx(5.0)
    assert np.max(np.abs(f.values[1:])) < 1e-15


def test_modes_against_naive_dft():
    rng = np.random.default_rng(7)
    M, deg = 64, 10
    ks = np.arange(-deg, deg + 1)
    c = rng.standard_normal(ks.size) + 1j * rng.standard_normal(ks.size)
    theta = 2 * np.pi * np.arange(M) / M
    samples = (c[None, :] * np.exp(1j * np.outer(theta, ks))).sum(axis=1)
    got = boundary_to_modes(BoundaryFunction(samples))
    # O(M^2) direct sum
    for k in mode_numbers(M):
        naive = sum(samples[j] * np.exp(-1j * k * theta[j]) for j in range(M)) / M
        assert abs(got.mode(int(k)) - naive) < 1e-12
    for k, ck in zip(ks, c):
        assert abs(got.mode(int(k)) - ck) < 1e-12


def test_mode_numbers_range():
    assert list(mode_numbers(8)) == [0, 1, 2, 3, 4, -3, -2, -1]
    assert list(mode_numbers(5)) == [0, 1, 2, -2, -1]


def test_boundary_function_needs_two_samples():
    with pytest.raises(ValueError):
        BoundaryFunction([1.0])


def test_evaluate_examples():
    assert evaluate(CoefficientSeries([1, 1]), 0.5) == pytest.approx(1.5)
    assert evaluate(LaurentTail([1]), 2.0) == pytest.approx(0.5)
    assert evaluate(LaurentTail([0, 1], center=1j), 1 + 1j) == pytest.approx(1.0)


def test_evaluate_rejects_pole():
    with pytest.raises(ZeroDivisionError):
        evaluate(LaurentTail([1], center=0.5), 0.5)


def test_evaluate_vectorized():
    z = np.array([0.1, 0.5j, -0.3])
    g = CoefficientSeries([1, 2, 3])
    np.testing.assert_allclose(g(z), 1 + 2 * z + 3 * z**2)


def test_recentered_matches_original():
    gamma = LaurentTail([1.0, 0.5j, -0.25], center=0.1)
    re = gamma.recentered(0j)
    z = 2.0 * np.exp(1j * np.linspace(0, 6, 7))
    np.testing.assert_allclose(re(z), gamma(z), atol=1e-15)


def test_derivative_of_tail():
    gamma = LaurentTail([1.0, 2.0], center=0.3)
    z, h = 1.7 + 0.4j, 1e-5
    fd = (gamma(z + h) - gamma(z - h)) / (2 * h)
    assert abs(gamma.derivative()(z) - fd) < 1e-9


@pytest.mark.parametrize(
    "obj",
    [
        CoefficientSeries([1, 2j, -0.5]),
        LaurentTail([1, 0.5j], center=0.1 - 0.2j),
        BoundaryFunction([1, 2, 3j, 4]),
        BoundaryFunction([1, 0, 0, 1j], "modes"),
    ],
)
def test_json_roundtrip(obj):
    data = json.loads(json.dumps(obj.to_dict()))
    back = type(obj).from_dict(data)
    a = getattr(obj, "coeffs", getattr(obj, "values", None))
    b = getattr(back, "coeffs", getattr(back, "values", None))
    np.testing.assert_array_equal(a, b)
    assert getattr(obj, "center", None) == getattr(back, "center", None)
    assert getattr(obj, "canonical", None) == getattr(back, "canonical", None)


@settings(max_examples=50, deadline=None)
@given(st.lists(complexes, min_size=2, max_size=64))
def test_parseval_roundtrip(values):
    f = BoundaryFunction(values)
    back = modes_to_samples(boundary_to_modes(f))
    a, b = rho_seminorm(f), rho_seminorm(back)
    assert abs(a - b) <= 1e-12 * max(a, 1e-300) + 1e-300
    np.testing.assert_allclose(back.values, f.values, atol=1e-12 * (1 + np.max(np.abs(f.values))))


@settings(max_examples=50, deadline=None)
@given(coeff_lists, st.floats(min_value=-1e3, max_value=1e3, allow_nan=False))
def test_norm_homogeneity(coeffs, s):
    g, gam = CoefficientSeries(coeffs), LaurentTail(coeffs)
    f = BoundaryFunction(np.pad(np.array(coeffs, dtype=complex), (0, 2)), "modes")
    for norm, a, b in (
        (b2_disk_norm, g, CoefficientSeries(np.array(coeffs) * s)),
        (b21_exterior_norm, gam, LaurentTail(np.array(coeffs) * s)),
        (rho_seminorm, f, BoundaryFunction(f.values * s, "modes")),
    ):
        assert norm(b) == pytest.approx(abs(s) * norm(a), rel=1e-12, abs=1e-300)
