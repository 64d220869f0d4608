"""Tests for graph residual operators and the inversion transform."""

import math

import numpy as np
import pytest

from slaglab.errors import BranchCutError
from slaglab.graphs import (
    ScalarField,
    complex_det_lu,
    expander_graph_residual,
    inversion_laplacian_pair,
    inversion_transform,
    linearized_expander_residual,
    polynomial_field,
    sl_graph_residual,
)


def _random_cubic_coeffs(rng, m):
    from slaglab.modes import monomials

    coeffs = {}
    for degree in (0, 1, 2, 3):
        for beta in monomials(m, degree):
            if rng.uniform() < 0.5:
                coeffs[beta] = float(rng.uniform(-0.5, 0.5))
    return coeffs


def _random_cubic(rng, m):
    return polynomial_field(_random_cubic_coeffs(rng, m), m)


def test_scalar_field_fd_matches_analytic():
    rng = np.random.default_rng(0)
    field = _random_cubic(rng, 3)
    fd_field = ScalarField(field.func, 3)
    for _ in range(10):
        x = rng.normal(size=3)
        np.testing.assert_allclose(
            fd_field.gradient(x), field.gradient(x), atol=1e-8
        )
        np.testing.assert_allclose(
            fd_field.hessian(x), field.hessian(x), atol=1e-6
        )


def test_sl_residual_zero_for_constant():
    field = polynomial_field({(0, 0, 0): 5.0}, 3)
    assert sl_graph_residual(field, np.zeros(3)) == 0.0


def test_sl_residual_conjugate_pair_cancellation():
    # Hessian eigenvalues (1, -1, 0): det (1+i)(1-i)(1) = 2 is real
    field = polynomial_field({(2, 0, 0): 0.5, (0, 2, 0): -0.5}, 3)
    rng = np.random.default_rng(1)
    for _ in range(5):
        assert abs(sl_graph_residual(field, rng.normal(size=3))) < 1e-13


def test_sl_residual_against_direct_determinant():
    rng = np.random.default_rng(2)
    for _ in range(25):
        field = _random_cubic(rng, 3)
        x = rng.normal(size=3)
        hess = field.hessian(x)
        oracle = float(np.imag(np.linalg.det(np.eye(3) + 1j * hess)))
        assert sl_graph_residual(field, x) == pytest.approx(oracle, abs=1e-10)


def test_complex_det_lu_matches_numpy():
    rng = np.random.default_rng(3)
    for _ in range(25):
        mat = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        log_abs, phase = complex_det_lu(mat)
        det = np.linalg.det(mat)
        assert log_abs == pytest.approx(math.log(abs(det)), abs=1e-10)
        delta = (phase - float(np.angle(det))) % (2 * math.pi)
        assert min(delta, 2 * math.pi - delta) < 1e-10


def test_expander_residual_zero_function():
    field = polynomial_field({}, 3)
    assert expander_graph_residual(field, 1.0, 0.0, np.zeros(3)) == 0.0


def test_expander_residual_alpha_zero_constant_phase():
    # an SL graph has phase 0, so the alpha = 0, c = 0 residual vanishes
    field = polynomial_field({(2, 0, 0): 0.5, (0, 2, 0): -0.5}, 3)
    assert abs(expander_graph_residual(field, 0.0, 0.0, np.array([1.0, -2.0, 0.5]))) < 1e-13


def test_expander_residual_linearization():
    # residual(eps g)/eps converges to the linearized operator applied to g
    rng = np.random.default_rng(4)
    coeffs = _random_cubic_coeffs(rng, 3)
    field = polynomial_field(coeffs, 3)
    x = rng.normal(size=3)
    lin = linearized_expander_residual(field, 0.8, x)
    for eps in (1e-3, 1e-4):
        scaled = polynomial_field({b: eps * c for b, c in coeffs.items()}, 3)
        ratio = expander_graph_residual(scaled, 0.8, 0.0, x) / eps
        assert ratio == pytest.approx(lin, abs=50 * eps**2 + 1e-9)


def test_branch_cut_detection():
    # three Hessian angles of pi/3 each put the determinant phase on the cut
    lam = math.tan(math.pi / 3)
    field = polynomial_field(
        {(2, 0, 0): lam / 2, (0, 2, 0): lam / 2, (0, 0, 2): lam / 2}, 3
    )
    with pytest.raises(BranchCutError):
        expander_graph_residual(field, 1.0, 0.0, np.zeros(3))


def test_inversion_constant_becomes_power_law():
    m = 3
    const = polynomial_field({(0,) * m: 2.0}, m)
    field = inversion_transform(const, m, "backward")
    rng = np.random.default_rng(5)
    for _ in range(10):
        x = rng.normal(size=m)
        r = np.linalg.norm(x)
        assert field.value(x) == pytest.approx(2.0 * r ** (2 - m), rel=1e-12)


def test_inversion_round_trip():
    rng = np.random.default_rng(6)
    m = 4
    field = _random_cubic(rng, m)
    double = inversion_transform(
        inversion_transform(field, m, "forward"), m, "backward"
    )
    for _ in range(100):
        x = rng.normal(size=m)
        if np.linalg.norm(x) < 0.1:
            continue
        assert double.value(x) == pytest.approx(field.value(x), abs=1e-10)


def test_inversion_rejects_origin():
    field = polynomial_field({(0, 0, 0): 1.0}, 3)
    transformed = inversion_transform(field, 3, "forward")
    with pytest.raises(ValueError):
        transformed.value(np.zeros(3))


def test_inversion_laplacian_identity():
    rng = np.random.default_rng(7)
    for m in (3, 4, 5):
        field = _random_cubic(rng, m)
        for _ in range(20):
            y = rng.normal(size=m)
            y *= rng.uniform(0.6, 1.2) / np.linalg.norm(y)
            lhs, rhs = inversion_laplacian_pair(field, m, y)
            assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-8)
