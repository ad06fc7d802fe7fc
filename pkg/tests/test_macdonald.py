import cmath
import math
from pathlib import Path

import numpy as np
import pytest

from rlatt.coeffs import ModelParams
from rlatt.errors import DegenerateSpecializationError
from rlatt.macdonald import (
    SymmetricPoly,
    compare_trig,
    macdonald_coeffs,
    principal_eigenfunction_value,
    trig_joint_eigenvalue,
)
from rlatt.partitions import dominance_leq, enumerate_lattice, pad, weight


def apply_first_difference_operator(poly: SymmetricPoly, q, t, point):
    """Oracle: evaluate the q-difference operator on a polynomial pointwise."""
    point = list(point)
    n = len(point)
    total = 0j
    for i in range(n):
        coeff = 1.0 + 0j
        for j in range(n):
            if j != i:
                coeff *= (t * point[i] - point[j]) / (point[i] - point[j])
        shifted = point.copy()
        shifted[i] *= q
        total += coeff * poly.evaluate(shifted)
    return total


def operator_eigenvalue(mu, q, t, nvars):
    mu_p = pad(mu, nvars)
    return sum(q ** mu_p[i] * t ** (nvars - 1 - i) for i in range(nvars))


def test_single_box_and_columns_are_monomial():
    for q, t in ((0.3, 0.5), (0.7, 0.2)):
        assert macdonald_coeffs((1,), q, t, 3).coeffs == {(1,): 1.0 + 0j}
        for k in (1, 2, 3):
            poly = macdonald_coeffs((1,) * k, q, t, 3)
            assert poly.coeffs == {(1,) * k: 1.0 + 0j}


def test_row_two_in_two_variables():
    q, t = 0.3, 0.5
    poly = macdonald_coeffs((2,), q, t, 2)
    assert set(poly.coeffs) == {(2,), (1, 1)}
    assert poly.coeffs[(2,)] == pytest.approx(1.0)
    # (1+q)(1-t)/(1-qt) at (q,t) = (0.3, 0.5); equals 13/17
    assert poly.coeffs[(1, 1)] == pytest.approx(0.7647058823529411, abs=1e-14)
    assert poly.coeffs[(1, 1)] == pytest.approx((1 + q) * (1 - t) / (1 - q * t), abs=1e-14)


@pytest.mark.parametrize(
    "mu,nvars", [((2,), 2), ((2, 1), 3), ((3, 1), 3), ((2, 2), 4), ((3, 2, 1), 4)]
)
def test_eigen_equation_pointwise(mu, nvars):
    q, t = 0.3, 0.5
    poly = macdonald_coeffs(mu, q, t, nvars)
    eig = operator_eigenvalue(mu, q, t, nvars)
    rng = np.random.default_rng(5)
    for _ in range(4):
        point = rng.uniform(0.5, 2.0, size=nvars) + 1j * rng.uniform(0.1, 0.9, size=nvars)
        lhs = apply_first_difference_operator(poly, q, t, point)
        rhs = eig * poly.evaluate(point)
        assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_eigen_equation_at_unit_circle_parameters():
    params = ModelParams(2, 2, 0.7)
    q, t = params.q, params.t
    for mu in ((2, 1), (2, 2)):
        poly = macdonald_coeffs(mu, q, t, 3)
        eig = operator_eigenvalue(mu, q, t, 3)
        rng = np.random.default_rng(9)
        for _ in range(3):
            point = rng.uniform(0.5, 2.0, size=3) + 1j * rng.uniform(0.1, 0.9, size=3)
            lhs = apply_first_difference_operator(poly, q, t, point)
            rhs = eig * poly.evaluate(point)
            assert abs(lhs - rhs) < 1e-10 * max(1.0, abs(rhs))


def test_triangular_support():
    q, t = 0.4, 0.4**0.7
    for nvars, mus in ((3, [(2, 1), (3,), (2, 2)]), (4, [(2, 1, 1), (3, 1)])):
        for mu in mus:
            poly = macdonald_coeffs(mu, q, t, nvars)
            assert poly.coeffs[mu] == pytest.approx(1.0)
            for lam in poly.coeffs:
                assert weight(lam) == weight(mu)
                assert dominance_leq(lam, mu, nvars)
            assert poly.degree() == weight(mu)


def test_degenerate_specialization_raises():
    # q = 1 collides the eigenvalues of (2) and (1,1)
    with pytest.raises(DegenerateSpecializationError):
        macdonald_coeffs((2,), 1.0 + 0j, 0.5 + 0j, 2)


def test_trig_eigenvalue_examples():
    params = ModelParams(1, 1, 1.0)
    assert trig_joint_eigenvalue((), 1, params) == pytest.approx(1.0, abs=1e-14)
    assert trig_joint_eigenvalue((1,), 1, params) == pytest.approx(-1.0, abs=1e-14)
    with pytest.raises(ValueError):
        trig_joint_eigenvalue((), 2, params)


def test_trig_eigenvalue_conjugation_pairing():
    params = ModelParams(2, 2, 0.7)
    for nu in enumerate_lattice(2, 2).order:
        e1 = trig_joint_eigenvalue(nu, 1, params)
        e2 = trig_joint_eigenvalue(nu, 2, params)
        assert e2 == pytest.approx(e1.conjugate(), abs=1e-13)


def test_principal_value_at_origin():
    params = ModelParams(2, 2, 0.7)
    for nu in enumerate_lattice(2, 2).order:
        assert principal_eigenfunction_value((), nu, params) == pytest.approx(1.0, abs=1e-13)


def test_principal_values_match_2x2_diagonalization():
    params = ModelParams(1, 1, 1.0)
    # eigenvectors of [[0,1],[1,0]] normalized at the first entry
    assert principal_eigenfunction_value((1,), (), params) == pytest.approx(1.0, abs=1e-13)
    assert principal_eigenfunction_value((1,), (1,), params) == pytest.approx(-1.0, abs=1e-13)


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 2), (3, 2)])
@pytest.mark.parametrize("g", [0.5, 1.0, 1.3])
def test_compare_trig_grid(n, m, g):
    report = compare_trig(ModelParams(n, m, g, 0.0))
    assert report.eigenvalue_residual < 1e-8
    assert report.eigenfunction_residual < 1e-8


def test_compare_trig_requires_zero_nome():
    with pytest.raises(ValueError):
        compare_trig(ModelParams(2, 2, 1.0, 0.5))


def test_oracle_code_does_not_touch_lattice_operators():
    source = Path(__file__).resolve().parents[1].joinpath("src/rlatt/macdonald.py").read_text()
    head = source.split("def compare_trig", 1)[0]
    assert "operators" not in head
    assert "spectral" not in head
