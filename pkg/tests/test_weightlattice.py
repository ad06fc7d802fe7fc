import numpy as np
import pytest

from rlatt.coeffs import ModelParams, hop_coefficient
from rlatt.errors import GenericityViolationError
from rlatt.partitions import add_strip, enumerate_lattice, reduce_partition
from rlatt.weightlattice import (
    crosscheck_hop_coefficients,
    rho_shift,
    strip_from_subset,
    translation_coefficient,
)
from itertools import combinations


def test_rho_shift_examples():
    params = ModelParams(1, 1, 0.8, 0.0)
    assert rho_shift((), params) == pytest.approx([0.4, -0.4])
    assert rho_shift((1,), params) == pytest.approx([1.4, -0.4])
    params = ModelParams(2, 2, 1.0, 0.0)
    assert rho_shift((), params) == pytest.approx([1.0, 0.0, -1.0])
    assert np.sum(rho_shift((2, 1), params) - np.array([2.0, 1.0, 0.0])) == pytest.approx(0.0)
    with pytest.raises(ValueError):
        rho_shift((1, 1), ModelParams(1, 1, 1.0, 0.0))


def test_full_subset_gives_one():
    params = ModelParams(2, 2, 0.7, 0.5)
    x = rho_shift((1,), params)
    assert translation_coefficient(x, (0, 1, 2), params) == 1.0
    assert translation_coefficient(x, (), params) == 1.0


def test_vanishing_at_nondominant_direction():
    # moving the second coordinate up from the unshifted origin hits a zero
    params = ModelParams(1, 1, 1.0, 0.4)
    x = rho_shift((), params)
    assert translation_coefficient(x, (1,), params) == 0.0


def test_single_hop_identity():
    params = ModelParams(1, 1, 1.0, 0.3)
    x = rho_shift((), params)
    v = translation_coefficient(x, (0,), params)
    b = hop_coefficient((), (1, 0), params)
    assert v == pytest.approx(b, abs=1e-14)


@pytest.mark.parametrize(
    "n,m,g,p,tol",
    [
        (1, 1, 1.0, 0.4, 1e-13),
        (2, 2, 0.7, 0.5, 1e-12),
        (3, 2, 1.0, 0.3, 1e-12),
    ],
)
def test_crosscheck(n, m, g, p, tol):
    assert crosscheck_hop_coefficients(ModelParams(n, m, g, p)) < tol


def test_zero_sets_coincide():
    # the coordinate form vanishes exactly where the partition form does
    params = ModelParams(2, 2, 0.7, 0.5)
    basis = enumerate_lattice(2, 2)
    for lam in basis.order:
        x = rho_shift(lam, params)
        for size in range(4):
            for subset in combinations(range(3), size):
                v = translation_coefficient(x, subset, params)
                b = hop_coefficient(lam, strip_from_subset(subset, 2), params)
                assert (v == 0.0) == (b == 0.0)


def test_translation_invariance():
    params = ModelParams(2, 2, 0.7, 0.5)
    rng = np.random.default_rng(3)
    x = rho_shift((2, 1), params)
    for _ in range(5):
        shift = float(rng.uniform(-2, 2))
        for subset in ((0,), (0, 2), (1,)):
            a = translation_coefficient(x, subset, params)
            b = translation_coefficient(x + shift, subset, params)
            assert b == pytest.approx(a, rel=1e-12, abs=1e-12)


def test_genericity_violation():
    params = ModelParams(1, 1, 1.0, 0.2)
    with pytest.raises(GenericityViolationError):
        translation_coefficient(np.array([0.5, 0.5]), (0,), params)


def test_subset_mask():
    assert strip_from_subset((0, 2), 2) == (1, 0, 1)
    assert strip_from_subset((), 1) == (0, 0)
