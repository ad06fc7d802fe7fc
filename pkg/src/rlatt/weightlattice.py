"""Cross-check of the hop amplitudes against the shifted-weight-lattice form.

The same coefficients arise as products over an index subset J evaluated at
a point of the dominant weight lattice shifted by the coupling-deformed Weyl
vector.  This module evaluates that bracket form directly on coordinates and
compares it with the partition-indexed amplitudes; agreement is the whole
point of the module.
"""

from itertools import combinations

import numpy as np

from .coeffs import ModelParams, hop_coefficient
from .errors import GenericityViolationError
from .partitions import LatticeBasis, enumerate_lattice, is_partition, pad, trim

__all__ = [
    "rho_shift",
    "translation_coefficient",
    "strip_from_subset",
    "crosscheck_hop_coefficients",
]

GENERICITY_TOL = 1e-10


def rho_shift(lam, params: ModelParams) -> np.ndarray:
    """Coordinates of a partition shifted by the coupling-deformed Weyl vector.

    Component j (1-based) is lam_j + g*(n/2 + 1 - j); the shift components
    sum to zero.
    """
    lam = trim(lam)
    if not is_partition(lam) or len(lam) > params.n:
        raise ValueError(f"{lam} is not a partition with at most {params.n} parts")
    n = params.n
    padded = pad(lam, n + 1)
    return np.array([padded[j] + params.g * (n / 2.0 + 1.0 - (j + 1)) for j in range(n + 1)])


def translation_coefficient(x, subset, params: ModelParams) -> float:
    """Bracket-form coefficient of the translation along an index subset.

    x is a coordinate vector of length n+1 and subset a collection of
    0-based indices.  Depends on x only through differences x_j - x_k.
    """
    x = np.asarray(x, dtype=float)
    n1 = params.n + 1
    if x.shape != (n1,):
        raise ValueError(f"coordinate vector must have length {n1}")
    inside = sorted(set(subset))
    if inside and not (0 <= inside[0] and inside[-1] < n1):
        raise ValueError(f"subset {inside} outside 0..{n1 - 1}")
    outside = [k for k in range(n1) if k not in inside]
    th = params.theta
    g = params.g
    value = 1.0
    vanished = False
    for j in inside:
        for k in outside:
            diff = x[j] - x[k]
            den = th.bracket(diff)
            if abs(den) < GENERICITY_TOL:
                raise GenericityViolationError(
                    f"denominator bracket vanished for pair ({j}, {k}) at x={x}"
                )
            if th.is_zero_argument(diff + g):
                vanished = True
                continue
            value *= th.bracket(diff + g) / den
    return 0.0 if vanished else value


def strip_from_subset(subset, n: int) -> tuple[int, ...]:
    """0/1 mask of length n+1 with ones on the subset."""
    inside = set(subset)
    return tuple(1 if j in inside else 0 for j in range(n + 1))


def crosscheck_hop_coefficients(params: ModelParams, basis: LatticeBasis | None = None) -> float:
    """Largest gap between the coordinate form and the partition form.

    Runs over every lattice point and every index subset (all strip sizes,
    including the trivial ones).
    """
    if basis is None:
        basis = enumerate_lattice(params.n, params.m)
    n1 = params.n + 1
    worst = 0.0
    for lam in basis.order:
        x = rho_shift(lam, params)
        for size in range(n1 + 1):
            for subset in combinations(range(n1), size):
                v = translation_coefficient(x, subset, params)
                b = hop_coefficient(lam, strip_from_subset(subset, params.n), params)
                worst = max(worst, abs(v - b))
    return worst
