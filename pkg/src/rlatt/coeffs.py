"""Model parameters and the scalar coefficient data of the lattice model.

Everything downstream is built from four families of numbers indexed by
partitions in the n x m box: hopping amplitudes, their Pieri-normalized
variants, the positive lattice weights defining the inner product, and the
eigenfunction normalization constants.
"""

import cmath
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .elliptic import ThetaEvaluator
from .errors import TruncationViolationError
from .partitions import LatticeBasis, pad, trim

__all__ = [
    "ModelParams",
    "hop_coefficient",
    "pieri_coefficient",
    "lattice_weight",
    "norm_constant",
    "weight_vector",
    "norm_vector",
]

DENOM_TOL = 1e-13


@dataclass(frozen=True)
class ModelParams:
    """Single source of truth for (n, m, g, p) and the derived quantities.

    The scaling alpha is locked to 2*pi/((n+1)*g + m), which is exactly the
    choice that makes hops off the bounded lattice carry zero amplitude.
    ``alpha_override`` exists only to probe behaviour off that regime (the
    verification suite uses it to demonstrate failures); leave it ``None``
    for all normal use.
    """

    n: int
    m: int
    g: float
    p: float = 0.0
    alpha_override: float | None = None

    def __post_init__(self):
        if not (isinstance(self.n, int) and isinstance(self.m, int)) or self.n < 1 or self.m < 1:
            raise ValueError(f"need integers n >= 1, m >= 1, got ({self.n}, {self.m})")
        if not self.g > 0:
            raise ValueError(f"coupling g must be positive, got {self.g}")
        if abs(self.p) > 0.99:
            raise ValueError(f"|p| = {abs(self.p)} exceeds the supported cap 0.99")

    @property
    def alpha(self) -> float:
        if self.alpha_override is not None:
            return self.alpha_override
        return 2.0 * math.pi / ((self.n + 1) * self.g + self.m)

    @property
    def period(self) -> float:
        """2*pi/alpha, the first positive zero of the bracket."""
        return 2.0 * math.pi / self.alpha

    @property
    def q(self) -> complex:
        return cmath.exp(1j * self.alpha)

    @property
    def t(self) -> complex:
        return cmath.exp(1j * self.alpha * self.g)

    def q_pow(self, x: float) -> complex:
        """q**x = exp(i*alpha*x) for real exponents, branch-free."""
        return cmath.exp(1j * self.alpha * x)

    @cached_property
    def theta(self) -> ThetaEvaluator:
        return ThetaEvaluator(self.alpha, self.p)


def _pair_range(n1: int):
    for j in range(n1):
        for k in range(j + 1, n1):
            yield j, k


def hop_coefficient(lam, strip, params: ModelParams) -> float:
    """Amplitude of the hop from lam along a 0/1 strip.

    Defined for any strip; the value is exactly 0.0 whenever the target
    composition fails to be weakly decreasing or its reduction leaves the
    bounded lattice, because a numerator bracket then sits on a zero.
    """
    n1 = params.n + 1
    if len(strip) != n1:
        raise ValueError(f"strip must have length {n1}, got {len(strip)}")
    lam_p = pad(lam, n1)
    th = params.theta
    g = params.g
    value = 1.0
    vanished = False
    for j, k in _pair_range(n1):
        dl = lam_p[j] - lam_p[k]
        den = th.bracket(dl + g * (k - j))
        if abs(den) < DENOM_TOL:
            raise TruncationViolationError(
                f"hop denominator vanished at pair ({j + 1},{k + 1}) for lam={trim(lam)}"
            )
        num_arg = dl + g * (k - j + strip[j] - strip[k])
        if th.is_zero_argument(num_arg):
            vanished = True
            continue
        value *= th.bracket(num_arg) / den
    return 0.0 if vanished else value


def pieri_coefficient(lam, strip, params: ModelParams) -> float:
    """Pieri-normalized hop amplitude for nu = lam + strip.

    Equals the hop amplitude times the ratio of normalization constants of
    the reduced target and the source.
    """
    n1 = params.n + 1
    if len(strip) != n1:
        raise ValueError(f"strip must have length {n1}, got {len(strip)}")
    lam_p = pad(lam, n1)
    nu_p = tuple(x + s for x, s in zip(lam_p, strip))
    th = params.theta
    g = params.g
    value = 1.0
    vanished = False
    for j, k in _pair_range(n1):
        if strip[j] - strip[k] != -1:
            continue
        for base, shift in ((nu_p[j] - nu_p[k], 1), (lam_p[j] - lam_p[k], -1)):
            den = th.bracket(base + g * (k - j))
            if abs(den) < DENOM_TOL:
                raise TruncationViolationError(
                    f"Pieri denominator vanished at pair ({j + 1},{k + 1}) for lam={trim(lam)}"
                )
            num_arg = base + g * (k - j + shift)
            if th.is_zero_argument(num_arg):
                vanished = True
                continue
            value *= th.bracket(num_arg) / den
    return 0.0 if vanished else value


def lattice_weight(lam, params: ModelParams) -> float:
    """Positive weight of a lattice point in the discrete inner product."""
    n1 = params.n + 1
    lam_p = pad(lam, n1)
    th = params.theta
    g = params.g
    value = 1.0
    for j, k in _pair_range(n1):
        dl = lam_p[j] - lam_p[k]
        den = th.bracket((k - j) * g)
        den_f = th.bracket_factorial(1.0 + (k - j - 1) * g, dl)
        if abs(den) < DENOM_TOL or abs(den_f) < DENOM_TOL:
            raise TruncationViolationError(
                f"weight denominator vanished at pair ({j + 1},{k + 1}) for lam={trim(lam)}"
            )
        value *= th.bracket(dl + (k - j) * g) / den
        value *= th.bracket_factorial((k - j + 1) * g, dl) / den_f
    if value <= 0.0:
        raise TruncationViolationError(
            f"weight of lam={trim(lam)} is non-positive ({value}); parameters are off the truncation regime"
        )
    return value


def norm_constant(mu, params: ModelParams) -> float:
    """Normalization constant relating eigenfunction values to the monic polynomials."""
    n1 = params.n + 1
    mu_p = pad(mu, n1)
    th = params.theta
    g = params.g
    value = 1.0
    for j, k in _pair_range(n1):
        dm = mu_p[j] - mu_p[k]
        den_f = th.bracket_factorial((k - j + 1) * g, dm)
        if abs(den_f) < DENOM_TOL:
            raise TruncationViolationError(
                f"norm denominator vanished at pair ({j + 1},{k + 1}) for mu={trim(mu)}"
            )
        value *= th.bracket_factorial((k - j) * g, dm) / den_f
    if value <= 0.0:
        raise TruncationViolationError(
            f"norm constant of mu={trim(mu)} is non-positive ({value}); parameters are off the truncation regime"
        )
    return value


def weight_vector(basis: LatticeBasis, params: ModelParams) -> np.ndarray:
    """Lattice weights over the whole basis, in basis order."""
    return np.array([lattice_weight(lam, params) for lam in basis.order])


def norm_vector(basis: LatticeBasis, params: ModelParams) -> np.ndarray:
    """Normalization constants over the whole basis, in basis order."""
    return np.array([norm_constant(mu, params) for mu in basis.order])
