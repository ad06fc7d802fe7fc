"""Dense matrices of the commuting difference operators and their algebra checks.

The hop operator of order r moves a lattice point along every admissible
vertical r-strip; the matrices are small and dense.  The weight-conjugated
form M = W^{1/2} A W^{-1/2} turns the adjoint relation into a plain
transpose, which is what the residual checks below exercise.
"""

from dataclasses import dataclass

import numpy as np

from .coeffs import ModelParams, hop_coefficient, weight_vector
from .errors import TruncationViolationError
from .partitions import (
    LatticeBasis,
    add_strip,
    enumerate_lattice,
    reduce_partition,
    vertical_strips,
)

__all__ = [
    "LatticeOperator",
    "build_hop_operator",
    "build_symmetric_operator",
    "build_antisymmetric_operator",
    "symmetrize",
    "commutator_residual",
    "adjoint_residual",
    "transpose_residual",
    "weighted_norm",
]


@dataclass(frozen=True)
class LatticeOperator:
    """A dense operator over the ordered lattice basis.

    kind is one of "D" (hop), "C" (symmetric combination), "S"
    (antisymmetric combination) or "M" (weight-conjugated hop).
    """

    kind: str
    r: int
    basis: LatticeBasis
    matrix: np.ndarray

    @property
    def label(self) -> str:
        return f"{self.kind}{self.r}"


def build_hop_operator(r: int, params: ModelParams, basis: LatticeBasis | None = None) -> LatticeOperator:
    """Matrix of the order-r hop operator over the bounded lattice.

    Row lam collects the amplitudes of all r-strips whose reduced target
    stays on the lattice; distinct strips hitting the same target accumulate.
    """
    if not 1 <= r <= params.n:
        raise ValueError(f"operator order {r} outside 1..{params.n}")
    if basis is None:
        basis = enumerate_lattice(params.n, params.m)
    size = len(basis)
    mat = np.zeros((size, size))
    strips = vertical_strips(r, params.n)
    for i, lam in enumerate(basis.order):
        for strip in strips:
            mu, dominant = add_strip(lam, strip)
            if not dominant:
                continue
            col = basis.index.get(reduce_partition(mu, params.n))
            if col is None:
                continue
            mat[i, col] += hop_coefficient(lam, strip, params)
    return LatticeOperator("D", r, basis, mat)


def build_symmetric_operator(r: int, params: ModelParams, basis: LatticeBasis | None = None) -> LatticeOperator:
    """Self-adjoint combination (D_r + D_{n+1-r})/2."""
    n = params.n
    if not 1 <= r <= (n + 1) // 2:
        raise ValueError(f"symmetric combination index {r} outside 1..{(n + 1) // 2}")
    first = build_hop_operator(r, params, basis)
    if n + 1 - r == r:
        return LatticeOperator("C", r, first.basis, first.matrix.copy())
    second = build_hop_operator(n + 1 - r, params, first.basis)
    return LatticeOperator("C", r, first.basis, 0.5 * (first.matrix + second.matrix))


def build_antisymmetric_operator(r: int, params: ModelParams, basis: LatticeBasis | None = None) -> LatticeOperator:
    """Self-adjoint combination (D_r - D_{n+1-r})/(2i); complex entries."""
    n = params.n
    if not 1 <= r <= n // 2:
        raise ValueError(f"antisymmetric combination index {r} outside 1..{n // 2}")
    first = build_hop_operator(r, params, basis)
    second = build_hop_operator(n + 1 - r, params, first.basis)
    return LatticeOperator("S", r, first.basis, (first.matrix - second.matrix) / 2j)


def symmetrize(op: LatticeOperator, params: ModelParams) -> LatticeOperator:
    """Weight-conjugated form W^{1/2} A W^{-1/2} of an operator."""
    w = weight_vector(op.basis, params)
    if np.any(w <= 0):
        raise TruncationViolationError("lattice weights are not all positive")
    s = np.sqrt(w)
    mat = (s[:, None] * op.matrix) / s[None, :]
    kind = "M" if op.kind == "D" else "M" + op.kind
    return LatticeOperator(kind, op.r, op.basis, mat)


def commutator_residual(r: int, s: int, params: ModelParams, basis: LatticeBasis | None = None) -> float:
    """Relative Frobenius norm of [D_r, D_s]."""
    a = build_hop_operator(r, params, basis)
    b = build_hop_operator(s, params, a.basis)
    comm = a.matrix @ b.matrix - b.matrix @ a.matrix
    den = np.linalg.norm(a.matrix) * np.linalg.norm(b.matrix)
    return float(np.linalg.norm(comm) / den)


def transpose_residual(r: int, params: ModelParams, basis: LatticeBasis | None = None) -> float:
    """Relative Frobenius defect of transpose(M_r) = M_{n+1-r}."""
    a = build_hop_operator(r, params, basis)
    b = build_hop_operator(params.n + 1 - r, params, a.basis)
    ma = symmetrize(a, params).matrix
    mb = symmetrize(b, params).matrix
    return float(np.linalg.norm(ma.T - mb) / np.linalg.norm(ma))


def adjoint_residual(
    r: int,
    params: ModelParams,
    basis: LatticeBasis | None = None,
    seed: int = 1234,
    samples: int = 8,
) -> float:
    """Bilinear-form defect of the adjoint pairing of D_r and D_{n+1-r}.

    Tests <D_r f, g> = <f, D_{n+1-r} g> in the weighted inner product on a
    fixed batch of pseudo-random complex vectors; the seed is fixed for
    reproducibility.
    """
    a = build_hop_operator(r, params, basis)
    b = build_hop_operator(params.n + 1 - r, params, a.basis)
    w = weight_vector(a.basis, params)
    opnorm = np.linalg.norm(symmetrize(a, params).matrix, 2)
    rng = np.random.default_rng(seed)
    size = len(a.basis)
    worst = 0.0
    for _ in range(samples):
        f = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        g = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        lhs = np.sum((a.matrix @ f) * np.conj(g) * w)
        rhs = np.sum(f * np.conj(b.matrix @ g) * w)
        den = weighted_norm(f, w) * weighted_norm(g, w) * opnorm
        worst = max(worst, abs(lhs - rhs) / den)
    return float(worst)


def weighted_norm(f: np.ndarray, w: np.ndarray) -> float:
    """Norm induced by the weighted inner product."""
    return float(np.sqrt(np.sum(np.abs(f) ** 2 * w)))
