"""Joint diagonalization of the commuting family and labeling of the spectrum.

The hop operators are conjugated by the square root of the lattice weights,
which turns them into a commuting family of normal matrices closed under
transposition.  Their Hermitian and anti-Hermitian parts form a commuting
Hermitian family; a pseudo-random combination separates the joint
eigenspaces, and degenerate clusters are refined by successive restriction.

Labels (partitions in the box) come from the zero-nome closed form and are
carried to nonzero nome by continuation: small steps in p, matching
eigenvectors between neighbouring steps by overlap.
"""

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg as la
from scipy.optimize import linear_sum_assignment

from .coeffs import ModelParams, weight_vector
from .errors import ContinuationError, DegenerateSpectrumError, LabelingError, NormalizationError
from .macdonald import trig_joint_eigenvalue
from .operators import build_hop_operator
from .partitions import LatticeBasis, enumerate_lattice

__all__ = [
    "SpectralDatum",
    "Spectrum",
    "joint_diagonalize",
    "label_spectrum",
    "continue_labels",
    "sweep_spectra",
    "orthogonality_residual",
    "unitarity_residual",
    "conjugate_pairing_residual",
    "min_eigenvalue_gap",
    "eigenvalue_curves",
    "second_difference_residual",
]

_RESIDUAL_TOL = 1e-9
_CLUSTER_TOL = 1e-8
_MATCH_TOL = 1e-6
_ZERO_COMPONENT_TOL = 1e-10
_DEFAULT_STEP = 0.05
_MIN_OVERLAP = 0.9
_MAX_HALVINGS = 6


@dataclass
class SpectralDatum:
    """One joint eigenpair.

    eigenvector is normalized to unit weighted norm with the component at the
    empty partition real and positive; norm_hat is the dual weight attached
    to the eigenvalue vector for the unit-value-at-zero normalization.
    """

    label: tuple | None
    eigenvalues: np.ndarray
    eigenvector: np.ndarray
    norm_hat: float
    residual: float


@dataclass
class Spectrum:
    params: ModelParams
    basis: LatticeBasis
    data: list

    def __len__(self) -> int:
        return len(self.data)

    def by_label(self) -> dict:
        return {d.label: d for d in self.data}

    def eigenvector_matrix(self) -> np.ndarray:
        return np.column_stack([d.eigenvector for d in self.data])

    def frame_matrix(self) -> np.ndarray:
        """Columns in the weight-conjugated frame (orthonormal)."""
        s = np.sqrt(weight_vector(self.basis, self.params))
        return s[:, None] * self.eigenvector_matrix()


def _symmetrized_family(params: ModelParams, basis: LatticeBasis):
    w = weight_vector(basis, params)
    s = np.sqrt(w)
    mats = []
    for r in range(1, params.n + 1):
        d = build_hop_operator(r, params, basis).matrix
        mats.append((s[:, None] * d) / s[None, :])
    return mats, s


def _refine(vecs: np.ndarray, hermitian_ops: list, i: int, tol: float) -> np.ndarray:
    """Recursively split a degenerate block with the remaining Hermitian members."""
    if i == len(hermitian_ops):
        return vecs
    small = vecs.conj().T @ hermitian_ops[i] @ vecs
    vals, rot = la.eigh(0.5 * (small + small.conj().T))
    vecs = vecs @ rot
    k = 0
    while k < len(vals):
        ttol = max(tol, tol * abs(vals[k]))
        (inds,) = np.where(np.abs(vals - vals[k]) < ttol)
        if len(inds) > 1:
            vecs[:, inds] = _refine(vecs[:, inds], hermitian_ops, i + 1, tol)
        k = inds[-1] + 1
    return vecs


def joint_diagonalize(params: ModelParams, seed: int = 0, basis: LatticeBasis | None = None) -> Spectrum:
    """Simultaneously diagonalize the commuting family at the given parameters.

    Parameters
    ----------
    params : ModelParams
        Must lie in the truncation regime (positive weights).
    seed : int
        Seed for the random Hermitian combination that separates joint
        eigenspaces; results are deterministic given the seed.
    basis : LatticeBasis, optional
        Reuse an existing enumeration.

    Returns
    -------
    Spectrum with unlabeled data (labels are assigned by label_spectrum).

    Raises
    ------
    DegenerateSpectrumError
        if some refined vector fails the per-operator residual tolerance.
    NormalizationError
        if an eigenvector has no component at the empty partition.
    """
    if basis is None:
        basis = enumerate_lattice(params.n, params.m)
    mats, s = _symmetrized_family(params, basis)
    hermitian = []
    for m in mats:
        hermitian.append(0.5 * (m + m.T))
        hermitian.append((m - m.T) / 2j)
    rng = np.random.default_rng(seed)
    coefs = rng.standard_normal(len(hermitian))
    combo = sum(c * h for c, h in zip(coefs, hermitian)).astype(complex)
    vals, vecs = la.eigh(combo)
    scale = max(1.0, float(np.max(np.abs(vals))))
    k = 0
    while k < len(vals):
        (inds,) = np.where(np.abs(vals - vals[k]) < _CLUSTER_TOL * scale)
        if len(inds) > 1:
            vecs[:, inds] = _refine(vecs[:, inds], hermitian, 0, _CLUSTER_TOL)
        k = inds[-1] + 1
    opnorms = [np.linalg.norm(m, 2) for m in mats]
    data = []
    offenders = []
    for k in range(vecs.shape[1]):
        v = vecs[:, k]
        eigenvalues = np.array([v.conj() @ m @ v for m in mats])
        residual = max(
            float(np.linalg.norm(m @ v - e * v)) / norm
            for m, e, norm in zip(mats, eigenvalues, opnorms)
        )
        if residual > _RESIDUAL_TOL:
            offenders.append((k, residual))
        u = v / s
        u0 = u[0]
        if abs(u0) < _ZERO_COMPONENT_TOL:
            raise NormalizationError(
                f"eigenvector {k} has |component at the empty partition| = {abs(u0)}"
            )
        u = u * (np.conj(u0) / abs(u0))
        norm_hat = 1.0 / float(np.real(np.sum(np.abs(u / u[0]) ** 2 * s * s)))
        data.append(SpectralDatum(None, eigenvalues, u, norm_hat, residual))
    if offenders:
        raise DegenerateSpectrumError(
            f"{len(offenders)} eigenvectors exceed the residual tolerance {_RESIDUAL_TOL}",
            clusters=offenders,
        )
    return Spectrum(params, basis, data)


def _closed_form_labels(spectrum: Spectrum) -> Spectrum:
    """Assign labels at p = 0 by nearest closed-form eigenvalue vector."""
    params, basis = spectrum.params, spectrum.basis
    n = params.n
    targets = [
        np.array([trig_joint_eigenvalue(nu, r, params) for r in range(1, n + 1)])
        for nu in basis.order
    ]
    size = len(basis)
    gaps = [
        np.max(np.abs(targets[i] - targets[j]))
        for i in range(size)
        for j in range(i + 1, size)
    ]
    if gaps and min(gaps) < 2 * _MATCH_TOL:
        raise LabelingError(
            f"closed-form eigenvalue vectors are ambiguous: min gap {min(gaps):.3e}"
        )
    cost = np.zeros((size, size))
    for i, datum in enumerate(spectrum.data):
        for j, target in enumerate(targets):
            cost[i, j] = np.max(np.abs(datum.eigenvalues - target))
    rows, cols = linear_sum_assignment(cost)
    for i, j in zip(rows, cols):
        if cost[i, j] > _MATCH_TOL:
            raise LabelingError(
                f"no closed-form match within {_MATCH_TOL} for eigenvalue vector "
                f"{spectrum.data[i].eigenvalues} (best gap {cost[i, j]:.3e})"
            )
        spectrum.data[i].label = basis.order[j]
    ordered = sorted(spectrum.data, key=lambda d: basis.index[d.label])
    return Spectrum(params, basis, ordered)


def _transfer_labels(previous: Spectrum, candidate: Spectrum, min_overlap: float):
    """Match candidate vectors to previous labels by overlap; None on failure."""
    overlap = np.abs(previous.frame_matrix().conj().T @ candidate.frame_matrix())
    rows, cols = linear_sum_assignment(-overlap)
    if np.min(overlap[rows, cols]) <= min_overlap:
        return None
    for i, j in zip(rows, cols):
        candidate.data[j].label = previous.data[i].label
    ordered = sorted(candidate.data, key=lambda d: candidate.basis.index[d.label])
    return Spectrum(candidate.params, candidate.basis, ordered)


def continue_labels(
    labeled: Spectrum,
    target: Spectrum | float,
    seed: int = 0,
    step: float = _DEFAULT_STEP,
    min_overlap: float = _MIN_OVERLAP,
    max_halvings: int = _MAX_HALVINGS,
) -> Spectrum:
    """Carry labels from a labeled spectrum to another nome by continuation.

    target may be a Spectrum (already diagonalized) or a bare nome value.
    Steps never exceed `step`; on a failed overlap match the step is halved,
    up to max_halvings times.
    """
    if isinstance(target, Spectrum):
        target_spectrum = target
        target_p = target.params.p
    else:
        target_spectrum = None
        target_p = float(target)
    current = labeled
    current_p = labeled.params.p
    while abs(target_p - current_p) > 1e-15:
        remaining = target_p - current_p
        h = np.sign(remaining) * min(step, abs(remaining))
        halvings = 0
        while True:
            next_p = current_p + h
            final = abs(target_p - next_p) <= 1e-15
            if final and target_spectrum is not None:
                candidate = target_spectrum
            else:
                candidate = joint_diagonalize(
                    replace(current.params, p=float(next_p)), seed=seed, basis=current.basis
                )
            matched = _transfer_labels(current, candidate, min_overlap)
            if matched is not None:
                current = matched
                current_p = next_p
                break
            halvings += 1
            if halvings > max_halvings:
                raise ContinuationError(
                    f"overlap below {min_overlap} persisted after {max_halvings} halvings "
                    f"near p = {current_p}"
                )
            h /= 2
    return current


def label_spectrum(
    spectrum: Spectrum,
    seed: int = 0,
    step: float = _DEFAULT_STEP,
    min_overlap: float = _MIN_OVERLAP,
    max_halvings: int = _MAX_HALVINGS,
) -> Spectrum:
    """Label a diagonalized spectrum by partitions in the box.

    At p = 0 labels come from the closed-form eigenvalues; otherwise the
    labels are transported from p = 0 by continuation in the nome.
    """
    if spectrum.params.p == 0.0:
        return _closed_form_labels(spectrum)
    base = joint_diagonalize(replace(spectrum.params, p=0.0), seed=seed, basis=spectrum.basis)
    labeled = _closed_form_labels(base)
    return continue_labels(
        labeled, spectrum, seed=seed, step=step, min_overlap=min_overlap, max_halvings=max_halvings
    )


def sweep_spectra(params: ModelParams, p_values, seed: int = 0, step: float = _DEFAULT_STEP) -> list:
    """Labeled spectra along a nome sweep, propagating labels point to point."""
    spectra = []
    current = None
    for p in p_values:
        point = replace(params, p=float(p))
        target = joint_diagonalize(point, seed=seed)
        if current is None:
            current = label_spectrum(target, seed=seed, step=step)
        else:
            current = continue_labels(current, target, seed=seed, step=step)
        spectra.append(current)
    return spectra


def orthogonality_residual(spectrum: Spectrum) -> float:
    """Largest off-diagonal weighted inner product between eigenvectors."""
    if len(spectrum) < 2:
        return 0.0
    w = weight_vector(spectrum.basis, spectrum.params)
    u = spectrum.eigenvector_matrix()
    gram = (u.T * w) @ np.conj(u)
    off = gram - np.diag(np.diag(gram))
    return float(np.max(np.abs(off)))


def unitarity_residual(spectrum: Spectrum) -> float:
    """Deviation from unitarity of the weighted eigenfunction value matrix."""
    w = weight_vector(spectrum.basis, spectrum.params)
    u = spectrum.eigenvector_matrix()
    values = u / u[0, :]
    dual = np.array([d.norm_hat for d in spectrum.data])
    mat = np.sqrt(w)[:, None] * values * np.sqrt(dual)[None, :]
    eye = mat.conj().T @ mat
    return float(np.max(np.abs(eye - np.eye(len(spectrum)))))


def conjugate_pairing_residual(spectrum: Spectrum) -> float:
    """Defect of eigenvalue pairing e_{n+1-r} = conj(e_r)."""
    worst = 0.0
    for datum in spectrum.data:
        e = datum.eigenvalues
        worst = max(worst, float(np.max(np.abs(e[::-1] - np.conj(e)))))
    return worst


def min_eigenvalue_gap(spectrum: Spectrum) -> float:
    """Smallest pairwise distance between joint eigenvalue vectors."""
    gaps = [
        float(np.linalg.norm(a.eigenvalues - b.eigenvalues))
        for i, a in enumerate(spectrum.data)
        for b in spectrum.data[i + 1 :]
    ]
    return min(gaps) if gaps else np.inf


def eigenvalue_curves(spectra: list) -> dict:
    """Curves (label, r) -> eigenvalue array over a sweep of labeled spectra."""
    curves: dict = {}
    for spectrum in spectra:
        for datum in spectrum.data:
            for r0, e in enumerate(datum.eigenvalues):
                curves.setdefault((datum.label, r0 + 1), []).append(e)
    return {key: np.array(vals) for key, vals in curves.items()}


def second_difference_residual(spectra: list) -> float:
    """Largest second difference over all envelope-normalized eigenvalue curves.

    All curves of a given order share a steep common growth as |p| increases,
    so each is divided pointwise by the envelope max(1, max_label |e|) before
    differencing.  A labeling jump then contributes on the order of the gap
    between branches relative to the envelope, while a smooth curve sampled
    at step h contributes O(h^2); values below 0.5 indicate a clean sweep.
    """
    curves = eigenvalue_curves(spectra)
    by_order: dict = {}
    for (label, r), curve in curves.items():
        by_order.setdefault(r, {})[label] = curve
    worst = 0.0
    for group in by_order.values():
        stacked = np.array(list(group.values()))
        if stacked.shape[1] < 3:
            continue
        envelope = np.maximum(np.max(np.abs(stacked), axis=0), 1.0)
        for curve in group.values():
            ratio = curve / envelope
            second = np.abs(ratio[2:] - 2.0 * ratio[1:-1] + ratio[:-2])
            worst = max(worst, float(np.max(second)))
    return worst
