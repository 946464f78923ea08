"""Deflation to the standard representation and eigenvalue mesh scans.

Every permutation matrix fixes the all-ones vector, so one shared eigenvalue
1 can be deflated away by a fixed similarity, leaving an (n-1)-dimensional
image (the standard representation).  The deflation acts linearly, so a
convex combination deflates termwise; all spectra work then happens on dense
(n-1) x (n-1) real matrices.

For the matrix written in blocks A = [[a, r], [c, B]] with r the tail of the
first row, the deflated matrix is B - 1·r (subtract r from every row of B).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .permgroup import Permutation

WEIGHT_TOL = 1e-12
MAX_EIG_DIM = 64
UNIT_DISC_TOL = 1e-9


class EigensolverError(RuntimeError):
    """QR iteration failed to converge; carries the offending matrix."""

    def __init__(self, message: str, matrix: np.ndarray):
        super().__init__(message)
        self.matrix = matrix


@dataclass(frozen=True)
class ConvexCombo:
    """A convex combination of permutations of one degree."""

    n: int
    terms: tuple[tuple[float, Permutation], ...]

    def __post_init__(self):
        terms = tuple((float(w), p) for w, p in self.terms)
        if not terms:
            raise ValueError("a convex combination needs at least one term")
        for w, p in terms:
            if w < 0.0:
                raise ValueError(f"negative weight {w}")
            if p.n != self.n:
                raise ValueError(f"degree mismatch: {p.n} != {self.n}")
        total = sum(w for w, _ in terms)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"weights sum to {total}, not 1")
        object.__setattr__(self, "terms", terms)


@dataclass(frozen=True)
class DeflatedMatrix:
    """Dense (n-1) x (n-1) image of a combination under the deflation."""

    entries: np.ndarray

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class EigenPoint:
    """One eigenvalue tagged with where it came from."""

    value: complex
    source: object
    weights: tuple[float, ...]

    def __post_init__(self):
        if abs(self.value) > 1.0 + UNIT_DISC_TOL:
            raise ValueError(f"eigenvalue {self.value} outside the closed unit disc")


@dataclass(frozen=True)
class ScanConfig:
    """Mesh and filter settings for census/tuple scan drivers."""

    mesh_size: int
    tuple_order: int = 2
    half_plane_only: bool = True
    drop_real_axis: bool = True

    def __post_init__(self):
        if self.mesh_size < 2:
            raise ValueError("mesh_size must be >= 2")
        if self.tuple_order < 2:
            raise ValueError("tuple_order must be >= 2")


def permutation_matrix(p: Permutation) -> np.ndarray:
    """Row-stochastic 0/1 matrix with entry (i, p(i)) = 1."""
    mat = np.zeros((p.n, p.n))
    mat[np.arange(p.n), p.images] = 1.0
    return mat


def combo_matrix(combo: ConvexCombo) -> np.ndarray:
    """The doubly stochastic matrix of a convex combination."""
    mat = np.zeros((combo.n, combo.n))
    rows = np.arange(combo.n)
    for w, p in combo.terms:
        mat[rows, p.images] += w
    return mat


def standard_rep(p: Permutation) -> np.ndarray:
    """Deflated image of a single permutation matrix; entries in {-1, 0, 1}."""
    if p.n < 2:
        raise ValueError("deflation needs degree >= 2")
    mat = permutation_matrix(p)
    return mat[1:, 1:] - mat[0, 1:]


def deflate(combo: ConvexCombo) -> DeflatedMatrix:
    """Deflate a combination termwise (linearity makes this exact)."""
    if combo.n < 2:
        raise ValueError("deflation needs degree >= 2")
    acc = np.zeros((combo.n - 1, combo.n - 1))
    for w, p in combo.terms:
        acc += w * standard_rep(p)
    return DeflatedMatrix(acc)


def eigenvalues(matrix: np.ndarray | DeflatedMatrix) -> np.ndarray:
    """All eigenvalues, with multiplicity, of a small dense real matrix.

    Delegates to LAPACK's Hessenberg-plus-shifted-QR solver; a convergence
    failure raises EigensolverError carrying the input.
    """
    if isinstance(matrix, DeflatedMatrix):
        matrix = matrix.entries
    mat = np.asarray(matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"matrix must be square, got shape {mat.shape}")
    if mat.shape[0] > MAX_EIG_DIM:
        raise ValueError(f"dimension {mat.shape[0]} exceeds cap {MAX_EIG_DIM}")
    try:
        return np.linalg.eigvals(mat)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc), mat) from exc


def batched_eigenvalues(mats: np.ndarray) -> np.ndarray:
    """Eigenvalues of a (batch, d, d) stack; shape (batch, d)."""
    if mats.ndim != 3 or mats.shape[1] != mats.shape[2]:
        raise ValueError(f"expected a (batch, d, d) stack, got {mats.shape}")
    if mats.shape[1] > MAX_EIG_DIM:
        raise ValueError(f"dimension {mats.shape[1]} exceeds cap {MAX_EIG_DIM}")
    try:
        return np.linalg.eigvals(mats)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(str(exc), mats) from exc


def pair_mesh(m: int) -> np.ndarray:
    """Pair weights t = j/(m-1), j = 0..m-1 (both endpoints included)."""
    if m < 2:
        raise ValueError("pair mesh size must be >= 2")
    return np.arange(m) / (m - 1)


def pair_grid_spectra(
    sigma: Permutation, tau: Permutation, m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of deflate(t*sigma + (1-t)*tau) over the pair mesh.

    Returns (t grid of shape (m,), eigenvalues of shape (m, n-1)).
    """
    if sigma.n != tau.n:
        raise ValueError(f"degree mismatch: {sigma.n} != {tau.n}")
    t = pair_mesh(m)
    ds = standard_rep(sigma)
    dt = standard_rep(tau)
    mats = t[:, None, None] * ds + (1.0 - t)[:, None, None] * dt
    return t, batched_eigenvalues(mats)


def compositions(m: int, k: int) -> np.ndarray:
    """All compositions of m into k nonnegative parts, first part descending.

    Shape (C(m+k-1, k-1), k); the enumeration order is fixed so scans are
    reproducible.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k == 1:
        return np.array([[m]], dtype=np.int64)
    rows = []
    for first in range(m, -1, -1):
        rest = compositions(m - first, k - 1)
        block = np.empty((rest.shape[0], k), dtype=np.int64)
        block[:, 0] = first
        block[:, 1:] = rest
        rows.append(block)
    return np.concatenate(rows, axis=0)


def tuple_grid_spectra(
    perms: Sequence[Permutation], m: int
) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues over the k-tuple weight grid of granularity 1/m.

    Weights are all distributions (a_1/m, ..., a_k/m) with integer a_i
    summing to m.  Returns (weights of shape (N, k), eigenvalues (N, n-1)).
    """
    k = len(perms)
    if k < 2:
        raise ValueError("need at least two permutations")
    if m < 1:
        raise ValueError("tuple mesh size must be >= 1")
    n = perms[0].n
    for p in perms:
        if p.n != n:
            raise ValueError("degree mismatch in tuple")
    weights = compositions(m, k) / m
    reps = np.stack([standard_rep(p) for p in perms])
    mats = np.tensordot(weights, reps, axes=(1, 0))
    return weights, batched_eigenvalues(mats)


def _filter_points(
    eigs: np.ndarray, half_plane_only: bool, drop_real_axis: bool
) -> np.ndarray:
    keep = np.ones(eigs.shape, dtype=bool)
    if half_plane_only:
        keep &= eigs.imag >= 0.0
    if drop_real_axis:
        keep &= np.abs(eigs.imag) >= 1e-12
    return keep


def scan_pair(
    sigma: Permutation,
    tau: Permutation,
    m: int,
    *,
    half_plane_only: bool = False,
    drop_real_axis: bool = False,
    source: object = None,
) -> list[EigenPoint]:
    """EigenPoints along the segment from tau (t=0) to sigma (t=1)."""
    t, eigs = pair_grid_spectra(sigma, tau, m)
    keep = _filter_points(eigs, half_plane_only, drop_real_axis)
    points = []
    for row, tval in enumerate(t):
        w = (float(tval), float(1.0 - tval))
        for col in np.nonzero(keep[row])[0]:
            points.append(EigenPoint(complex(eigs[row, col]), source, w))
    return points


def scan_tuple(
    perms: Sequence[Permutation],
    m: int,
    *,
    half_plane_only: bool = False,
    drop_real_axis: bool = False,
    source: object = None,
) -> list[EigenPoint]:
    """EigenPoints over every weight distribution of a k-tuple."""
    weights, eigs = tuple_grid_spectra(perms, m)
    keep = _filter_points(eigs, half_plane_only, drop_real_axis)
    points = []
    for row in range(weights.shape[0]):
        w = tuple(float(x) for x in weights[row])
        for col in np.nonzero(keep[row])[0]:
            points.append(EigenPoint(complex(eigs[row, col]), source, w))
    return points
