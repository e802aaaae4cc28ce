"""Dense linear-algebra substrate.

Subspaces are carried as :class:`Frame` objects (matrices with orthonormal
columns); projectors are built from them on demand.  Every routine here is a
thin, contract-checked layer over LAPACK via numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DimensionMismatch, InvalidInput, NotHermitian, NotUnitary, SingularMatrix


@dataclass(frozen=True)
class ToleranceConfig:
    """Tolerances used for identity checks and rank decisions.

    ``rank_tol`` is relative: a singular value counts as nonzero when it
    exceeds ``rank_tol * s_max``, and a cosine counts as one when it is at
    least ``1 - rank_tol``.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    rank_tol: float = 1e-8

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "rank_tol"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise InvalidInput(f"{name} must be a positive finite number, got {value!r}")

    def tau(self, scale: float = 1.0) -> float:
        """Absolute tolerance for a quantity of magnitude ``scale``."""
        return self.abs_tol + self.rel_tol * abs(scale)


DEFAULT_TOL = ToleranceConfig()


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Return ``M`` as a finite 2-D float or complex array."""
    A = np.asarray(M)
    if A.ndim == 1:
        A = A.reshape(-1, 1)
    if A.ndim != 2:
        raise InvalidInput(f"{name} must be 2-D, got shape {A.shape}")
    if not np.issubdtype(A.dtype, np.inexact):
        A = A.astype(float)
    if not np.all(np.isfinite(A)):
        raise InvalidInput(f"{name} has non-finite entries")
    return A


def _frozen(A: np.ndarray) -> np.ndarray:
    A = np.array(A, copy=True)
    A.setflags(write=False)
    return A


def op_norm(A) -> float:
    """Spectral norm; 0 for empty matrices."""
    A = np.asarray(A)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def dagger(A: np.ndarray) -> np.ndarray:
    return A.conj().T


@dataclass(frozen=True)
class Frame:
    """Orthonormal basis of a subspace of C^n, stored column-wise."""

    basis: np.ndarray

    def __post_init__(self):
        B = as_matrix(self.basis, "frame basis")
        object.__setattr__(self, "basis", _frozen(B))

    @classmethod
    def empty(cls, ambient_dim: int, dtype=complex) -> "Frame":
        return cls(np.zeros((ambient_dim, 0), dtype=dtype))

    @classmethod
    def coordinate(cls, ambient_dim: int, indices) -> "Frame":
        """Frame spanned by the canonical vectors with the given indices."""
        return cls(np.eye(ambient_dim)[:, list(indices)])

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ dagger(self.basis)

    def orthonormality_defect(self) -> float:
        if self.rank == 0:
            return 0.0
        return op_norm(dagger(self.basis) @ self.basis - np.eye(self.rank))

    def apply(self, U) -> "Frame":
        """Image frame ``U @ basis`` for a unitary ``U``."""
        return Frame(np.asarray(U) @ self.basis)

    def __len__(self):
        return self.rank


@dataclass(frozen=True)
class SchmidtSystem:
    """Triples (s_n, psi_n, xi_n) with T = sum_n s_n psi_n (x) xi_n.

    ``left[:, n]`` is psi_n, ``right[:, n]`` is xi_n and
    ``(psi (x) xi) h = <h, xi> psi``.
    """

    values: np.ndarray
    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        for name in ("values", "left", "right"):
            object.__setattr__(self, name, _frozen(getattr(self, name)))

    def __len__(self):
        return len(self.values)

    def reconstruct(self) -> np.ndarray:
        return (self.left * self.values) @ dagger(self.right)


def _normalize_phases(U: np.ndarray) -> np.ndarray:
    # first entry of maximal modulus becomes real positive in each column
    if U.shape[1] == 0:
        return U
    idx = np.argmax(np.abs(U) > 0.5 * np.abs(U).max(axis=0), axis=0)
    pivots = U[idx, np.arange(U.shape[1])]
    phases = pivots / np.abs(pivots)
    return U / phases


def orthonormal_frame(M, cfg: ToleranceConfig = DEFAULT_TOL) -> Frame:
    """Orthonormal basis for the column space of ``M``.

    Input that already has orthonormal columns is returned unchanged.
    Otherwise the basis comes from the left singular vectors whose singular
    values exceed ``rank_tol * s_1``; column phases are normalized so the
    first dominant entry is real and positive.
    """
    A = as_matrix(M, "M")
    n, k = A.shape
    if k == 0 or not np.any(A):
        return Frame(np.zeros((n, 0), dtype=A.dtype))
    if k <= n and op_norm(dagger(A) @ A - np.eye(k)) <= cfg.abs_tol:
        return Frame(A)
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    r = int(np.sum(s > cfg.rank_tol * s[0]))
    return Frame(_normalize_phases(U[:, :r]))


def complement_frame(F: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> Frame:
    """Orthonormal basis of the orthogonal complement of ``F``.

    Canonical vectors are projected onto the complement and orthonormalized
    in index order (two Gram-Schmidt passes), so the result is reproducible
    and, for coordinate subspaces, is itself a set of canonical vectors.
    Cost is O(n^2 (n - k)).
    """
    n, k = F.ambient_dim, F.rank
    m = n - k
    dtype = np.result_type(F.basis.dtype, float)
    if m == 0:
        return Frame(np.zeros((n, 0), dtype=dtype))
    Q = np.zeros((n, n), dtype=dtype)
    Q[:, :k] = F.basis
    count = k
    accept = 1e-3
    for i in range(n):
        if count == n:
            break
        v = np.zeros(n, dtype=dtype)
        v[i] = 1.0
        for _ in range(2):
            v = v - Q[:, :count] @ (dagger(Q[:, :count]) @ v)
        nv = np.linalg.norm(v)
        if nv > accept:
            Q[:, count] = v / nv
            count += 1
    if count < n:
        # degenerate leftovers; fill from an SVD of the residual projector
        R = np.eye(n, dtype=dtype) - Q[:, :count] @ dagger(Q[:, :count])
        U, _, _ = np.linalg.svd(R)
        Q[:, count:] = U[:, : n - count]
    out = Q[:, k:]
    if cfg is not None and m and op_norm(dagger(out) @ out - np.eye(m)) > 1e3 * cfg.abs_tol:
        out, _ = np.linalg.qr(out)
    return Frame(out)


def join_frames(*frames: Frame) -> np.ndarray:
    """Column-stack frame bases (no orthonormalization)."""
    return np.hstack([f.basis for f in frames])


def svd_schmidt(T, cfg: ToleranceConfig = DEFAULT_TOL) -> SchmidtSystem:
    """Schmidt (singular value) decomposition with numerically zero terms dropped.

    A singular value is kept when it exceeds ``max(m, n) * eps * s_1`` (the
    usual numerical-rank cutoff), so the reconstruction error stays at the
    level of the backward error of the SVD itself.
    """
    A = as_matrix(T, "T")
    m, n = A.shape
    if A.size == 0:
        return SchmidtSystem(np.zeros(0), np.zeros((m, 0)), np.zeros((n, 0)))
    U, s, Vh = np.linalg.svd(A, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        r = 0
    else:
        r = int(np.sum(s > max(m, n) * np.finfo(float).eps * s[0]))
    return SchmidtSystem(s[:r].copy(), U[:, :r].copy(), dagger(Vh)[:, :r].copy())


def is_hermitian(H: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOL) -> bool:
    return op_norm(H - dagger(H)) <= cfg.tau(op_norm(H))


def hermitian_eig(H, cfg: ToleranceConfig = DEFAULT_TOL):
    """Eigenvalues (nonincreasing) and orthonormal eigenvectors of a Hermitian matrix."""
    A = as_matrix(H, "H")
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"H must be square, got shape {A.shape}")
    if not is_hermitian(A, cfg):
        raise NotHermitian(f"||H - H^*|| = {op_norm(A - dagger(A)):.3e}")
    w, V = np.linalg.eigh(0.5 * (A + dagger(A)))
    return w[::-1].copy(), V[:, ::-1].copy()


def psd_sqrt(H, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Square root of a positive semidefinite matrix.

    Eigenvalues in [-tau, 0) are clipped to 0; anything more negative is an
    error.
    """
    w, V = hermitian_eig(H, cfg)
    floor = -cfg.tau(abs(w).max() if w.size else 0.0)
    if w.size and w.min() < floor:
        raise InvalidInput(f"matrix is not positive semidefinite (min eigenvalue {w.min():.3e})")
    return (V * np.sqrt(np.clip(w, 0.0, None))) @ dagger(V)


def hermitian_function(H, func, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Apply a scalar function to a Hermitian matrix through its eigenbasis."""
    w, V = hermitian_eig(H, cfg)
    return (V * func(w)) @ dagger(V)


def expm_hermitian(Z, t: float = 1.0, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``exp(i t Z)`` for Hermitian ``Z``, exact up to the eigensolver."""
    return hermitian_function(Z, lambda w: np.exp(1j * t * w), cfg)


def polar(M, cfg: ToleranceConfig = DEFAULT_TOL):
    """Polar decomposition ``M = unitary_part @ modulus`` of an invertible matrix."""
    A = as_matrix(M, "M")
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"M must be square, got shape {A.shape}")
    if A.shape[0] == 0:
        return A.copy(), A.copy()
    W, s, Vh = np.linalg.svd(A)
    if s[-1] <= cfg.rank_tol * max(s[0], 1.0):
        raise SingularMatrix(f"smallest singular value {s[-1]:.3e}")
    V = dagger(Vh)
    unitary = W @ Vh
    modulus = (V * s) @ Vh
    modulus = 0.5 * (modulus + dagger(modulus))
    return unitary, modulus


def unitarity_defect(U) -> float:
    U = np.asarray(U)
    return op_norm(dagger(U) @ U - np.eye(U.shape[1]))


def check_unitary(U, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    A = as_matrix(U, "U")
    if A.shape[0] != A.shape[1]:
        raise NotUnitary(f"U must be square, got shape {A.shape}")
    d = unitarity_defect(A)
    if d > 1e3 * cfg.abs_tol:
        raise NotUnitary(f"||U^*U - I|| = {d:.3e}")
    return A


def check_same_ambient(*frames: Frame):
    dims = {f.ambient_dim for f in frames}
    if len(dims) > 1:
        raise DimensionMismatch(f"frames live in different ambient dimensions {sorted(dims)}")


def cluster_values(values, tol: float):
    """Group sorted real values whose consecutive gaps are at most ``tol``.

    Returns a list of ``(mean, multiplicity)`` pairs in ascending order.
    """
    v = np.sort(np.asarray(values, dtype=float))
    clusters = []
    start = 0
    for i in range(1, len(v) + 1):
        if i == len(v) or v[i] - v[i - 1] > tol:
            chunk = v[start:i]
            clusters.append((float(chunk.mean()), len(chunk)))
            start = i
    return clusters


def multiset_distance(a, b) -> float:
    """Bottleneck-style distance between two equal-size multisets of numbers.

    Real inputs are compared after sorting.  Complex inputs are matched with
    the Hungarian algorithm on pairwise distances, then the largest matched
    gap is returned.  Size mismatch gives ``inf``.
    """
    a = np.asarray(a).ravel()
    b = np.asarray(b).ravel()
    if a.size != b.size:
        return float("inf")
    if a.size == 0:
        return 0.0
    if not (np.iscomplexobj(a) or np.iscomplexobj(b)):
        return float(np.max(np.abs(np.sort(a) - np.sort(b))))
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from a seeded complex Gaussian matrix."""
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_frame(n: int, k: int, rng: np.random.Generator) -> Frame:
    return Frame(random_unitary(n, rng)[:, :k])
