"""Pairs of orthogonal projections: the Halmos model and its spectral relations.

For frames F (range of P) and G (range of Q) everything is driven by the SVD
of ``F^* G``: its singular values are the cosines of the principal angles, the
unit ones span R(P) & R(Q), the zero ones span the corners R(P) & N(Q) and
N(P) & R(Q), and the rest form the generic part, where

    P' = [[1, 0], [0, 0]],    Q' = [[C^2, CS], [CS, S^2]],    C = cos X, S = sin X.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core_linalg import (
    DEFAULT_TOL,
    Frame,
    ToleranceConfig,
    as_matrix,
    check_same_ambient,
    check_unitary,
    cluster_values,
    complement_frame,
    dagger,
    hermitian_eig,
    is_hermitian,
    multiset_distance,
    op_norm,
    orthonormal_frame,
    psd_sqrt,
    svd_schmidt,
)
from .errors import InvalidInput, RankDecisionError


@dataclass(frozen=True)
class PrincipalData:
    """SVD of ``F^* G`` split by the rank tolerance."""

    cosines: np.ndarray  # all min(p, q) singular values, nonincreasing
    left: np.ndarray  # p x p coordinates in F
    right: np.ndarray  # q x q coordinates in G
    n_one: int
    n_generic: int
    p: int
    q: int
    n: int

    @property
    def generic_cosines(self) -> np.ndarray:
        return self.cosines[self.n_one : self.n_one + self.n_generic]

    @property
    def dim10(self) -> int:
        return self.p - self.n_one - self.n_generic

    @property
    def dim01(self) -> int:
        return self.q - self.n_one - self.n_generic

    @property
    def dim00(self) -> int:
        return self.n - self.p - self.q + self.n_one


def principal_data(F: Frame, G: Frame, cfg: ToleranceConfig = DEFAULT_TOL, vectors: bool = True) -> PrincipalData:
    """Principal cosines between R(F) and R(G); ``vectors=False`` skips the singular vectors."""
    check_same_ambient(F, G)
    M = dagger(F.basis) @ G.basis
    p, q = M.shape
    if min(p, q) == 0:
        Y, s, Vh = np.eye(p, dtype=M.dtype), np.zeros(0), np.eye(q, dtype=M.dtype)
    elif vectors:
        Y, s, Vh = np.linalg.svd(M, full_matrices=True)
    else:
        s = np.linalg.svd(M, compute_uv=False)
        Y, Vh = np.zeros((p, 0), dtype=M.dtype), np.zeros((0, q), dtype=M.dtype)
    n_one = int(np.sum(s >= 1.0 - cfg.rank_tol))
    n_gen = int(np.sum((s > cfg.rank_tol) & (s < 1.0 - cfg.rank_tol)))
    data = PrincipalData(np.minimum(s, 1.0), Y, dagger(Vh), n_one, n_gen, p, q, F.ambient_dim)
    if data.dim00 < 0:
        raise RankDecisionError("corner dimensions do not add up; a principal angle sits on the tolerance")
    return data


@dataclass(frozen=True)
class HalmosModel:
    """Halmos decomposition of a pair of subspaces.

    The generic part is identified with L x L through the columns
    ``[psi | eta]``: ``psi`` is an orthonormal basis of the generic part of
    R(P), ``eta`` the matching basis of its part in N(P), and the k-th
    principal vector of R(Q) is ``cos(x_k) psi_k + sin(x_k) eta_k``.
    """

    h11: Frame
    h00: Frame
    h10: Frame
    h01: Frame
    psi: np.ndarray
    eta: np.ndarray
    angles: np.ndarray
    cfg: ToleranceConfig = field(default=DEFAULT_TOL, repr=False)

    @property
    def ambient_dim(self) -> int:
        return self.h11.ambient_dim

    @property
    def generic_dim(self) -> int:
        """dim L, i.e. half the dimension of the generic part."""
        return len(self.angles)

    @property
    def generic_basis(self) -> np.ndarray:
        return np.hstack([self.psi, self.eta])

    @property
    def X(self) -> np.ndarray:
        return np.diag(self.angles).astype(complex)

    @property
    def C(self) -> np.ndarray:
        return np.diag(np.cos(self.angles)).astype(complex)

    @property
    def S(self) -> np.ndarray:
        return np.diag(np.sin(self.angles)).astype(complex)

    def dims(self) -> dict:
        return {
            "h11": self.h11.rank,
            "h00": self.h00.rank,
            "h10": self.h10.rank,
            "h01": self.h01.rank,
            "generic": 2 * self.generic_dim,
        }

    def angle_clusters(self):
        """Angles grouped with the rank tolerance; ``[(angle, multiplicity), ...]``."""
        return cluster_values(self.angles, self.cfg.rank_tol)

    def model_blocks(self):
        """``(P', Q')`` on the generic part in the ``[psi | eta]`` coordinates."""
        g = self.generic_dim
        C, S = self.C, self.S
        Z = np.zeros((g, g))
        P = np.block([[np.eye(g), Z], [Z, Z]])
        Q = np.block([[C @ C, C @ S], [S @ C, S @ S]])
        return P, Q

    def reconstruct(self):
        """Rebuild ``(P, Q)`` as n x n projectors from the model."""
        Pm, Qm = self.model_blocks()
        Gb = self.generic_basis
        P = self.h11.projector() + self.h10.projector()
        Q = self.h11.projector() + self.h01.projector()
        if self.generic_dim:
            P = P + Gb @ Pm @ dagger(Gb)
            Q = Q + Gb @ Qm @ dagger(Gb)
        return P, Q

    def decomposition_defect(self) -> float:
        """Largest deviation of the five pieces from an orthonormal basis of C^n."""
        B = np.hstack([self.h11.basis, self.h00.basis, self.h10.basis, self.h01.basis, self.generic_basis])
        n = self.ambient_dim
        if B.shape[1] != n:
            return float("inf")
        return op_norm(dagger(B) @ B - np.eye(n))


def halmos_decompose(P_frame: Frame, Q_frame: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> HalmosModel:
    """Split C^n into R(P)&R(Q), N(P)&N(Q), R(P)&N(Q), N(P)&R(Q) and the generic part."""
    pd = principal_data(P_frame, Q_frame, cfg)
    F, G = P_frame.basis, Q_frame.basis
    p, q = pd.p, pd.q
    k1, g = pd.n_one, pd.n_generic
    s = pd.cosines

    h11 = Frame(F @ pd.left[:, :k1])
    h10 = Frame(F @ pd.left[:, k1 + g : p])
    h01 = Frame(G @ pd.right[:, k1 + g : q])

    gen = slice(k1, k1 + g)
    psi = F @ pd.left[:, gen]
    xi = G @ pd.right[:, gen]
    resid = xi - F @ (dagger(F) @ xi)
    sines = np.linalg.norm(resid, axis=0)
    eta = resid / sines if g else resid
    angles = np.arctan2(sines, s[gen])

    # N(P) & N(Q) from the complements, per the same cosine-one rule
    Fc = complement_frame(P_frame, cfg)
    Gc = complement_frame(Q_frame, cfg)
    if Fc.rank and Gc.rank:
        Yc, sc, _ = np.linalg.svd(dagger(Fc.basis) @ Gc.basis)
        h00 = Frame(Fc.basis @ Yc[:, : int(np.sum(sc >= 1.0 - cfg.rank_tol))])
    else:
        h00 = Frame(np.zeros((pd.n, 0), dtype=F.dtype))
    if h00.rank != pd.dim00:
        raise RankDecisionError(
            f"dim N(P)&N(Q) from complements is {h00.rank}, dimension count says {pd.dim00}"
        )
    return HalmosModel(h11, h00, h10, h01, psi, eta, angles, cfg)


def reconstruct_pair(model: HalmosModel):
    return model.reconstruct()


def _tol_cluster(values, cfg):
    return cluster_values(values, cfg.rank_tol * max(1.0, np.max(np.abs(values)) if len(values) else 1.0))


@dataclass
class RelationsReport:
    singular_values_PQ: np.ndarray
    eigenvalues_P_minus_Q: np.ndarray
    singular_values_PQperp: np.ndarray
    singular_values_PperpQperp: np.ndarray
    expected_eigenvalues: np.ndarray
    defects: dict
    commutator_eigenvalues: np.ndarray | None = None

    @property
    def max_identity_defect(self) -> float:
        return max(self.defects.values()) if self.defects else 0.0

    def eigenvalue_clusters(self, cfg: ToleranceConfig = DEFAULT_TOL):
        return _tol_cluster(self.eigenvalues_P_minus_Q, cfg)


def expected_difference_spectrum(pd: PrincipalData) -> np.ndarray:
    """eig(P - Q) predicted from the cosines: +-sqrt(1 - s^2), 0, +1, -1."""
    t = np.sqrt(np.clip(1.0 - pd.generic_cosines**2, 0.0, None))
    parts = [t, -t, np.zeros(pd.n_one + pd.dim00), np.ones(pd.dim10), -np.ones(pd.dim01)]
    return np.sort(np.concatenate(parts))


def _sub_one(values, cfg):
    v = np.asarray(values)
    return np.sort(v[(v > cfg.rank_tol) & (v < 1.0 - cfg.rank_tol)])


def product_relations(P_frame: Frame, Q_frame: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> RelationsReport:
    """Check the spectral transfer laws for a pair of projections directly.

    All spectra are computed from dense n x n products, independently of the
    principal-angle SVD used for the prediction.
    """
    pd = principal_data(P_frame, Q_frame, cfg)
    n = pd.n
    P, Q = P_frame.projector(), Q_frame.projector()
    I = np.eye(n)
    sv_pq = np.linalg.svd(P @ Q, compute_uv=False)
    sv_pqp = np.linalg.svd(P @ (I - Q), compute_uv=False)
    sv_ppqp = np.linalg.svd((I - P) @ (I - Q), compute_uv=False)
    eig = np.sort(np.linalg.eigvalsh(P - Q))
    expected = expected_difference_spectrum(pd)

    s_sub = _sub_one(sv_pq, cfg)
    t_sub = _sub_one(sv_pqp, cfg)
    u_sub = _sub_one(sv_ppqp, cfg)
    defects = {
        "difference_spectrum": multiset_distance(eig, expected),
        "complement_transfer": multiset_distance(s_sub, u_sub),
        "perp_transfer": multiset_distance(np.sqrt(1.0 - s_sub**2), t_sub),
    }
    return RelationsReport(sv_pq[: min(pd.p, pd.q)], eig, sv_pqp, sv_ppqp, expected, defects)


@dataclass
class CommutatorReport:
    eigenvalues: np.ndarray  # complex, ascending imaginary part
    expected: np.ndarray
    eigenvectors: np.ndarray
    cosines: np.ndarray
    defects: dict

    @property
    def defect(self) -> float:
        return max(self.defects.values())


def explicit_commutator_eigenvectors(psi: np.ndarray, xi: np.ndarray, s: np.ndarray):
    """v_k, w_k built from PQ = sum s_k psi_k (x) xi_k, with eigenvalues +-i s sqrt(1 - s^2)."""
    r = s * np.sqrt(1.0 - s**2)
    v = (s**2 - 1j * r) * xi - s * psi
    w = (s**2 + 1j * r) * xi - s * psi
    return v, w, 1j * r, -1j * r


def commutator_spectrum(P_frame: Frame, Q_frame: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> CommutatorReport:
    """Spectrum of [P, Q] versus +-i s_n sqrt(1 - s_n^2), plus explicit eigenvector residuals."""
    pd = principal_data(P_frame, Q_frame, cfg)
    P, Q = P_frame.projector(), Q_frame.projector()
    A = P @ Q - Q @ P
    # [P, Q] is skew-Hermitian; -i A is Hermitian
    lam, V = np.linalg.eigh(-1j * A)
    eigenvalues = 1j * lam
    s = pd.generic_cosines
    r = s * np.sqrt(1.0 - s**2)
    expected = 1j * np.concatenate([r, -r, np.zeros(pd.n - 2 * len(s))])

    gen = slice(pd.n_one, pd.n_one + pd.n_generic)
    psi = P_frame.basis @ pd.left[:, gen]
    xi = Q_frame.basis @ pd.right[:, gen]
    v, w, lv, lw = explicit_commutator_eigenvectors(psi, xi, s)
    resid = 0.0
    for vecs, lams in ((v, lv), (w, lw)):
        if vecs.shape[1]:
            R = A @ vecs - vecs * lams
            resid = max(resid, float(np.max(np.linalg.norm(R, axis=0) / np.linalg.norm(vecs, axis=0))))
    orth = 0.0
    if v.shape[1]:
        orth = float(np.max(np.abs(np.sum(v.conj() * w, axis=0)) / (np.linalg.norm(v, axis=0) * np.linalg.norm(w, axis=0))))

    model = halmos_decompose(P_frame, Q_frame, cfg)
    corners = np.hstack([model.h11.basis, model.h00.basis, model.h10.basis, model.h01.basis])
    kernel = op_norm(A @ corners) if corners.shape[1] else 0.0

    defects = {
        "spectrum": multiset_distance(eigenvalues, expected),
        "explicit_eigenvectors": resid,
        "eigenvector_orthogonality": orth,
        "kernel": kernel,
    }
    return CommutatorReport(eigenvalues, expected, V, s, defects)


def recover_angle_from_CS(CS, E: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Recover X from CS = sin(2X)/2 given the spectral subspace E where 2X <= pi/2.

    On R(E), 2X = arcsin(2 CS); on R(E)^perp, 2X - pi/2 = arccos(2 CS).  The
    branch cannot be read off CS itself, hence E is an input.
    """
    A = as_matrix(CS, "CS")
    n = A.shape[0]
    if A.shape != (n, n) or E.ambient_dim != n:
        raise InvalidInput("CS must be square and share its dimension with E")
    if not is_hermitian(A, cfg):
        raise InvalidInput("CS must be Hermitian")
    w, _ = hermitian_eig(A, cfg)
    tol = cfg.tau(0.5)
    if w.size and (w.min() < -tol or w.max() > 0.5 + tol):
        raise InvalidInput(f"spectrum of CS must lie in [0, 1/2], got [{w.min():.3g}, {w.max():.3g}]")
    Eb = E.basis
    if E.rank and op_norm(A @ Eb - Eb @ (dagger(Eb) @ A @ Eb)) > 1e3 * cfg.tau(op_norm(A)):
        raise InvalidInput("E does not span an invariant subspace of CS")
    Ec = complement_frame(E, cfg).basis

    def branch(B, f):
        if B.shape[1] == 0:
            return np.zeros((n, n), dtype=complex)
        lam, V = np.linalg.eigh(dagger(B) @ A @ B)
        sv = np.clip(2.0 * lam, 0.0, 1.0)
        W = B @ V
        return (W * f(sv)) @ dagger(W)

    X = branch(Eb, lambda t: 0.5 * np.arcsin(t)) + branch(Ec, lambda t: 0.5 * (np.arccos(t) + np.pi / 2))
    return 0.5 * (X + dagger(X))


def biorthonormal_bases(U, L0: Frame, cfg: ToleranceConfig = DEFAULT_TOL):
    """Orthonormal bases f, f' of L0 with <f_n, U f'_m> = 0 for n != m.

    Returns ``(f, f_prime, values)`` where ``values[n] = |<f_n, U f'_n>|`` are
    the singular values of the compression.  On the kernels the bases are
    completed by projecting canonical coordinate vectors, in index order.
    """
    U = check_unitary(U, cfg)
    if U.shape[0] != L0.ambient_dim:
        raise InvalidInput("U and L0 have different ambient dimensions")
    F = L0.basis
    k = L0.rank
    T = dagger(F) @ U @ F
    Y, s, Vh = np.linalg.svd(T) if k else (np.eye(0), np.zeros(0), np.eye(0))
    Z = dagger(Vh)
    r = int(np.sum(s > cfg.rank_tol * max(1.0, s[0] if k else 1.0)))
    if r < k:
        Y = np.hstack([Y[:, :r], complement_frame(Frame(Y[:, :r]), cfg).basis])
        Z = np.hstack([Z[:, :r], complement_frame(Frame(Z[:, :r]), cfg).basis])
    return F @ Y, F @ Z, s


def cross_gram(f: np.ndarray, U, f_prime: np.ndarray) -> np.ndarray:
    """Matrix of <f_n, U f'_m> (inner product linear in the first slot)."""
    return (dagger(np.asarray(U) @ f_prime) @ f).T


@dataclass
class CompressionReport:
    singular_values: np.ndarray
    relations: RelationsReport
    commutator: CommutatorReport
    invariant: bool
    defects: dict

    @property
    def max_defect(self) -> float:
        return max(self.defects.values())


def compression_report(U, L0: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> CompressionReport:
    """Singular values of P0 U|L0 together with the pair (L0, U L0) diagnostics."""
    U = check_unitary(U, cfg)
    F = L0.basis
    sv = np.linalg.svd(dagger(F) @ U @ F, compute_uv=False) if L0.rank else np.zeros(0)
    L1 = Frame(U @ F)
    rel = product_relations(L0, L1, cfg)
    com = commutator_spectrum(L0, L1, cfg)
    invariant = op_norm(U @ F - F @ (dagger(F) @ U @ F)) <= cfg.tau(1.0) * 1e2

    P0 = L0.projector()
    comm_sv = np.sort(np.linalg.svd(P0 @ U - U @ P0, compute_uv=False))
    diff_abs = np.sort(np.abs(np.linalg.eigvalsh(P0 - L1.projector())))
    defects = {
        "pair_singular_values": multiset_distance(sv, rel.singular_values_PQ),
        "commutator_vs_difference": multiset_distance(comm_sv, diff_abs),
        "relations": rel.max_identity_defect,
        "commutator": com.defect,
    }
    if invariant:
        defects["isometry"] = float(np.max(np.abs(sv - 1.0))) if sv.size else 0.0
    return CompressionReport(sv, rel, com, invariant, defects)


def davis_pair(A, U, cfg: ToleranceConfig = DEFAULT_TOL):
    """Projections P_U, Q_U with P_U - Q_U = A and U P_U U = Q_U.

    Requires a Hermitian contraction ``A`` and a symmetry ``U`` with UAU = -A.
    """
    A = as_matrix(A, "A")
    U = as_matrix(U, "U")
    n = A.shape[0]
    if A.shape != (n, n) or U.shape != (n, n):
        raise InvalidInput("A and U must be square of equal size")
    if not is_hermitian(A, cfg) or op_norm(A) > 1.0 + cfg.tau(1.0):
        raise InvalidInput("A must be a Hermitian contraction")
    if op_norm(U @ U - np.eye(n)) > cfg.tau(1.0) * 1e2 or not is_hermitian(U, cfg):
        raise InvalidInput("U must be a symmetry (U = U^* = U^-1)")
    if op_norm(U @ A @ U + A) > cfg.tau(op_norm(A)) * 1e2:
        raise InvalidInput("U A U = -A is violated")
    D = psd_sqrt(np.eye(n) - A @ A, cfg)
    I = np.eye(n)
    P = 0.5 * (I + A + U @ D)
    Q = 0.5 * (I - A + U @ D)
    return P, Q


def davis_pair_defects(A, U, P, Q) -> dict:
    return {
        "P_idempotent": op_norm(P @ P - P),
        "Q_idempotent": op_norm(Q @ Q - Q),
        "P_hermitian": op_norm(P - dagger(P)),
        "Q_hermitian": op_norm(Q - dagger(Q)),
        "difference": op_norm(P - Q - A),
        "conjugation": op_norm(U @ P @ U - Q),
    }


def block_unitary_of_projection(P) -> np.ndarray:
    """U_P = [[P, 1 - P], [1 - P, P]] on C^n x C^n.

    ``P`` may be a :class:`Frame` or a projector matrix.
    """
    Pm = P.projector() if isinstance(P, Frame) else as_matrix(P, "P")
    I = np.eye(Pm.shape[0])
    return np.block([[Pm, I - Pm], [I - Pm, Pm]])


def nongroup_compression_defect(P, Q) -> float:
    """|| P0 U_P U_Q P0 - diag(PQ + (1-P)(1-Q), 0) || with L0 the first factor."""
    Pm = P.projector() if isinstance(P, Frame) else np.asarray(P)
    Qm = Q.projector() if isinstance(Q, Frame) else np.asarray(Q)
    n = Pm.shape[0]
    I = np.eye(n)
    W = block_unitary_of_projection(Pm) @ block_unitary_of_projection(Qm)
    P0 = np.zeros((2 * n, 2 * n))
    P0[:n, :n] = I
    target = np.zeros((2 * n, 2 * n), dtype=W.dtype)
    target[:n, :n] = Pm @ Qm + (I - Pm) @ (I - Qm)
    return op_norm(P0 @ W @ P0 - target)


def frames_from_projectors(P, Q, cfg: ToleranceConfig = DEFAULT_TOL):
    return orthonormal_frame(P, cfg), orthonormal_frame(Q, cfg)
