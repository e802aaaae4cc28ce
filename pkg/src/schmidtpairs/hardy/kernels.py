"""Blaschke products, Szego kernels and model spaces in truncated H^2.

Functions in H^2 are represented by their Taylor coefficients 0..N.  The
Szego kernel at b has coefficients ``conj(b)^n``, and

    <c_a, c_b> = c_a(b) = 1 / (1 - conj(a) b).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core_linalg import DEFAULT_TOL, Frame, ToleranceConfig, complement_frame, dagger, multiset_distance, op_norm
from ..errors import ConfluentZeros, InvalidInput
from ..oblique import oblique_projection, sv_transfer
from ..two_projections import principal_data

# target size of the dropped Taylor tail of a normalized kernel
_TAIL = 1e-14


def _points(values, name: str) -> np.ndarray:
    z = np.atleast_1d(np.asarray(values, dtype=complex)).ravel()
    if not np.all(np.isfinite(z)):
        raise InvalidInput(f"{name} has non-finite entries")
    if np.any(np.abs(z) >= 1.0):
        raise InvalidInput(f"{name} must lie in the open unit disk, max modulus {np.abs(z).max():.17g}")
    return z


@dataclass(frozen=True)
class BlaschkeData:
    """Finite Blaschke product prod (z - a_j) / (1 - conj(a_j) z)."""

    zeros: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "zeros", _points(self.zeros, "zeros"))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.ones_like(z)
        for a in self.zeros:
            out = out * (z - a) / (1.0 - np.conj(a) * z)
        return out

    @property
    def value_at_zero(self) -> complex:
        return complex(np.prod(-self.zeros)) if self.degree else 1.0 + 0j


def check_distinct(points: np.ndarray, cfg: ToleranceConfig = DEFAULT_TOL) -> None:
    d = np.abs(points[:, None] - points[None, :])
    np.fill_diagonal(d, np.inf)
    if d.size and d.min() <= cfg.rank_tol:
        i, j = np.unravel_index(np.argmin(d), d.shape)
        raise ConfluentZeros(f"zeros {points[i]} and {points[j]} coincide within {cfg.rank_tol:g}")


@dataclass(frozen=True)
class SzegoKernelSet:
    """Kernels c_b at distinct points and their Gram matrix ``G[j, k] = <c_k, c_j>``."""

    points: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "points", _points(self.points, "points"))

    @property
    def gram(self) -> np.ndarray:
        b = self.points
        return 1.0 / (1.0 - b[:, None] * np.conj(b)[None, :])

    def coefficients(self, N: int) -> np.ndarray:
        """(N+1) x m matrix of Taylor coefficients ``conj(b)^n``."""
        n = np.arange(N + 1)[:, None]
        return np.conj(self.points)[None, :] ** n


def inner(x, y) -> np.ndarray:
    """Matrix of ``<c_x, c_y> = 1 / (1 - conj(x) y)``."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    y = np.atleast_1d(np.asarray(y, dtype=complex))
    return 1.0 / (1.0 - np.conj(x)[:, None] * y[None, :])


def truncation_size(points, degree: int | None = None) -> int:
    """Smallest N >= max(64, 8 d) with max|b|^(N+1) below the tail target."""
    z = np.atleast_1d(np.asarray(points, dtype=complex))
    d = len(z) if degree is None else degree
    N = max(64, 8 * d)
    r = float(np.abs(z).max()) if z.size else 0.0
    if r > 0:
        N = max(N, int(np.ceil(np.log(_TAIL) / np.log(r))))
    return N


def blaschke_truncation(points, N: int):
    """TrigTruncation for a rational symbol with poles at 1/conj(points) and at points.

    The guard band and node count follow the decay of the Fourier
    coefficients, so the dropped rows and the aliased terms stay below the
    tail target.
    """
    from .circle import TrigTruncation

    G = truncation_size(points)
    return TrigTruncation(N, M=3 * N + 2 * G + 1, guard=G)


def model_space_frame(theta: BlaschkeData, N: int | None = None, cfg: ToleranceConfig = DEFAULT_TOL) -> Frame:
    """Orthonormal basis of K_theta in Taylor coordinates 0..N.

    Kernels at the zeros are orthonormalized in input order; theta = z^d
    gives the monomials 1, ..., z^(d-1).
    """
    a = theta.zeros
    if theta.degree == 0:
        raise InvalidInput("theta must have degree >= 1")
    if N is None:
        N = truncation_size(a)
    if N + 1 < theta.degree:
        raise InvalidInput(f"truncation N={N} too small for degree {theta.degree}")
    if np.all(a == 0):
        return Frame(np.eye(N + 1, dtype=complex)[:, : theta.degree])
    check_distinct(a, cfg)
    K = SzegoKernelSet(a).coefficients(N)
    Qm, R = np.linalg.qr(K)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Frame(Qm * ph[None, :])


def kernel_residual(theta: BlaschkeData, N: int) -> float:
    """Largest relative tail norm of the normalized kernels dropped by truncating at N."""
    r = float(np.abs(theta.zeros).max()) if theta.degree else 0.0
    return r ** (N + 1)


@dataclass
class TruncatedShiftReport:
    singular_values: np.ndarray
    expected: np.ndarray
    defects: dict
    N: int

    @property
    def defect(self) -> float:
        return max(self.defects.values())


def truncated_shift_singulars(theta: BlaschkeData, N: int | None = None, cfg: ToleranceConfig = DEFAULT_TOL) -> TruncatedShiftReport:
    """Singular values of P_theta M_z restricted to K_theta.

    Expected: d - 1 ones and |theta(0)|.  Also checks the rank-one identity
    ``P_theta S P_- = conj(theta(0)) theta (x) z^{-1}`` on a Laurent window.
    """
    if theta.degree == 0:
        raise InvalidInput("theta must have degree >= 1")
    if N is None:
        N = truncation_size(theta.zeros)
    F = model_space_frame(theta, N, cfg).basis
    # z f has coefficients shifted by one; the top one leaves the window
    M = dagger(F[1:]) @ F[:-1]
    sv = np.linalg.svd(M, compute_uv=False)
    expected = np.concatenate([np.ones(theta.degree - 1), [abs(theta.value_at_zero)]])
    defects = {
        "singular_values": multiset_distance(sv, expected),
        "frame_orthonormality": float(np.abs(dagger(F) @ F - np.eye(theta.degree)).max()),
        "truncation_residual": kernel_residual(theta, N),
        "rank_one_identity": _rank_one_identity_defect(theta, N),
    }
    return TruncatedShiftReport(sv, expected, defects, N)


def _rank_one_identity_defect(theta: BlaschkeData, N: int) -> float:
    """|| P_theta S P_- - conj(theta(0)) theta (x) z^{-1} || on indices -N..N, P_theta onto theta H^2."""
    m = 2 * N + 1
    M_nodes = 4 * N + 1
    w = np.exp(2j * np.pi * np.arange(M_nodes) / M_nodes)
    coef = np.fft.fft(theta(w)) / M_nodes  # coef[k] = theta_hat(k) up to aliasing
    idx = np.arange(-N, N + 1)
    Mth = coef[(idx[:, None] - idx[None, :]) % M_nodes]
    Pplus = np.diag((idx >= 0).astype(float))
    Pminus = np.eye(m) - Pplus
    Ptheta = Mth @ Pplus @ dagger(Mth)
    S = np.zeros((m, m))
    S[np.arange(1, m), np.arange(m - 1)] = 1.0
    lhs = Ptheta @ S @ Pminus
    th_vec = coef[idx % M_nodes]
    rhs = np.conj(theta.value_at_zero) * np.outer(th_vec, (idx == -1).astype(float))
    return op_norm(lhs - rhs)


@dataclass
class RationalSymbolReport:
    """Sub-1 singular values for the symbol B_a / B_b along independent routes.

    s_direct: Toeplitz compression of the symbol; s_generic: P_H'a P_H'b in K_ab;
    s_oblique: from the corner block of the idempotent onto K_a along K_b;
    s_gram: the explicit 2 x 2 matrix (n = 2 only).
    """

    s_direct: np.ndarray
    s_generic: np.ndarray
    s_oblique: np.ndarray
    s_gram: np.ndarray | None
    beta: np.ndarray
    corner_dims: tuple
    defects: dict
    N: int

    @property
    def defect(self) -> float:
        return max(self.defects.values())


def _validate_pair(a, b, cfg):
    a = BlaschkeData(a).zeros
    b = BlaschkeData(b).zeros
    if len(a) != len(b) or len(a) == 0:
        raise InvalidInput(f"zero sets need equal positive size, got {len(a)} and {len(b)}")
    check_distinct(a, cfg)
    check_distinct(b, cfg)
    gap = np.abs(a[:, None] - b[None, :]).min()
    if gap <= cfg.rank_tol:
        raise InvalidInput(f"zero sets overlap (closest pair {gap:.3e} apart)")
    return a, b


def _generic_route(a, b, N, cfg):
    """Cosines between H'_a = K_ab - K_a and H'_b = K_ab - K_b, in K_ab coordinates."""
    n = len(a)
    Fab = model_space_frame(BlaschkeData(np.concatenate([a, b])), N, cfg).basis
    Fa = model_space_frame(BlaschkeData(a), N, cfg).basis
    Fb = model_space_frame(BlaschkeData(b), N, cfg).basis
    Ha = complement_frame(Frame(dagger(Fab) @ Fa), cfg)
    Hb = complement_frame(Frame(dagger(Fab) @ Fb), cfg)
    if Ha.rank != n or Hb.rank != n:
        raise InvalidInput("kernels at the zeros are numerically dependent")
    pd = principal_data(Ha, Hb, cfg)
    return pd.cosines[:n].copy(), (pd.dim10, pd.dim01)


def _oblique_route(a, b, cfg):
    """Exact coordinates from the Cholesky factor of the closed-form Gram."""
    n = len(a)
    G = SzegoKernelSet(np.concatenate([a, b])).gram
    L = np.linalg.cholesky(G)
    Y = dagger(L)  # columns have inner products G
    Sa = Frame(np.linalg.qr(Y[:, :n])[0])
    Sb = Frame(np.linalg.qr(Y[:, n:])[0])
    Q = oblique_projection(Sa, Sb, cfg)
    beta, s, transfer = sv_transfer(Q, cfg)
    order = np.argsort(-s)
    return s[order], beta[order], transfer


def gram_schmidt_pair(x1: complex, x2: complex):
    """Coefficients of u1 = c_x1, u2 = c_x2 - <c_x2, c_x1>/||c_x1||^2 c_x1 in the kernel basis."""
    coef = (1.0 - abs(x1) ** 2) / (1.0 - np.conj(x2) * x1)
    return np.array([[1.0, 0.0], [-coef, 1.0]], dtype=complex)


def _kernel_form(alpha, x, beta, y) -> complex:
    """<sum alpha_m c_{x_m}, sum beta_l c_{y_l}>."""
    return complex(alpha @ inner(x, y) @ np.conj(beta))


def two_zero_gram_matrix(a, b) -> np.ndarray:
    """2 x 2 matrix whose eigenvalues are the squared cosines, for n = 2.

    Entry (i, j) is sum_k <u_i, v_k><v_k, u_j> / (||v_k||^2 ||u_i|| ||u_j||)
    with u, v the Gram-Schmidt bases of K_a and K_b.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    U = gram_schmidt_pair(*a)
    V = gram_schmidt_pair(*b)
    ip = lambda p, xp, q, xq: _kernel_form(p, xp, q, xq)  # noqa: E731
    un = [np.sqrt(ip(U[i], a, U[i], a).real) for i in range(2)]
    vn = [np.sqrt(ip(V[k], b, V[k], b).real) for k in range(2)]
    M = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            M[i, j] = sum(
                ip(U[i], a, V[k], b) * ip(V[k], b, U[j], a) / (vn[k] ** 2 * un[i] * un[j]) for k in range(2)
            )
    return M


def _direct_route(a, b, N):
    from .circle import toeplitz_compression

    trunc = blaschke_truncation(np.concatenate([a, b]), N)
    phi = BlaschkeData(a)(trunc.nodes) / BlaschkeData(b)(trunc.nodes)
    T, _ = toeplitz_compression(phi, trunc)
    sv = np.linalg.svd(T, compute_uv=False)
    return np.sort(sv)[: len(a)][::-1].copy()


def rational_symbol_singulars(a, b, cfg: ToleranceConfig = DEFAULT_TOL, N: int | None = None) -> RationalSymbolReport:
    """Singular values below one of the compression of M_{B_a / B_b} to H^2, by several routes."""
    a, b = _validate_pair(a, b, cfg)
    if N is None:
        N = truncation_size(np.concatenate([a, b]))
    s_generic, corners = _generic_route(a, b, N, cfg)
    s_oblique, beta, transfer = _oblique_route(a, b, cfg)
    s_direct = _direct_route(a, b, N)
    s_gram = None
    if len(a) == 2:
        ev = np.linalg.eigvalsh(0.5 * (two_zero_gram_matrix(a, b) + dagger(two_zero_gram_matrix(a, b))))
        s_gram = np.sqrt(np.clip(ev, 0.0, None))[::-1]
    routes = {"direct": s_direct, "generic": s_generic, "oblique": s_oblique}
    if s_gram is not None:
        routes["gram"] = s_gram
    names = list(routes)
    defects = {"oblique_transfer": transfer}
    for i, p in enumerate(names):
        for q in names[i + 1 :]:
            defects[f"{p}_vs_{q}"] = multiset_distance(routes[p], routes[q])
    return RationalSymbolReport(s_direct, s_generic, s_oblique, s_gram, beta, corners, defects, N)
