"""Unitary dilations of a contraction A.

* ``V_A = [[A, D_{A*}], [D_A, -A^*]]`` on L0 x L0, with J V_A its
  coordinate swap;
* the Sz.-Nagy--Foias dilation on a cyclic truncation of the Z-indexed sum
  of copies of L0, where the shift times the dilation is
  ``I + N_A + I`` with ``N_A = J V_A`` on L0 + L1.

Defect operators: D_A = (1 - A^*A)^{1/2}, D_{A*} = (1 - AA^*)^{1/2}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    dagger,
    multiset_distance,
    op_norm,
    psd_sqrt,
    unitarity_defect,
)
from .errors import InvalidInput, NotContraction


def check_contraction(A, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    A = as_matrix(A, "A")
    if A.shape[0] != A.shape[1]:
        raise InvalidInput(f"A must be square, got shape {A.shape}")
    nrm = op_norm(A)
    if nrm > 1.0 + cfg.tau(1.0):
        raise NotContraction(f"||A|| = {nrm:.12g} > 1")
    return A


def defect_operators(A, cfg: ToleranceConfig = DEFAULT_TOL):
    """``(D_A, D_{A*})``."""
    A = check_contraction(A, cfg)
    I = np.eye(A.shape[0])
    return psd_sqrt(I - dagger(A) @ A, cfg), psd_sqrt(I - A @ dagger(A), cfg)


def halmos_dilation(A, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    A = check_contraction(A, cfg)
    DA, DAs = defect_operators(A, cfg)
    return np.block([[A, DAs], [DA, -dagger(A)]])


def swap(d: int) -> np.ndarray:
    """J = [[0, 1], [1, 0]] on C^d x C^d."""
    I = np.eye(d)
    O = np.zeros((d, d))
    return np.block([[O, I], [I, O]])


def jv_matrix(A, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    A = check_contraction(A, cfg)
    return swap(A.shape[0]) @ halmos_dilation(A, cfg)


@dataclass
class JVSpectrum:
    eigenvalues: np.ndarray
    expected: np.ndarray
    singular_values: np.ndarray
    defects: dict

    @property
    def defect(self) -> float:
        return max(self.defects.values())


def expected_jv_spectrum(singular_values) -> np.ndarray:
    """sqrt(1 - s^2) +- i s, one pair per singular value (zeros give 1, 1)."""
    s = np.asarray(singular_values, dtype=float)
    c = np.sqrt(np.clip(1.0 - s**2, 0.0, None))
    return np.concatenate([c + 1j * s, c - 1j * s])


def jv_spectrum(A, cfg: ToleranceConfig = DEFAULT_TOL) -> JVSpectrum:
    """Eigenvalues of J V_A against sqrt(1 - s_n^2) +- i s_n."""
    A = check_contraction(A, cfg)
    d = A.shape[0]
    DA, DAs = defect_operators(A, cfg)
    M = jv_matrix(A, cfg)
    ev = np.linalg.eigvals(M)
    s = np.linalg.svd(A, compute_uv=False)
    expected = expected_jv_spectrum(s)

    # real part diag(D_A, D_A*), imaginary part [[0, -A^*], [A, 0]]
    O = np.zeros((d, d))
    re = np.block([[DA, O], [O, DAs]])
    im = np.block([[O, -dagger(A)], [A, O]])
    defects = {
        "spectrum": multiset_distance(ev, expected),
        "unitary": unitarity_defect(M),
        "real_part": op_norm(0.5 * (M + dagger(M)) - re),
        "imaginary_part": op_norm(0.5 * (M - dagger(M)) - im),
        "parts_commute": op_norm(re @ im - im @ re),
    }
    # identity on N(A) x 0 + 0 x N(A^*)
    U_, s_, Vh = np.linalg.svd(A)
    null_tol = cfg.rank_tol * max(1.0, s_[0] if s_.size else 1.0)
    kerA = dagger(Vh)[:, s_ <= null_tol]
    kerAs = U_[:, s_ <= null_tol]
    if kerA.shape[1]:
        K = np.vstack([kerA, np.zeros_like(kerA)])
        Ks = np.vstack([np.zeros_like(kerAs), kerAs])
        defects["kernel_identity"] = max(op_norm(M @ K - K), op_norm(M @ Ks - Ks))
    return JVSpectrum(ev, expected, s, defects)


def _block_index(i: int, N: int) -> int:
    """Position of block i (taken mod 2N + 1, in -N..N) in the stacked vector."""
    m = 2 * N + 1
    return ((i + N) % m)


def nagy_foias_truncated(A, N: int, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Nagy--Foias dilation on blocks -N..N with the shift structure closed cyclically.

    Block entries: U[0,0] = A, U[0,1] = D_{A*}, U[-1,0] = D_A, U[-1,1] = -A^*,
    U[i,i+1] = I for every other i (indices mod 2N + 1).
    """
    A = check_contraction(A, cfg)
    if int(N) != N or N < 2:
        raise InvalidInput(f"N must be an integer >= 2, got {N!r}")
    N = int(N)
    d = A.shape[0]
    DA, DAs = defect_operators(A, cfg)
    m = 2 * N + 1
    U = np.zeros((m * d, m * d), dtype=np.result_type(A, float))

    def put(i, j, block):
        r, c = _block_index(i, N), _block_index(j, N)
        U[r * d : (r + 1) * d, c * d : (c + 1) * d] = block

    put(0, 0, A)
    put(0, 1, DAs)
    put(-1, 0, DA)
    put(-1, 1, -dagger(A))
    for i in range(-N, N + 1):
        if i in (0, -1):
            continue
        put(i, i + 1, np.eye(d))
    return U


def block_shift(d: int, N: int) -> np.ndarray:
    """Cyclic bilateral shift S: block j -> block j + 1."""
    m = 2 * N + 1
    P = np.zeros((m, m))
    for j in range(-N, N + 1):
        P[_block_index(j + 1, N), _block_index(j, N)] = 1.0
    return np.kron(P, np.eye(d))


def center_block(M: np.ndarray, d: int, N: int) -> np.ndarray:
    c = _block_index(0, N)
    return M[c * d : (c + 1) * d, c * d : (c + 1) * d]


@dataclass
class DilationBlockReport:
    N_A: np.ndarray
    defects: dict

    @property
    def defect(self) -> float:
        return max(self.defects.values())


def dilation_block_check(A, N: int, cfg: ToleranceConfig = DEFAULT_TOL, powers: int = 3) -> DilationBlockReport:
    """Check S U_A = I + N_A + I and the usual dilation sanity facts."""
    A = check_contraction(A, cfg)
    d = A.shape[0]
    U = nagy_foias_truncated(A, N, cfg)
    S = block_shift(d, N)
    SU = S @ U
    DA, DAs = defect_operators(A, cfg)
    N_A = np.block([[DA, -dagger(A)], [A, DAs]])

    target = np.eye(U.shape[0], dtype=SU.dtype)
    c0, c1 = _block_index(0, N), _block_index(1, N)
    idx = np.r_[c0 * d : (c0 + 1) * d, c1 * d : (c1 + 1) * d]
    target[np.ix_(idx, idx)] = N_A

    defects = {
        "unitary": unitarity_defect(U),
        "block_identity": op_norm(SU - target),
        "N_A_equals_JV_A": op_norm(N_A - jv_matrix(A, cfg)),
        "center": op_norm(center_block(U, d, N) - A),
    }
    Uk = np.eye(U.shape[0], dtype=U.dtype)
    Ak = np.eye(d, dtype=A.dtype)
    power_defect = 0.0
    for _ in range(min(powers, 2 * N - 1)):
        Uk = Uk @ U
        Ak = Ak @ A
        power_defect = max(power_defect, op_norm(center_block(Uk, d, N) - Ak))
    defects["powers"] = power_defect
    return DilationBlockReport(N_A, defects)


def random_contraction(d: int, rng: np.random.Generator, norm: float = 0.95) -> np.ndarray:
    """Complex Gaussian matrix rescaled to the given spectral norm."""
    G = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return G * (norm / np.linalg.norm(G, 2))
