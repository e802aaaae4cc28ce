"""Oblique projections Q = P_{S||T} and the symmetry rho_Q of 2Q - I = rho_Q |2Q - I|.

In the splitting C^n = S + S^perp every such Q is ``[[I, B], [0, 0]]`` with
``B = P_S Q|_{S^perp}``; the singular values beta of B determine the cosines
between S and T through s = beta / sqrt(beta^2 + 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_linalg import (
    DEFAULT_TOL,
    Frame,
    ToleranceConfig,
    check_same_ambient,
    complement_frame,
    dagger,
    hermitian_eig,
    multiset_distance,
    op_norm,
    polar,
)
from .errors import NotComplementary
from .two_projections import halmos_decompose


@dataclass(frozen=True)
class ObliqueProjection:
    Q: np.ndarray
    range_frame: Frame
    nullspace_frame: Frame
    range_complement: Frame  # orthonormal basis of S^perp used for B
    B: np.ndarray

    @property
    def n(self) -> int:
        return self.Q.shape[0]

    def adapted_basis(self) -> np.ndarray:
        return np.hstack([self.range_frame.basis, self.range_complement.basis])

    def block_form(self) -> np.ndarray:
        """Q in the basis [S | S^perp]; equals [[I, B], [0, 0]]."""
        W = self.adapted_basis()
        return dagger(W) @ self.Q @ W

    def defects(self) -> dict:
        Q = self.Q
        k = self.range_frame.rank
        target = np.zeros_like(self.block_form())
        target[:k, :k] = np.eye(k)
        target[:k, k:] = self.B
        scale = max(1.0, op_norm(Q))
        return {
            "idempotent": op_norm(Q @ Q - Q) / scale,
            "range": op_norm(Q @ self.range_frame.basis - self.range_frame.basis),
            "nullspace": op_norm(Q @ self.nullspace_frame.basis) if self.nullspace_frame.rank else 0.0,
            "block_form": op_norm(self.block_form() - target) / scale,
        }


def _make(Q, S: Frame, T: Frame, Sc: Frame) -> ObliqueProjection:
    B = dagger(S.basis) @ Q @ Sc.basis
    return ObliqueProjection(Q, S, T, Sc, B)


def oblique_projection(S: Frame, T: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> ObliqueProjection:
    """Idempotent with range S and nullspace T, via Q = P_S (P_S - P_T)^{-1}."""
    check_same_ambient(S, T)
    n = S.ambient_dim
    if S.rank + T.rank != n:
        raise NotComplementary(f"dim S + dim T = {S.rank + T.rank} != {n}")
    D = S.projector() - T.projector()
    smin = np.linalg.svd(D, compute_uv=False).min() if n else 1.0
    if smin < cfg.rank_tol:
        raise NotComplementary(f"P_S - P_T is singular (smallest singular value {smin:.3e})")
    Q = S.projector() @ np.linalg.inv(D)
    return _make(Q, S, T, complement_frame(S, cfg))


def sv_transfer(Q: ObliqueProjection, cfg: ToleranceConfig = DEFAULT_TOL):
    """``(beta, s, defect)``: singular values of B, their images under t/sqrt(t^2+1),
    and the distance of those to the directly computed singular values of P_S P_T."""
    B = Q.B
    beta = np.linalg.svd(B, compute_uv=False) if B.size else np.zeros(0)
    s = beta / np.sqrt(beta**2 + 1.0)
    PS, PT = Q.range_frame.projector(), Q.nullspace_frame.projector()
    direct = np.linalg.svd(PS @ PT, compute_uv=False)[: len(beta)]
    return beta, s, multiset_distance(s, direct)


@dataclass
class ReflectionPolar:
    rho: np.ndarray
    modulus: np.ndarray
    defects: dict

    @property
    def closed_form_defect(self) -> float:
        keys = ("closed_form_modulus", "closed_form_rho")
        return max(self.defects.get(k, 0.0) for k in keys)


def reflection_polar(Q: ObliqueProjection, cfg: ToleranceConfig = DEFAULT_TOL) -> ReflectionPolar:
    """Polar factors of 2Q - I, checked against the closed forms on the generic part of (R(Q), N(Q))."""
    n = Q.n
    I = np.eye(n)
    R = 2.0 * Q.Q - I
    rho, mod = polar(R, cfg)
    mod_inv = np.linalg.inv(mod)
    defects = {
        "rho_squared": op_norm(rho @ rho - I),
        "rho_hermitian": op_norm(rho - dagger(rho)),
        "intertwining": op_norm(rho @ mod - mod_inv @ rho) / max(1.0, op_norm(mod)),
        "reconstruction": op_norm(rho @ mod - R) / max(1.0, op_norm(R)),
    }

    model = halmos_decompose(Q.range_frame, Q.nullspace_frame, cfg)
    g = model.generic_dim
    if g:
        G = model.generic_basis
        C, S = model.C, model.S
        Sinv = np.diag(1.0 / np.sin(model.angles))
        I_g = np.eye(g)
        mod_closed = np.block([[S, -C], [-C, (I_g + C @ C) @ Sinv]])
        rho_closed = np.block([[S, -C], [-C, -S]])
        Q_closed = np.block([[I_g, -C @ Sinv], [np.zeros((g, g)), np.zeros((g, g))]])
        scale = max(1.0, op_norm(mod_closed))
        defects["closed_form_modulus"] = op_norm(dagger(G) @ mod @ G - mod_closed) / scale
        defects["closed_form_rho"] = op_norm(dagger(G) @ rho @ G - rho_closed)
        defects["halmos_form_Q"] = op_norm(dagger(G) @ Q.Q @ G - Q_closed) / scale
        defects["diagonalization"] = _lemma_diagonalization_defect(C, S)
    # non-generic part: modulus is the identity, rho is +1 on S & T^perp and -1 on S^perp & T
    for frame, sign in ((model.h10, 1.0), (model.h01, -1.0)):
        if frame.rank:
            Fb = frame.basis
            defects.setdefault("nongeneric", 0.0)
            defects["nongeneric"] = max(
                defects["nongeneric"],
                op_norm(mod @ Fb - Fb),
                op_norm(rho @ Fb - sign * Fb),
            )
    return ReflectionPolar(rho, mod, defects)


def _lemma_diagonalization_defect(C, S) -> float:
    """[[S^2, -2CS], [-2CS, 3C^2 + 1]] = U diag((1+C)^2, (1-C)^2) U^* with the explicit U."""
    g = C.shape[0]
    I = np.eye(g)
    c = np.real(np.diag(C))
    s = np.real(np.diag(S))
    M = np.block([[S @ S, -2 * C @ S], [-2 * C @ S, 3 * C @ C + I]])
    U = np.block(
        [
            [np.diag(-s / np.sqrt(1 + c)), np.diag(s / np.sqrt(1 - c))],
            [np.diag(np.sqrt(1 + c)), np.diag(np.sqrt(1 - c))],
        ]
    ) / np.sqrt(2.0)
    D = np.diag(np.concatenate([(1 + c) ** 2, (1 - c) ** 2]))
    scale = max(1.0, op_norm(M))
    return max(op_norm(U @ D @ dagger(U) - M) / scale, op_norm(dagger(U) @ U - np.eye(2 * g)))


@dataclass
class RhoReport:
    beta: np.ndarray
    QQstar_eigenvalues: np.ndarray
    corner_modulus_eigenvalues: np.ndarray
    defects: dict


def rho_in_sd_report(Q: ObliqueProjection, cfg: ToleranceConfig = DEFAULT_TOL) -> RhoReport:
    """Spectral data deciding whether rho_Q compressed to R(Q) is Schmidt decomposable."""
    k = Q.range_frame.rank
    beta = np.linalg.svd(Q.B, compute_uv=False) if Q.B.size else np.zeros(0)
    beta_full = np.concatenate([beta, np.zeros(k - len(beta))])
    QQ = Q.Q @ dagger(Q.Q)
    ev, _ = hermitian_eig(QQ, cfg)
    W = Q.adapted_basis()
    block = dagger(W) @ QQ @ W
    target = np.zeros_like(block)
    target[:k, :k] = np.eye(k) + Q.B @ dagger(Q.B)

    rp = polar(2.0 * Q.Q - np.eye(Q.n), cfg)[1]
    F = Q.range_frame.basis
    corner = dagger(F) @ rp @ F
    corner_ev, _ = hermitian_eig(corner, cfg)

    scale = max(1.0, op_norm(QQ))
    defects = {
        "QQstar_block": op_norm(block - target) / scale,
        "QQstar_spectrum": multiset_distance(ev[:k], 1.0 + beta_full**2) / scale,
        "QQstar_kernel": float(np.max(np.abs(ev[k:]))) / scale if ev.size > k else 0.0,
        # 1,1 entry of |2Q - I| has spectrum sin(x) = 1/sqrt(1 + beta^2)
        "corner_modulus_spectrum": multiset_distance(corner_ev, 1.0 / np.sqrt(1.0 + beta_full**2)),
    }
    return RhoReport(beta, ev, corner_ev, defects)


def positive_normal_form(Q: ObliqueProjection, cfg: ToleranceConfig = DEFAULT_TOL):
    """Unitary conjugate ``Q_plus = V^* Q V`` whose corner block is nonnegative.

    For a square corner B = |B^*| U_p the basis of S^perp is rotated by U_p^*,
    giving B_plus = |B^*|.  For rectangular B both bases are rotated by the
    singular vectors, giving a nonnegative rectangular diagonal.
    Returns ``(Q_plus, V)``.
    """
    B = Q.B
    k, m = B.shape
    F, Fc = Q.range_frame.basis, Q.range_complement.basis
    if k == m and k:
        Y, _, Vh = np.linalg.svd(B)
        Rs, Rc = np.eye(k), dagger(Y @ Vh)
    elif k and m:
        Y, _, Vh = np.linalg.svd(B)
        Rs, Rc = Y, dagger(Vh)
    else:
        Rs, Rc = np.eye(k), np.eye(m)
    V = np.hstack([F @ Rs, Fc @ Rc])
    Qp = dagger(V) @ Q.Q @ V
    n = Q.n
    S_plus = Frame(np.eye(n, dtype=Qp.dtype)[:, :k])
    Sc_plus = Frame(np.eye(n, dtype=Qp.dtype)[:, k:])
    T_plus = Frame(dagger(V) @ Q.nullspace_frame.basis)
    return ObliqueProjection(Qp, S_plus, T_plus, Sc_plus, Qp[:k, k:].copy()), V
