"""Trigonometric truncations of L^2(T), Toeplitz/Hankel compressions and the
bilateral shift acting on symmetric sequences.

Basis index n stands for z^n; the quadrature nodes are the M-th roots of
unity, so ``fft(samples) / M`` gives Fourier coefficients up to aliasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core_linalg import DEFAULT_TOL, Frame, ToleranceConfig, multiset_distance, op_norm
from ..errors import InvalidInput, InvalidSymbol
from ..grassmann import geodesic_distance


@dataclass(frozen=True)
class TrigTruncation:
    """Indices -N..N with M >= 2N + 1 quadrature nodes (default 4N + 1).

    ``guard`` extra analytic rows are kept below the compression so that a
    symbol which moves mass upward (such as z) is not cut off.
    """

    N: int
    M: int | None = None
    guard: int | None = None

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise InvalidInput(f"N must be a positive integer, got {self.N!r}")
        if self.M is None:
            object.__setattr__(self, "M", 4 * self.N + 1)
        if self.guard is None:
            object.__setattr__(self, "guard", self.N)
        if self.M < 2 * self.N + 1:
            raise InvalidInput(f"need M >= 2N + 1 nodes, got M={self.M}, N={self.N}")
        if self.guard < 0:
            raise InvalidInput("guard must be nonnegative")

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    @property
    def nodes(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.M) / self.M)

    def coefficients(self, samples) -> np.ndarray:
        """Length-M array c with c[k mod M] the k-th Fourier coefficient."""
        f = np.asarray(samples, dtype=complex)
        if f.shape != (self.M,):
            raise InvalidInput(f"expected {self.M} samples, got shape {f.shape}")
        return np.fft.fft(f) / self.M


def toeplitz_compression(samples, trunc: TrigTruncation, cfg: ToleranceConfig = DEFAULT_TOL):
    """``(T, H)``: P_+ M_phi on analytic indices 0..N and P_+ M_phi on -N..-1.

    Both blocks have rows 0..N + guard.  Requires M >= 3N + guard + 1 so
    that no coefficient in the blocks is aliased for a trigonometric
    polynomial symbol of matching degree.
    """
    f = np.asarray(samples, dtype=complex)
    if not np.all(np.isfinite(f)):
        raise InvalidSymbol("symbol samples are not finite")
    dev = np.abs(np.abs(f) - 1.0).max() if f.size else 0.0
    if dev > cfg.tau(1.0):
        raise InvalidSymbol(f"symbol is not unimodular on the nodes (max ||phi| - 1| = {dev:.3e})")
    N, G, M = trunc.N, trunc.guard, trunc.M
    if M < 3 * N + G + 1:
        raise InvalidInput(f"need M >= 3N + guard + 1 = {3 * N + G + 1} nodes, got {M}")
    c = trunc.coefficients(f)
    rows = np.arange(0, N + G + 1)
    T = c[(rows[:, None] - np.arange(0, N + 1)[None, :]) % M]
    H = c[(rows[:, None] - np.arange(-N, 0)[None, :]) % M]
    return T, H


@dataclass
class ShiftSymmetricReport:
    N: int
    distance: float
    cosines: np.ndarray
    compression_eigenvalues: np.ndarray
    histogram: tuple
    defects: dict = field(default_factory=dict)

    @property
    def defect(self) -> float:
        return max(self.defects.values()) if self.defects else 0.0


def symmetric_frame(N: int) -> np.ndarray:
    """Columns e_0 and (e_k + e_{-k}) / sqrt 2, k = 1..N, on indices -N..N (real)."""
    m = 2 * N + 1
    F = np.zeros((m, N + 1))
    F[N, 0] = 1.0
    k = np.arange(1, N + 1)
    F[N + k, k] = 1.0 / np.sqrt(2.0)
    F[N - k, k] = 1.0 / np.sqrt(2.0)
    return F


def _cyclic_shift_rows(F: np.ndarray) -> np.ndarray:
    # e_j -> e_{j+1} with -N..N taken cyclically
    return np.roll(F, 1, axis=0)


def symmetric_subspace_shift(N: int, cfg: ToleranceConfig = DEFAULT_TOL, dense_checks: bool | None = None, bins: int = 20) -> ShiftSymmetricReport:
    """Symmetric sequences L0 = R(1/2(1 + Pi)) against S L0 for the cyclic shift S.

    Dense operator checks (entrywise formula, self-adjointness, action as
    multiplication by Re z at the nodes) run when ``dense_checks`` is true,
    by default for N <= 512.  The distance comes from principal angles only.
    """
    if int(N) != N or N < 2:
        raise InvalidInput(f"N must be an integer >= 2, got {N!r}")
    N = int(N)
    m = 2 * N + 1
    if dense_checks is None:
        dense_checks = N <= 512
    F0 = symmetric_frame(N)
    F1 = _cyclic_shift_rows(F0)
    L0, L1 = Frame(F0), Frame(F1)

    # the compression P0 S P0 restricted to L0, in the frame F0
    C = F0.T @ F1
    cosines = np.sort(np.linalg.svd(C, compute_uv=False))[::-1]
    ev = np.sort(np.linalg.eigvalsh(0.5 * (C + C.T)))[::-1]
    theta = 2.0 * np.pi * np.arange(N + 1) / m
    defects = {
        "selfadjoint": op_norm(C - C.T),
        "eigenvalues_vs_cos": multiset_distance(ev, np.cos(theta)),
        # cos^2 X = (Re z^2 + 1) / 2 at the nodes
        "cos2_relation": multiset_distance(cosines**2, 0.5 * (np.cos(2 * theta) + 1.0)),
    }
    if dense_checks:
        defects.update(_dense_shift_checks(N))
    distance = geodesic_distance(L0, L1, cfg)
    hist = np.histogram(ev, bins=bins, range=(-1.0, 1.0))
    return ShiftSymmetricReport(N, distance, cosines, ev, (hist[0], hist[1]), defects)


def exact_distance(N: int) -> float:
    """pi/2 - pi / (2(2N+1)): the largest principal angle between L0 and S L0."""
    return 0.5 * np.pi - 0.5 * np.pi / (2 * N + 1)


def _dense_shift_checks(N: int) -> dict:
    m = 2 * N + 1
    idx = np.arange(-N, N + 1)
    pos = lambda j: (np.asarray(j) + N) % m  # noqa: E731
    Pi = np.zeros((m, m))
    Pi[pos(-idx), pos(idx)] = 1.0
    S = np.zeros((m, m))
    S[pos(idx + 1), pos(idx)] = 1.0
    P0 = 0.5 * (np.eye(m) + Pi)
    C = P0 @ S @ P0

    # P0 S P0 e_n = (e_{n+1} + e_{n-1} + e_{-n-1} + e_{-n+1}) / 4, cyclic indices
    formula = np.zeros((m, m))
    for n in idx:
        for j in (n + 1, n - 1, -n - 1, -n + 1):
            formula[pos(j), pos(n)] += 0.25
    e = np.eye(m)
    e0_rule = op_norm(C[:, pos(0)][:, None] - 0.5 * (e[:, pos(1)] + e[:, pos(-1)])[:, None])

    # multiplication by (z + conj z)/2 on symmetric functions at the m-th roots of unity
    F0 = symmetric_frame(N)
    w = np.exp(2j * np.pi * np.arange(m) / m)
    E = w[:, None] ** idx[None, :]
    mult = op_norm(E @ C @ F0 - (w.real[:, None]) * (E @ F0))
    return {
        "entrywise_formula": float(np.abs(C - formula).max()),
        "e0_formula": e0_rule,
        "projector": op_norm(P0 @ P0 - P0),
        "selfadjoint_on_L0": op_norm(P0 @ (C - C.T) @ P0),
        "multiplication_by_re_z": mult / np.sqrt(m),
    }
