"""Discretized Fourier-Plancherel transform, time-band limiting and the
half-line compression P0 U P0.

The transform is ``(U f)(w) = (2 pi)^{-1/2} int f(x) e^{-ixw} dx``, so the
L^2-normalized Hermite functions satisfy ``U psi_n = (-i)^n psi_n``.  It is
discretized on the centered grid ``x_j = (j - (n-1)/2) h``: with spacing
``h`` in time and ``2 pi / (n h)`` in frequency the matrix
``exp(-2 pi i (k-c)(j-c) / n) / sqrt(n)`` is unitary, and for even n the
grid flip x -> -x is an exact involution with no node at the origin.
Grid functions carry the weight sqrt(h), so Euclidean norms approximate L^2
norms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from ..core_linalg import dagger, op_norm
from ..errors import GridTooCoarse, InvalidInput


def hermite_functions(x, K: int) -> np.ndarray:
    """Rows psi_0..psi_K at points x, by the normalized three-term recurrence."""
    x = np.asarray(x, dtype=float)
    out = np.zeros((K + 1,) + x.shape)
    out[0] = np.pi ** (-0.25) * np.exp(-0.5 * x**2)
    if K >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for n in range(1, K):
        out[n + 1] = np.sqrt(2.0 / (n + 1)) * x * out[n] - np.sqrt(n / (n + 1)) * out[n - 1]
    return out


@dataclass(frozen=True)
class CenteredGrid:
    n: int
    h: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 64:
            raise InvalidInput(f"grid size must be an integer >= 64, got {self.n!r}")
        if self.n % 2:
            raise InvalidInput(f"grid size must be even, got {self.n}")
        if not (np.isfinite(self.h) and self.h > 0):
            raise InvalidInput(f"grid spacing must be positive, got {self.h!r}")

    @classmethod
    def self_dual(cls, n: int) -> "CenteredGrid":
        return cls(n, float(np.sqrt(2.0 * np.pi / n)))

    @property
    def centered_index(self) -> np.ndarray:
        return np.arange(self.n) - 0.5 * (self.n - 1)

    @property
    def x(self) -> np.ndarray:
        return self.centered_index * self.h

    @property
    def omega(self) -> np.ndarray:
        return self.centered_index * (2.0 * np.pi / (self.n * self.h))

    def dft_block(self, rows, cols) -> np.ndarray:
        """Rows/columns (index arrays) of the unitary transform matrix."""
        c = self.centered_index
        return np.exp(-2j * np.pi * np.outer(c[rows], c[cols]) / self.n) / np.sqrt(self.n)

    def dft(self) -> np.ndarray:
        idx = np.arange(self.n)
        return self.dft_block(idx, idx)


def _pair(value, name):
    try:
        lo, hi = (float(v) for v in value)
    except (TypeError, ValueError):
        raise InvalidInput(f"{name} must be a pair of numbers, got {value!r}") from None
    if not (np.isfinite(lo) and np.isfinite(hi)) or hi <= lo:
        raise InvalidInput(f"{name} must satisfy lo < hi with finite ends, got ({lo}, {hi})")
    return lo, hi


def prolate_compression(interval, band, grid: int = 2048, span: float | None = None) -> np.ndarray:
    """Eigenvalues of P_interval U^* P_band U P_interval, nonincreasing.

    ``span`` is the total time extent of the grid; by default the grid is
    self-dual (time and frequency spacing both sqrt(2 pi / grid)).
    """
    t0, t1 = _pair(interval, "interval")
    w0, w1 = _pair(band, "band")
    if int(grid) != grid or grid < 64:
        raise InvalidInput(f"grid must be an integer >= 64, got {grid!r}")
    grid = int(grid) + int(grid) % 2
    g = CenteredGrid.self_dual(grid) if span is None else CenteredGrid(grid, float(span) / grid)
    cols = np.flatnonzero((g.x > t0) & (g.x < t1))
    rows = np.flatnonzero((g.omega >= w0) & (g.omega <= w1))
    if cols.size == 0:
        raise InvalidInput(f"interval ({t0}, {t1}) contains no grid node (spacing {g.h:.3g})")
    if rows.size == 0:
        return np.zeros(cols.size)
    A = g.dft_block(rows, cols)
    s = np.linalg.svd(A, compute_uv=False)
    ev = np.zeros(cols.size)
    ev[: s.size] = s**2
    return np.sort(ev)[::-1]


@dataclass
class HalfLineReport:
    K: int
    grid: CenteredGrid
    re_eigenvalues: np.ndarray
    re_expected: np.ndarray
    re_residuals: np.ndarray
    im_eigenvalues: np.ndarray
    im_expected: np.ndarray
    im_residuals: np.ndarray
    chi_norm: float
    chi_norm_quadrature: float
    defects: dict = field(default_factory=dict)
    diagnostics: dict = field(default_factory=dict)


def chi_unit_norm_quadrature() -> float:
    """||P0 U chi_(0,1)|| / ||chi_(0,1)|| from |U chi(w)|^2 = (1 - cos w) / (pi w^2)."""
    A = 50.0
    head, _ = integrate.quad(lambda w: (1.0 - np.cos(w)) / w**2 if w > 1e-8 else 0.5, 0.0, A, limit=400)
    cos_tail, _ = integrate.quad(lambda w: 1.0 / w**2, A, np.inf, weight="cos", wvar=1.0)
    total = head + 1.0 / A - cos_tail
    return float(np.sqrt(total / np.pi))


def fourier_halfline(K: int = 10, grid: int = 1024) -> HalfLineReport:
    """Real and imaginary parts of P0 U P0 on the half-line Hermite directions.

    With U psi_n = (-i)^n psi_n the even functions give
    ``Re(P0 U P0) P0 psi_2k = (-1)^k / 2 P0 psi_2k`` and the odd ones
    ``Im(P0 U P0) P0 psi_2k+1 = (-1)^(k+1) / 2 P0 psi_2k+1``.
    """
    if int(K) != K or not 0 <= K <= 12:
        raise InvalidInput(f"K must be an integer in 0..12, got {K!r}")
    K = int(K)
    g = CenteredGrid.self_dual(grid)
    x = g.x
    psi = hermite_functions(x, 2 * K + 1) * np.sqrt(g.h)
    norms = np.linalg.norm(psi, axis=1)
    edge = np.abs(x) > 0.9 * np.abs(x).max()
    tail = float(np.abs(psi[:, edge]).max()) if edge.any() else 0.0
    if np.abs(norms**2 - 1.0).max() > 1e-8 or tail > 1e-10:
        raise GridTooCoarse(
            f"grid of {g.n} nodes does not resolve psi_{2 * K + 1} "
            f"(norm defect {np.abs(norms**2 - 1).max():.2e}, edge value {tail:.2e})"
        )

    pos = np.flatnonzero(x > 0)
    U = g.dft_block(pos, pos)  # P0 U P0 on the half-line nodes
    re = 0.5 * (U + dagger(U))
    im = (U - dagger(U)) / 2j

    def rayleigh(op, vecs):
        lam = np.array([np.vdot(v, op @ v).real / np.vdot(v, v).real for v in vecs])
        res = np.array([np.linalg.norm(op @ v - l * v) / np.linalg.norm(v) for v, l in zip(vecs, lam)])
        return lam, res

    even = psi[0::2][: K + 1][:, pos]
    odd = psi[1::2][: K + 1][:, pos]
    re_l, re_r = rayleigh(re, even)
    im_l, im_r = rayleigh(im, odd)
    k = np.arange(K + 1)
    re_exp = 0.5 * (-1.0) ** k
    im_exp = 0.5 * (-1.0) ** (k + 1)

    chi = ((x > 0) & (x < 1)).astype(float) * np.sqrt(g.h)
    chi_pos = chi[pos]
    chi_norm = float(np.linalg.norm(U @ chi_pos) / np.linalg.norm(chi_pos))

    ev_re = np.linalg.eigvalsh(re)
    ev_im = np.linalg.eigvalsh(im)
    diagnostics = {
        "re_fraction_near_half": float(np.mean(np.abs(np.abs(ev_re) - 0.5) < 1e-2)),
        "im_fraction_near_half": float(np.mean(np.abs(np.abs(ev_im) - 0.5) < 1e-2)),
        "compression_norm": float(np.linalg.svd(U, compute_uv=False)[0]),
    }
    defects = {
        "re_eigenvalues": float(np.abs(re_l - re_exp).max()),
        "im_eigenvalues": float(np.abs(im_l - im_exp).max()),
        "even_gram": op_norm(even.conj() @ even.T - 0.5 * np.eye(K + 1)),
        "odd_gram": op_norm(odd.conj() @ odd.T - 0.5 * np.eye(K + 1)),
        "flip_involution": float(np.abs(x + x[::-1]).max()),
    }
    return HalfLineReport(
        K, g, re_l, re_exp, re_r, im_l, im_exp, im_r, chi_norm, chi_unit_norm_quadrature(), defects, diagnostics
    )
