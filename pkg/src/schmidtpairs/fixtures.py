"""Seeded random inputs: structured projection pairs, zero sets, contractions."""

from __future__ import annotations

import numpy as np

from .core_linalg import Frame, random_frame, random_unitary
from .errors import InvalidInput


def structured_pair(n: int, rng: np.random.Generator, k11: int = 0, k10: int = 0, k01: int = 0, generic: int | None = None, min_angle: float = 0.05):
    """Frames (F, G) with prescribed intersection and corner dimensions.

    Returns ``(F, G, angles)``; the generic angles are uniform in
    ``(min_angle, pi/2 - min_angle)``.  Whatever is left of C^n after the
    requested pieces goes to N(P) & N(Q).
    """
    if generic is None:
        generic = (n - k11 - k10 - k01) // 2
    used = k11 + k10 + k01 + 2 * generic
    if min(k11, k10, k01, generic) < 0 or used > n:
        raise InvalidInput(f"pieces need {used} dimensions, ambient is {n}")
    W = random_unitary(n, rng)
    cols = np.cumsum([0, k11, k10, k01, generic, generic])
    W11, W10, W01, Psi, Eta = (W[:, cols[i] : cols[i + 1]] for i in range(5))
    angles = np.sort(rng.uniform(min_angle, 0.5 * np.pi - min_angle, generic))
    Xi = Psi * np.cos(angles) + Eta * np.sin(angles)
    F = Frame(np.hstack([W11, W10, Psi]))
    G = Frame(np.hstack([W11, W01, Xi]))
    return F, G, angles


def random_pair(n: int, rng: np.random.Generator):
    """Two random subspaces of random dimensions in 1..n-1."""
    p = int(rng.integers(1, n))
    q = int(rng.integers(1, n))
    return random_frame(n, p, rng), random_frame(n, q, rng)


def complementary_pair(n: int, k: int, rng: np.random.Generator):
    """Random S (dim k) and T (dim n - k); complementary with probability one."""
    if not 0 < k < n:
        raise InvalidInput(f"need 0 < k < n, got k={k}, n={n}")
    return random_frame(n, k, rng), random_frame(n, n - k, rng)


def random_zeros(count: int, rng: np.random.Generator, radius: float = 0.85, separation: float = 0.1, avoid=()) -> np.ndarray:
    """Points uniform in the disk of the given radius, pairwise at least ``separation`` apart."""
    pts = list(np.asarray(avoid, dtype=complex))
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 10000:
            raise InvalidInput("could not place separated zeros; lower the separation")
        r = radius * np.sqrt(rng.uniform())
        z = r * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - w) >= separation for w in pts):
            pts.append(z)
            out.append(z)
    return np.array(out)


def random_zero_pair(n: int, rng: np.random.Generator, radius: float = 0.85, separation: float = 0.1):
    a = random_zeros(n, rng, radius, separation)
    b = random_zeros(n, rng, radius, separation, avoid=a)
    return a, b


def random_hermitian_contraction(n: int, rng: np.random.Generator) -> np.ndarray:
    H = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = H + H.conj().T
    return H / (1.01 * np.linalg.norm(H, 2))
