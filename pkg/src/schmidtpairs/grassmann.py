"""Minimal geodesics t -> exp(itZ) L0 of the Grassmann manifold.

Z is assembled from the Halmos model of (L0, L): zero on L0&L and
L0^perp & L^perp, ``[[0, iX], [-iX, 0]]`` on the generic part, and a
pi/2 rotation generator pairing L0 & L^perp with L0^perp & L.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core_linalg import (
    DEFAULT_TOL,
    Frame,
    ToleranceConfig,
    check_same_ambient,
    dagger,
    expm_hermitian,
    op_norm,
    polar,
)
from .errors import EmptyGenericPart, NoGeodesic
from .two_projections import HalmosModel, halmos_decompose, principal_data


@dataclass(frozen=True)
class GeodesicData:
    Z: np.ndarray
    X: np.ndarray
    W: np.ndarray  # maps L0 & L^perp onto L0^perp & L, zero elsewhere
    distance: float
    model: HalmosModel

    @property
    def unique(self) -> bool:
        """Minimal geodesic is unique iff the W-corners are trivial (reported, not certified)."""
        return self.model.h10.rank == 0


def minimal_geodesic_exists(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL):
    """``(exists, dim(L0 & L^perp), dim(L0^perp & L))``."""
    pd = principal_data(L0, L, cfg, vectors=False)
    return pd.dim10 == pd.dim01, pd.dim10, pd.dim01


def geodesic_exponent(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> GeodesicData:
    check_same_ambient(L0, L)
    model = halmos_decompose(L0, L, cfg)
    if model.h10.rank != model.h01.rank:
        raise NoGeodesic(f"dim(L0 & L^perp) = {model.h10.rank} but dim(L0^perp & L) = {model.h01.rank}")
    n = L0.ambient_dim
    Z = np.zeros((n, n), dtype=complex)
    g = model.generic_dim
    if g:
        X = model.X
        O = np.zeros((g, g))
        Zg = np.block([[O, 1j * X], [-1j * X, O]])
        B = model.generic_basis
        Z += B @ Zg @ dagger(B)
    mu, nu = model.h10.basis, model.h01.basis
    W = nu @ dagger(mu)
    if mu.shape[1]:
        # Z''(xi + eta) = -i pi/2 (W^* eta - W xi)
        Z += 0.5j * np.pi * (W - dagger(W))
    Z = 0.5 * (Z + dagger(Z))
    distance = geodesic_norm(model)
    return GeodesicData(Z, model.X, W, distance, model)


def geodesic_norm(model: HalmosModel) -> float:
    d = float(np.max(model.angles)) if model.generic_dim else 0.0
    if model.h10.rank:
        d = max(d, np.pi / 2)
    return d


def geodesic_point(g: GeodesicData, L0: Frame, t: float, cfg: ToleranceConfig = DEFAULT_TOL) -> Frame:
    """delta(t) = exp(itZ) L0."""
    return Frame(expm_hermitian(g.Z, t, cfg) @ L0.basis)


def geodesic_distance(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> float:
    """Length ||Z|| of the minimal geodesic, from principal angles only.

    Works from the SVD of ``L0^* L`` without forming complements, so it is
    usable for large ambient dimensions.
    """
    pd = principal_data(L0, L, cfg, vectors=False)
    if pd.dim10 != pd.dim01:
        raise NoGeodesic(f"dim(L0 & L^perp) = {pd.dim10} but dim(L0^perp & L) = {pd.dim01}")
    c = pd.generic_cosines
    d = float(np.arccos(np.clip(c.min(), -1.0, 1.0))) if c.size else 0.0
    if pd.dim10:
        d = max(d, np.pi / 2)
    return d


@dataclass(frozen=True)
class GenericPairOperators:
    """P0', P', the rotation exp(iZ') and the commutator on the generic part (model coordinates)."""

    P0: np.ndarray
    P: np.ndarray
    rotation: np.ndarray
    commutator: np.ndarray
    model: HalmosModel


def generic_operators(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> GenericPairOperators:
    model = halmos_decompose(L0, L, cfg)
    if model.generic_dim == 0:
        raise EmptyGenericPart("the pair has no generic part")
    B = model.generic_basis
    P0 = dagger(B) @ L0.projector() @ B
    P = dagger(B) @ L.projector() @ B
    g = model.generic_dim
    O = np.zeros((g, g))
    Zg = np.block([[O, 1j * model.X], [-1j * model.X, O]])
    rotation = expm_hermitian(Zg, 1.0, cfg)
    return GenericPairOperators(P0, P, rotation, P0 @ P - P @ P0, model)


def davis_symmetry(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Unitary factor of P0' + P' - I on the generic part.

    Returned in the model coordinates ``[psi | eta]`` of the Halmos
    decomposition (see :func:`generic_operators`), where it equals
    ``[[C, S], [S, -C]]``.
    """
    ops = generic_operators(L0, L, cfg)
    M = ops.P0 + ops.P - np.eye(ops.P0.shape[0])
    V, _ = polar(M, cfg)
    return 0.5 * (V + dagger(V))


def geodesic_report(L0: Frame, L: Frame, cfg: ToleranceConfig = DEFAULT_TOL, times=(0.25, 0.5, 0.75, 1.0)) -> dict:
    """Defects of the geodesic identities for a pair joined by a minimal geodesic."""
    g = geodesic_exponent(L0, L, cfg)
    n = L0.ambient_dim
    P0 = L0.projector()
    Zb = g.Z
    end = geodesic_point(g, L0, 1.0, cfg)
    defects = {
        "endpoint": op_norm(end.projector() - L.projector()),
        "hermitian": op_norm(Zb - dagger(Zb)),
        "codiagonal": max(op_norm(P0 @ Zb @ P0), op_norm((np.eye(n) - P0) @ Zb @ (np.eye(n) - P0))),
        "norm_excess": max(0.0, op_norm(Zb) - np.pi / 2),
        "norm_vs_distance": abs(op_norm(Zb) - g.distance),
    }
    sim = 0.0
    for t in times:
        E = expm_hermitian(Zb, t, cfg)
        Pt = Frame(E @ L0.basis).projector()
        K = P0 @ Pt - Pt @ P0
        sim = max(sim, op_norm(E @ K - K @ E))
    defects["simultaneous_diagonalization"] = sim
    if g.model.generic_dim:
        ops = generic_operators(L0, L, cfg)
        V = davis_symmetry(L0, L, cfg)
        m = V.shape[0]
        C, S = g.model.C, g.model.S
        defects.update(
            {
                "rotation_commutes": op_norm(ops.rotation @ ops.commutator - ops.commutator @ ops.rotation),
                "davis_anticommutes": op_norm(V @ ops.commutator + ops.commutator @ V),
                "davis_symmetry": op_norm(V @ V - np.eye(m)),
                "davis_vs_rotation": op_norm(V - ops.rotation @ (2 * ops.P0 - np.eye(m))),
                "davis_vs_rotation_right": op_norm(V - (2 * ops.P0 - np.eye(m)) @ dagger(ops.rotation)),
                "davis_block_form": op_norm(V - np.block([[C, S], [S, -C]])),
                "davis_maps_L0_to_L": op_norm(V @ ops.P0 @ V - ops.P),
            }
        )
    return {"geodesic": g, "defects": defects}
