import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schmidtpairs.core_linalg import (
    DEFAULT_TOL,
    Frame,
    ToleranceConfig,
    as_matrix,
    cluster_values,
    complement_frame,
    dagger,
    expm_hermitian,
    hermitian_eig,
    multiset_distance,
    op_norm,
    orthonormal_frame,
    polar,
    psd_sqrt,
    random_frame,
    random_unitary,
    svd_schmidt,
)
from schmidtpairs.errors import InvalidInput, NotHermitian, SingularMatrix
from schmidtpairs.fixtures import complementary_pair
from schmidtpairs.oblique import oblique_projection


def cgauss(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestToleranceConfig:
    def test_defaults(self):
        assert (DEFAULT_TOL.abs_tol, DEFAULT_TOL.rel_tol, DEFAULT_TOL.rank_tol) == (1e-10, 1e-10, 1e-8)

    @pytest.mark.parametrize("field", ["abs_tol", "rel_tol", "rank_tol"])
    @pytest.mark.parametrize("bad", [0.0, -1e-3, float("nan"), float("inf")])
    def test_rejects_nonpositive(self, field, bad):
        with pytest.raises(InvalidInput):
            ToleranceConfig(**{field: bad})

    def test_tau_scales(self):
        cfg = ToleranceConfig(abs_tol=1e-12, rel_tol=1e-6)
        assert cfg.tau(0.0) == 1e-12
        assert cfg.tau(10.0) == pytest.approx(1e-12 + 1e-5)


class TestFrame:
    def test_immutable_basis(self):
        F = Frame(np.eye(3))
        with pytest.raises(ValueError):
            F.basis[0, 0] = 2.0

    def test_rejects_nonfinite(self):
        with pytest.raises(InvalidInput):
            Frame(np.array([[np.nan], [1.0]]))

    def test_coordinate_and_projector(self):
        F = Frame.coordinate(4, [1, 3])
        assert F.rank == 2 and F.ambient_dim == 4
        np.testing.assert_array_equal(np.diag(F.projector()), [0, 1, 0, 1])

    def test_empty(self):
        F = Frame.empty(5)
        assert F.rank == 0
        assert F.orthonormality_defect() == 0.0
        np.testing.assert_array_equal(F.projector(), np.zeros((5, 5)))


class TestOrthonormalFrame:
    def test_identity(self):
        F = orthonormal_frame(np.eye(3))
        np.testing.assert_array_equal(F.basis, np.eye(3))

    def test_normalizes_single_column(self):
        F = orthonormal_frame(np.array([[1.0], [1.0]]))
        np.testing.assert_allclose(F.basis[:, 0], [2**-0.5, 2**-0.5], atol=1e-15)

    def test_rank_deficient(self, rng):
        M = cgauss(rng, 6, 2) @ cgauss(rng, 2, 4)
        F = orthonormal_frame(M)
        # oracle: numerical rank from an independent SVD
        s = np.linalg.svd(M, compute_uv=False)
        assert F.rank == int(np.sum(s > 1e-8 * s[0])) == 2
        assert op_norm(M - F.projector() @ M) <= 1e-10 * op_norm(M)
        assert F.orthonormality_defect() <= 1e-10

    def test_zero_matrix(self):
        assert orthonormal_frame(np.zeros((4, 3))).rank == 0

    def test_nonfinite(self):
        with pytest.raises(InvalidInput):
            orthonormal_frame(np.array([[np.inf, 0.0]]))


class TestComplement:
    @pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (5, 2), (8, 7), (16, 5)])
    def test_orthogonal_and_complete(self, rng, n, k):
        F = random_frame(n, k, rng) if k else Frame.empty(n)
        C = complement_frame(F)
        assert C.rank == n - k
        assert C.orthonormality_defect() <= 1e-12
        assert op_norm(dagger(F.basis) @ C.basis) <= 1e-12 if k and n - k else True

    def test_coordinate_subspace_gives_canonical_vectors(self):
        C = complement_frame(Frame.coordinate(5, [0, 2]))
        np.testing.assert_array_equal(C.basis, np.eye(5)[:, [1, 3, 4]])


class TestSvdSchmidt:
    def test_zero(self):
        assert len(svd_schmidt(np.zeros((3, 3)))) == 0

    def test_diagonal(self):
        sys = svd_schmidt(np.diag([0.6, 0.3]))
        np.testing.assert_allclose(sys.values, [0.6, 0.3])
        np.testing.assert_allclose(np.abs(sys.left), np.eye(2), atol=1e-15)
        np.testing.assert_allclose(np.abs(sys.right), np.eye(2), atol=1e-15)

    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("shape", [(5, 5), (7, 3), (2, 9), (64, 64)])
    def test_reconstruction(self, seed, shape):
        T = cgauss(np.random.default_rng(seed), *shape)
        sys = svd_schmidt(T)
        assert op_norm(sys.reconstruct() - T) <= 1e-12 * max(1.0, op_norm(T))
        assert np.all(np.diff(sys.values) <= 0)


class TestHermitianEig:
    def test_identity(self):
        w, _ = hermitian_eig(np.eye(4))
        np.testing.assert_array_equal(w, np.ones(4))

    def test_diag(self):
        w, _ = hermitian_eig(np.diag([2.0, -1.0]))
        np.testing.assert_array_equal(w, [2.0, -1.0])

    def test_random_residual(self, rng):
        H = cgauss(rng, 8, 8)
        H = H + dagger(H)
        w, V = hermitian_eig(H)
        assert np.all(np.diff(w) <= 0)
        assert op_norm(H @ V - V * w) <= 1e-11 * op_norm(H)
        assert op_norm(dagger(V) @ V - np.eye(8)) <= 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))


class TestPolar:
    def test_unitary_input(self, rng):
        U = random_unitary(5, rng)
        W, M = polar(U)
        assert op_norm(W - U) <= 1e-12 and op_norm(M - np.eye(5)) <= 1e-12

    def test_positive_input(self, rng):
        G = cgauss(rng, 4, 4)
        H = G @ dagger(G) + np.eye(4)
        W, M = polar(H)
        assert op_norm(W - np.eye(4)) <= 1e-12 and op_norm(M - H) <= 1e-12 * op_norm(H)

    def test_reflection_of_oblique_is_symmetry(self, rng):
        S, T = complementary_pair(4, 2, rng)
        Q = oblique_projection(S, T)
        rho, mod = polar(2 * Q.Q - np.eye(4))
        assert op_norm(rho @ rho - np.eye(4)) <= 1e-10
        assert op_norm(rho - dagger(rho)) <= 1e-10
        assert op_norm(rho @ mod - (2 * Q.Q - np.eye(4))) <= 1e-10

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            polar(np.diag([1.0, 0.0]))


def test_psd_sqrt_clips_roundoff():
    H = np.diag([4.0, -1e-14])
    np.testing.assert_allclose(psd_sqrt(H), np.diag([2.0, 0.0]), atol=1e-15)
    with pytest.raises(InvalidInput):
        psd_sqrt(np.diag([1.0, -1e-3]))


def test_expm_hermitian_matches_scipy(rng):
    from scipy.linalg import expm

    Z = cgauss(rng, 6, 6)
    Z = Z + dagger(Z)
    assert op_norm(expm_hermitian(Z, 0.7) - expm(0.7j * Z)) <= 1e-11


def test_as_matrix_promotes_and_reshapes():
    A = as_matrix([1, 2, 3])
    assert A.shape == (3, 1) and A.dtype == float
    with pytest.raises(InvalidInput):
        as_matrix(np.zeros((2, 2, 2)))


class TestMultiset:
    def test_real_sorted(self):
        assert multiset_distance([3, 1, 2], [1, 2, 3.5]) == 0.5

    def test_complex_matching(self):
        a = np.array([1j, -1j, 0.5])
        assert multiset_distance(a, a[::-1] + 1e-3) == pytest.approx(1e-3)

    def test_size_mismatch(self):
        assert multiset_distance([1.0], [1.0, 2.0]) == float("inf")

    def test_empty(self):
        assert multiset_distance([], []) == 0.0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=0, max_size=30), st.floats(1e-6, 1e-1))
def test_cluster_values_partition(values, tol):
    clusters = cluster_values(values, tol)
    assert sum(k for _, k in clusters) == len(values)
    means = [m for m, _ in clusters]
    assert means == sorted(means)
    # distinct clusters are separated by more than tol
    assert all(b - a > tol for a, b in zip(means, means[1:]))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 24), st.integers(0, 2**32 - 1))
def test_random_unitary_property(n, seed):
    U = random_unitary(n, np.random.default_rng(seed))
    assert op_norm(dagger(U) @ U - np.eye(n)) <= 1e-12
