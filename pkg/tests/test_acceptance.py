"""Acceptance criteria 1-13, one test each.

Every test prints ``PASS criterion k: ...`` or ``FAIL criterion k: ...``
(shown even under output capture) and then asserts at the stated tolerance.
"""

import io
import json
import time

import numpy as np
import pytest

from schmidtpairs.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from schmidtpairs.core_linalg import Frame, dagger, multiset_distance, op_norm, random_frame, random_unitary
from schmidtpairs.dilations import dilation_block_check, jv_matrix, jv_spectrum, nagy_foias_truncated, random_contraction
from schmidtpairs.fixtures import complementary_pair, random_zero_pair, random_zeros, structured_pair
from schmidtpairs.grassmann import geodesic_report
from schmidtpairs.hardy import (
    BlaschkeData,
    exact_distance,
    fourier_halfline,
    rational_symbol_singulars,
    symmetric_subspace_shift,
    truncated_shift_singulars,
)
from schmidtpairs.mmio import write_complex_list, write_mm
from schmidtpairs.oblique import oblique_projection, reflection_polar, sv_transfer
from schmidtpairs.two_projections import (
    commutator_spectrum,
    explicit_commutator_eigenvectors,
    halmos_decompose,
    product_relations,
    recover_angle_from_CS,
)

TRIALS = 100


@pytest.fixture
def verdict(capsys):
    def emit(k: int, ok: bool, detail: str):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
        return ok

    return emit


def pair_case(i: int):
    """Seeded pair with known structure: (F, G, angles, k11, k10, k01, k00)."""
    rng = np.random.default_rng(1000 + i)
    n = int(rng.integers(4, 65))
    if i % 2:
        k11, k10, k01 = (int(rng.integers(0, max(1, n // 8) + 1)) for _ in range(3))
    else:
        k11 = k10 = k01 = 0
    generic = int(rng.integers(0, (n - k11 - k10 - k01) // 2 + 1))
    F, G, angles = structured_pair(n, rng, k11, k10, k01, generic)
    k00 = n - k11 - k10 - k01 - 2 * generic
    return F, G, angles, k11, k10, k01, k00


def sub_one(values, tol=1e-6):
    v = np.asarray(values)
    return np.sort(v[(v > tol) & (v < 1 - tol)])


def test_criterion_01_difference_spectrum(verdict):
    worst = 0.0
    for i in range(TRIALS):
        F, G, angles, k11, k10, k01, k00 = pair_case(i)
        s = np.cos(angles)
        expected = np.concatenate(
            [np.sqrt(1 - s**2), -np.sqrt(1 - s**2), np.ones(k10), -np.ones(k01), np.zeros(k11 + k00)]
        )
        ev = np.linalg.eigvalsh(F.projector() - G.projector())
        worst = max(worst, multiset_distance(ev, expected), product_relations(F, G).defects["difference_spectrum"])
    ok = worst <= 1e-9
    verdict(1, ok, f"eig(P-Q) vs +-sqrt(1-s^2), 0, +-1 over {TRIALS} pairs in dims 4-64, max defect {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_02_complement_transfer(verdict):
    worst = 0.0
    for i in range(TRIALS):
        F, G, angles, *_ = pair_case(i)
        n = F.ambient_dim
        P, Q = F.projector(), G.projector()
        I = np.eye(n)
        sv = lambda A: np.linalg.svd(A, compute_uv=False)  # noqa: E731
        s_pq = sub_one(sv(P @ Q))
        s_perp = sub_one(sv((I - P) @ (I - Q)))
        s_cross = sub_one(sv(P @ (I - Q)))
        expected = np.sort(np.sqrt(1 - np.cos(angles) ** 2))
        rel = product_relations(F, G).defects
        worst = max(
            worst,
            multiset_distance(s_pq, s_perp),
            multiset_distance(s_cross, expected),
            multiset_distance(s_pq, np.sort(np.cos(angles))),
            rel["complement_transfer"],
            rel["perp_transfer"],
        )
    ok = worst <= 1e-9
    verdict(2, ok, f"PQ ~ P'Q' and PQ' = sqrt(1-s^2) over {TRIALS} pairs, max defect {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_03_commutator(verdict):
    worst_spec = worst_vec = 0.0
    for i in range(TRIALS):
        F, G, angles, *_ = pair_case(i)
        P, Q = F.projector(), G.projector()
        C = P @ Q - Q @ P
        s = np.cos(angles)
        r = s * np.sqrt(1 - s**2)
        expected = np.concatenate([1j * r, -1j * r, np.zeros(F.ambient_dim - 2 * len(r))])
        worst_spec = max(worst_spec, multiset_distance(np.linalg.eigvals(C), expected))
        U, sv, Vh = np.linalg.svd(P @ Q)
        keep = (sv > 1e-6) & (sv < 1 - 1e-6)
        if keep.any():
            v, w, lv, lw = explicit_commutator_eigenvectors(U[:, keep], dagger(Vh)[:, keep], sv[keep])
            for vec, lam in ((v, lv), (w, lw)):
                res = np.linalg.norm(C @ vec - vec * lam, axis=0) / np.linalg.norm(vec, axis=0)
                worst_vec = max(worst_vec, float(res.max()))
        worst_vec = max(worst_vec, commutator_spectrum(F, G).defects["explicit_eigenvectors"])
    ok = worst_spec <= 1e-9 and worst_vec <= 1e-8
    verdict(3, ok, f"eig([P,Q]) defect {worst_spec:.2e} (tol 1e-9); explicit v,w residual {worst_vec:.2e} (tol 1e-8)")
    assert ok


def test_criterion_04_angle_recovery(verdict):
    X = np.diag([np.pi / 6, np.pi / 3])
    CS = np.diag(np.sin(2 * np.diag(X)) / 2)
    degenerate_gap = abs(CS[0, 0] - CS[1, 1])
    worst = op_norm(recover_angle_from_CS(CS, Frame.coordinate(2, [0])) - X)
    rng = np.random.default_rng(4)
    for _ in range(TRIALS):
        n = int(rng.integers(2, 9))
        low = rng.uniform(0.02, np.pi / 4 - 0.05, n)
        high = rng.uniform(np.pi / 4 + 0.05, np.pi / 2 - 0.02, n)
        x = np.where(rng.uniform(size=n) < 0.5, low, high)
        W = random_unitary(n, rng)
        Xm = (W * x) @ dagger(W)
        CSm = (W * (np.sin(2 * x) / 2)) @ dagger(W)
        E = Frame(W[:, x <= np.pi / 4]) if np.any(x <= np.pi / 4) else Frame.empty(n)
        worst = max(worst, op_norm(recover_angle_from_CS(CSm, E) - Xm))
    ok = worst <= 1e-9
    verdict(4, ok, f"X from CS with branch subspace, incl. diag(pi/6, pi/3) (CS gap {degenerate_gap:.1e}), max error {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_05_halmos_round_trip(verdict):
    worst = 0.0
    for i in range(TRIALS):
        F, G, *_ = pair_case(i)
        P, Q = halmos_decompose(F, G).reconstruct()
        worst = max(worst, op_norm(P - F.projector()), op_norm(Q - G.projector()))
    rng = np.random.default_rng(5)
    for _ in range(TRIALS):
        n = int(rng.integers(2, 33))
        F, G = random_frame(n, int(rng.integers(1, n)), rng), random_frame(n, int(rng.integers(1, n)), rng)
        P, Q = halmos_decompose(F, G).reconstruct()
        worst = max(worst, op_norm(P - F.projector()), op_norm(Q - G.projector()))
    ok = worst <= 1e-9
    verdict(5, ok, f"projectors rebuilt from the model over {2 * TRIALS} pairs, max defect {worst:.2e} (tol 1e-9)")
    assert ok


def test_criterion_06_geodesics(verdict):
    keys = ("endpoint", "rotation_commutes", "davis_anticommutes", "davis_vs_rotation")
    worst = {k: 0.0 for k in keys}
    znorm = 0.0
    for i in range(60):
        rng = np.random.default_rng(6000 + i)
        n = int(rng.integers(2, 33))
        if i % 3 == 0 and n >= 4:
            c = int(rng.integers(0, n // 4 + 1))
            L0, L, _ = structured_pair(n, rng, k11=1, k10=c, k01=c, generic=(n - 1 - 2 * c) // 2)
        else:
            k = int(rng.integers(1, n))
            L0, L = random_frame(n, k, rng), random_frame(n, k, rng)
        rep = geodesic_report(L0, L)
        for k in keys:
            if k in rep["defects"]:
                worst[k] = max(worst[k], rep["defects"][k])
        znorm = max(znorm, op_norm(rep["geodesic"].Z))
    ok = max(worst.values()) <= 1e-9 and znorm <= np.pi / 2 + 1e-12
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    verdict(6, ok, f"{detail} (tol 1e-9); max ||Z|| = {znorm:.6f} <= pi/2")
    assert ok


def test_criterion_07_oblique(verdict):
    worst_transfer = worst_sym = worst_closed = 0.0
    for i in range(TRIALS):
        rng = np.random.default_rng(7000 + i)
        n = int(rng.integers(2, 25))
        k = int(rng.integers(1, n))
        S, T = complementary_pair(n, k, rng)
        Q = oblique_projection(S, T)
        beta, s, transfer = sv_transfer(Q)
        direct = np.linalg.svd(S.projector() @ T.projector(), compute_uv=False)
        worst_transfer = max(worst_transfer, transfer, multiset_distance(sub_one(direct, 1e-12), sub_one(s, 1e-12)))
        d = reflection_polar(Q).defects
        worst_sym = max(worst_sym, d["rho_squared"], d["rho_hermitian"], d["intertwining"])
        worst_closed = max(worst_closed, d["closed_form_modulus"], d["closed_form_rho"])
    ok = worst_transfer <= 1e-9 and worst_sym <= 1e-9 and worst_closed <= 1e-8
    verdict(
        7,
        ok,
        f"s = beta/sqrt(beta^2+1) vs SVD(P_S P_T) {worst_transfer:.2e}, rho symmetry/intertwining "
        f"{worst_sym:.2e} (tol 1e-9), closed forms {worst_closed:.2e} (tol 1e-8), {TRIALS} trials",
    )
    assert ok


def test_criterion_08_dilations(verdict):
    worst_spec = worst_unit = worst_block = 0.0
    for i in range(40):
        rng = np.random.default_rng(8000 + i)
        d = int(rng.integers(1, 7))
        A = random_contraction(d, rng)
        if i % 4 == 0:
            U, sv, Vh = np.linalg.svd(A)
            sv[: int(rng.integers(1, d + 1))] = 0.0
            A = (U * sv) @ Vh
        s = np.linalg.svd(A, compute_uv=False)
        expected = np.concatenate([np.sqrt(1 - s**2) + 1j * s, np.sqrt(1 - s**2) - 1j * s])
        worst_spec = max(worst_spec, multiset_distance(np.linalg.eigvals(jv_matrix(A)), expected))
        worst_spec = max(worst_spec, jv_spectrum(A).defects["spectrum"])
        N = int(rng.integers(2, 6))
        U_A = nagy_foias_truncated(A, N)
        m = U_A.shape[0]
        worst_unit = max(worst_unit, op_norm(dagger(U_A) @ U_A - np.eye(m)))
        worst_block = max(worst_block, dilation_block_check(A, N).defects["block_identity"])
    ok = worst_spec <= 1e-9 and worst_unit <= 1e-10 and worst_block <= 1e-12
    verdict(
        8,
        ok,
        f"JV_A spectrum {worst_spec:.2e} (tol 1e-9), Nagy-Foias unitarity {worst_unit:.2e} (tol 1e-10), "
        f"S U_A = I + N_A + I defect {worst_block:.1e}",
    )
    assert ok


def test_criterion_09_model_space_shift(verdict):
    worst = 0.0
    for d in range(1, 9):
        for rep in range(3):
            z = random_zeros(d, np.random.default_rng(90 * d + rep))
            r = truncated_shift_singulars(BlaschkeData(z))
            expected = np.concatenate([np.ones(d - 1), [np.prod(np.abs(z))]])
            worst = max(worst, multiset_distance(r.singular_values, expected))
    ok = worst <= 1e-8
    verdict(9, ok, f"compressed shift on K_theta, degrees 1-8: d-1 ones and prod|a_j|, max defect {worst:.2e} (tol 1e-8)")
    assert ok


def test_criterion_10_rational_symbols(verdict):
    worst = 0.0
    corners = 0
    count = 0
    for n in range(1, 5):
        for rep in range(13):
            a, b = random_zero_pair(n, np.random.default_rng(1000 * n + rep))
            r = rational_symbol_singulars(a, b)
            worst = max(worst, max(v for k, v in r.defects.items() if "_vs_" in k))
            corners += sum(r.corner_dims)
            count += 1
    ok = worst <= 1e-8 and corners == 0 and count >= 50
    verdict(10, ok, f"direct/generic/oblique routes over {count} configurations n<=4, max pairwise gap {worst:.2e} (tol 1e-8); corner dims total {corners}")
    assert ok


def test_criterion_11_shift_symmetric(verdict):
    t0 = time.perf_counter()
    Ns = [16, 64, 256, 1024, 2048]
    reports = [symmetric_subspace_shift(N) for N in Ns]
    elapsed = time.perf_counter() - t0
    dist = np.array([r.distance for r in reports])
    gap = abs(dist[-1] - np.pi / 2)
    monotone = bool(np.all(np.diff(dist) > 0))
    exact = max(abs(r.distance - exact_distance(r.N)) for r in reports)
    ok = gap <= 0.05 and monotone and elapsed <= 60 and exact <= 1e-9
    verdict(
        11,
        ok,
        f"N=2048 distance {dist[-1]:.6f}, |d - pi/2| = {gap:.2e} (tol 0.05), monotone in N={Ns}: {monotone}, "
        f"vs closed form {exact:.1e}, {elapsed:.1f} s (limit 60 s)",
    )
    assert ok


def test_criterion_12_fourier_half_line(verdict):
    h = fourier_halfline(K=10, grid=1024)
    signs = h.defects["re_eigenvalues"] <= 2e-2 and h.defects["im_eigenvalues"] <= 2e-2
    chi_gap = abs(h.chi_norm - 1.0)
    ok = signs and chi_gap <= 1e-3
    verdict(
        12,
        ok,
        f"Re/Im on Hermite directions k<=10: defects {h.defects['re_eigenvalues']:.2e}, {h.defects['im_eigenvalues']:.2e} "
        f"(tol 2e-2, {'met' if signs else 'not met'}); ||P0 U P0 chi|| = {h.chi_norm:.8f} "
        f"(quadrature {h.chi_norm_quadrature:.8f}), |.-1| = {chi_gap:.2e} (tol 1e-3)",
    )
    assert ok


def _cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return run(list(argv), stdout=out, stderr=err), out.getvalue()


def test_criterion_13_cli(verdict, tmp_path):
    same = all(
        _cli(cmd, "--seed", "11", "--size", "7", "--format", fmt)[1] == _cli(cmd, "--seed", "11", "--size", "7", "--format", fmt)[1]
        for cmd in ("halmos", "geodesic", "oblique", "dilate", "rational", "selftest")
        for fmt in ("json", "csv")
    )
    P, Q, A, B = (tmp_path / name for name in ("p.mtx", "q.mtx", "a.txt", "b.txt"))
    write_mm(P, np.eye(3)[:, :1])
    write_mm(Q, np.array([[1.0], [1.0], [0.0]]))
    write_complex_list(A, [0.5])
    write_complex_list(B, [0.5])
    codes = {
        "relations on .mtx pair": (_cli("relations", "--p", str(P), "--q", str(Q))[0], EXIT_OK),
        "halfline chi check": (_cli("halfline", "--K", "2")[0], EXIT_FAIL),
        "rational with shared zero": (_cli("rational", "--zeros-a", str(A), "--zeros-b", str(B))[0], EXIT_INPUT),
    }
    status = json.loads(_cli("relations", "--p", str(P), "--q", str(Q))[1])["status"]
    ok = same and all(got == want for got, want in codes.values()) and status == "pass"
    detail = "; ".join(f"{k} -> {got} (expected {want})" for k, (got, want) in codes.items())
    verdict(13, ok, f"byte-identical reports for equal seeds: {same}; exit codes: {detail}")
    assert ok
