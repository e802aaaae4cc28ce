"""Command-line front end.

Every subcommand prints (or writes to ``--out``) a report with the fields
``command``, ``inputs``, ``results``, ``tolerances`` and ``checks``; each
check carries its defect, the tolerance it was judged against and the
verdict.  Exit status: 0 when every check passes, 1 when an identity check
fails, 2 on bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import fixtures
from .core_linalg import DEFAULT_TOL, Frame, ToleranceConfig, orthonormal_frame, random_frame
from .dilations import check_contraction, dilation_block_check, jv_spectrum, random_contraction
from .errors import SchmidtPairsError
from .grassmann import geodesic_report, minimal_geodesic_exists
from .hardy import (
    BlaschkeData,
    blaschke_truncation,
    exact_distance,
    fourier_halfline,
    prolate_compression,
    rational_symbol_singulars,
    symmetric_subspace_shift,
    toeplitz_compression,
    truncated_shift_singulars,
)
from .mmio import read_complex_list, read_mm
from .oblique import oblique_projection, reflection_polar, rho_in_sd_report, sv_transfer
from .two_projections import commutator_spectrum, halmos_decompose, product_relations

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

# tolerances for checks whose accuracy is set by a discretization, not by rounding
HALFLINE_EIG_TOL = 2e-2
HALFLINE_CHI_TOL = 1e-3
SHIFT_DISTANCE_TOL = 5e-2


class Report:
    def __init__(self, command: str, inputs: dict, cfg: ToleranceConfig, tol: float):
        self.command = command
        self.inputs = inputs
        self.cfg = cfg
        self.tol = tol
        self.results: dict = {}
        self.checks: dict = {}

    def result(self, name: str, value) -> None:
        self.results[name] = value

    def check(self, name: str, defect: float, tol: float | None = None) -> None:
        tol = self.tol if tol is None else tol
        defect = float(defect)
        self.checks[name] = {"defect": defect, "tol": tol, "pass": bool(defect <= tol)}

    def checks_from(self, prefix: str, defects: dict, tol: float | None = None) -> None:
        for key, value in defects.items():
            self.check(f"{prefix}{key}", value, tol)

    @property
    def passed(self) -> bool:
        return all(c["pass"] for c in self.checks.values())

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "tolerances": {
                "check_tol": self.tol,
                "abs_tol": self.cfg.abs_tol,
                "rel_tol": self.cfg.rel_tol,
                "rank_tol": self.cfg.rank_tol,
            },
            "checks": self.checks,
            "status": "pass" if self.passed else "fail",
        }


def _plain(value):
    """Convert numpy data to JSON-ready values; complex numbers become [re, im]."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return [_plain(v) for v in value.tolist()] if value.ndim else _plain(value.item())
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def to_json(report: Report) -> str:
    return json.dumps(_plain(report.as_dict()), indent=2) + "\n"


def to_csv(report: Report) -> str:
    """Long format: section, name, index, re, im."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["section", "name", "index", "re", "im"])
    w.writerow(["meta", "command", "", report.command, ""])
    w.writerow(["meta", "status", "", "pass" if report.passed else "fail", ""])
    for key, value in report.inputs.items():
        w.writerow(["input", key, "", json.dumps(_plain(value)), ""])

    def emit(name, value):
        arr = np.atleast_1d(np.asarray(value))
        if arr.dtype == object or arr.dtype.kind in "USb":
            w.writerow(["result", name, "", json.dumps(_plain(value)), ""])
            return
        for i, v in enumerate(arr.ravel()):
            v = complex(v)
            w.writerow(["result", name, i, repr(v.real), repr(v.imag)])

    for key, value in report.results.items():
        if isinstance(value, dict):
            for sub, v in value.items():
                emit(f"{key}.{sub}", v)
        else:
            emit(key, value)
    for key, c in report.checks.items():
        w.writerow(["check", key, "defect", repr(c["defect"]), ""])
        w.writerow(["check", key, "tol", repr(c["tol"]), ""])
        w.writerow(["check", key, "pass", str(c["pass"]).lower(), ""])
    return out.getvalue()


# ---------------------------------------------------------------- inputs


def _frame_arg(path) -> Frame:
    return orthonormal_frame(read_mm(path))


def _pair_from_args(args):
    """Frames from --p/--q files, or a seeded random pair of dimension --size."""
    if (args.p is None) != (args.q is None):
        raise SchmidtPairsError("give both --p and --q or neither")
    if args.p is not None:
        return _frame_arg(args.p), _frame_arg(args.q)
    rng = np.random.default_rng(args.seed)
    n = args.size
    return random_frame(n, max(1, n // 2), rng), random_frame(n, max(1, (n + 1) // 2), rng)


def _zeros_arg(path, count, rng):
    if path is not None:
        return read_complex_list(path)
    return fixtures.random_zeros(count, rng)


def _interval_arg(text, default):
    if text is None:
        return default
    try:
        lo, hi = (float(t) for t in text.split(","))
    except ValueError:
        raise SchmidtPairsError(f"expected 'a,b', got {text!r}") from None
    return lo, hi


def _pair_inputs(args):
    if args.p is not None:
        return {"p": str(args.p), "q": str(args.q)}
    return {"seed": args.seed, "size": args.size}


# ---------------------------------------------------------------- commands


def cmd_halmos(args, rep: Report):
    F, G = _pair_from_args(args)
    rep.inputs.update(_pair_inputs(args))
    m = halmos_decompose(F, G, rep.cfg)
    P, Q = m.reconstruct()
    rep.result("dims", m.dims())
    rep.result("angles", np.sort(m.angles))
    rep.result("angle_clusters", [[a, k] for a, k in m.angle_clusters()])
    rep.check("reconstruct_P", np.linalg.norm(P - F.projector(), 2))
    rep.check("reconstruct_Q", np.linalg.norm(Q - G.projector(), 2))
    rep.check("orthonormal_decomposition", m.decomposition_defect())


def cmd_relations(args, rep: Report):
    F, G = _pair_from_args(args)
    rep.inputs.update(_pair_inputs(args))
    r = product_relations(F, G, rep.cfg)
    rep.result("s", r.singular_values_PQ)
    rep.result("eig_P_minus_Q", r.eigenvalues_P_minus_Q)
    rep.result("expected_eig_P_minus_Q", r.expected_eigenvalues)
    rep.result("s_PQperp", r.singular_values_PQperp)
    rep.result("s_PperpQperp", r.singular_values_PperpQperp)
    rep.checks_from("", r.defects)


def cmd_commutator(args, rep: Report):
    F, G = _pair_from_args(args)
    rep.inputs.update(_pair_inputs(args))
    c = commutator_spectrum(F, G, rep.cfg)
    rep.result("eigenvalues", c.eigenvalues)
    rep.result("expected", c.expected)
    rep.checks_from("", c.defects)


def cmd_geodesic(args, rep: Report):
    if args.p is None:
        rng = np.random.default_rng(args.seed)
        n = args.size
        k = max(1, n // 2)
        F, G = random_frame(n, k, rng), random_frame(n, k, rng)
        rep.inputs.update({"seed": args.seed, "size": n})
    else:
        F, G = _pair_from_args(args)
        rep.inputs.update(_pair_inputs(args))
    exists, d10, d01 = minimal_geodesic_exists(F, G, rep.cfg)
    rep.result("geodesic_exists", exists)
    rep.result("corner_dims", [d10, d01])
    if not exists:
        raise SchmidtPairsError(f"no minimal geodesic: corner dimensions {d10} and {d01} differ")
    out = geodesic_report(F, G, rep.cfg)
    g = out["geodesic"]
    rep.result("distance", g.distance)
    rep.result("angles", np.sort(g.model.angles))
    rep.result("unique", g.unique)
    rep.checks_from("", out["defects"])


def cmd_oblique(args, rep: Report):
    if args.p is None:
        rng = np.random.default_rng(args.seed)
        n = args.size
        S, T = fixtures.complementary_pair(n, max(1, n // 2), rng)
        rep.inputs.update({"seed": args.seed, "size": n})
    else:
        S, T = _pair_from_args(args)
        rep.inputs.update(_pair_inputs(args))
    Q = oblique_projection(S, T, rep.cfg)
    beta, s, transfer = sv_transfer(Q, rep.cfg)
    rp = reflection_polar(Q, rep.cfg)
    rho = rho_in_sd_report(Q, rep.cfg)
    rep.result("beta", beta)
    rep.result("s", s)
    rep.checks_from("", Q.defects())
    rep.check("sv_transfer", transfer)
    rep.checks_from("polar.", rp.defects, max(rep.tol, 1e-8))
    rep.checks_from("rho.", rho.defects)


def cmd_dilate(args, rep: Report):
    if args.p is not None:
        A = check_contraction(read_mm(args.p), rep.cfg)
        rep.inputs["a"] = str(args.p)
    else:
        A = random_contraction(args.size, np.random.default_rng(args.seed))
        rep.inputs.update({"seed": args.seed, "size": args.size})
    N = args.N if args.N is not None else 3
    rep.inputs["N"] = N
    jv = jv_spectrum(A, rep.cfg)
    blk = dilation_block_check(A, N, rep.cfg)
    rep.result("singular_values", jv.singular_values)
    rep.result("jv_eigenvalues", jv.eigenvalues)
    rep.checks_from("jv.", jv.defects)
    rep.checks_from("nagy_foias.", blk.defects, min(rep.tol, 1e-10))


def _theta(args, rng):
    zeros = _zeros_arg(args.theta, 3, rng)
    rep_input = str(args.theta) if args.theta is not None else None
    return BlaschkeData(zeros), rep_input


def cmd_toeplitz(args, rep: Report):
    rng = np.random.default_rng(args.seed)
    theta, src = _theta(args, rng)
    N = args.N if args.N is not None else max(16, 4 * theta.degree)
    rep.inputs.update({"theta": src or f"random(seed={args.seed})", "N": N})
    trunc = blaschke_truncation(theta.zeros, N)
    T, H = toeplitz_compression(theta(trunc.nodes), trunc, rep.cfg)
    sv = np.linalg.svd(T, compute_uv=False)
    hsv = np.linalg.svd(H, compute_uv=False)
    rep.result("zeros", theta.zeros)
    rep.result("singular_values", sv)
    rep.result("hankel_singular_values", hsv[hsv > rep.cfg.rank_tol])
    rep.check("isometry", np.abs(sv - 1.0).max())


def cmd_modelspace(args, rep: Report):
    rng = np.random.default_rng(args.seed)
    theta, src = _theta(args, rng)
    rep.inputs.update({"theta": src or f"random(seed={args.seed})"})
    r = truncated_shift_singulars(theta, args.N, rep.cfg)
    rep.inputs["N"] = r.N
    rep.result("zeros", theta.zeros)
    rep.result("singular_values", r.singular_values)
    rep.result("expected", r.expected)
    rep.result("theta_at_zero", theta.value_at_zero)
    rep.checks_from("", r.defects, max(rep.tol, 1e-8))


def cmd_rational(args, rep: Report):
    rng = np.random.default_rng(args.seed)
    if args.zeros_a is not None and args.zeros_b is not None:
        a, b = read_complex_list(args.zeros_a), read_complex_list(args.zeros_b)
        rep.inputs.update({"zeros_a": str(args.zeros_a), "zeros_b": str(args.zeros_b)})
    elif args.zeros_a is None and args.zeros_b is None:
        a, b = fixtures.random_zero_pair(2, rng)
        rep.inputs.update({"seed": args.seed})
    else:
        raise SchmidtPairsError("give both --zeros-a and --zeros-b or neither")
    r = rational_symbol_singulars(a, b, rep.cfg, args.N)
    rep.inputs["N"] = r.N
    rep.result("zeros_a", a)
    rep.result("zeros_b", b)
    rep.result("s_direct", r.s_direct)
    rep.result("s_generic", r.s_generic)
    rep.result("s_oblique", r.s_oblique)
    if r.s_gram is not None:
        rep.result("s_gram", r.s_gram)
    rep.result("beta", r.beta)
    rep.result("corner_dims", list(r.corner_dims))
    rep.checks_from("", r.defects, max(rep.tol, 1e-8))
    rep.check("corners_trivial", float(sum(r.corner_dims)), 0.0)


def cmd_shiftsym(args, rep: Report):
    N = args.N if args.N is not None else 64
    rep.inputs["N"] = N
    r = symmetric_subspace_shift(N, rep.cfg)
    rep.result("distance", r.distance)
    rep.result("exact_distance", exact_distance(N))
    rep.result("histogram_counts", r.histogram[0])
    rep.result("histogram_edges", r.histogram[1])
    rep.checks_from("", r.defects)
    rep.check("distance_vs_exact", abs(r.distance - exact_distance(N)))
    rep.check("distance_vs_half_pi", abs(r.distance - 0.5 * np.pi), SHIFT_DISTANCE_TOL)


def cmd_prolate(args, rep: Report):
    interval = _interval_arg(args.interval, (-1.0, 1.0))
    band = _interval_arg(args.band, (-1.0, 1.0))
    grid = args.grid if args.grid is not None else 2048
    rep.inputs.update({"interval": list(interval), "band": list(band), "grid": grid})
    ev = prolate_compression(interval, band, grid)
    tau = rep.cfg.tau(1.0)
    rep.result("eigenvalues", ev)
    rep.check("range", max(0.0, -ev.min(), ev.max() - 1.0), tau)
    rep.check("nonincreasing", max(0.0, float(np.max(np.diff(ev)))) if ev.size > 1 else 0.0, tau)


def cmd_halfline(args, rep: Report):
    K = args.K if args.K is not None else 10
    grid = args.grid if args.grid is not None else 1024
    rep.inputs.update({"K": K, "grid": grid})
    h = fourier_halfline(K, grid)
    rep.result("re_eigenvalues", h.re_eigenvalues)
    rep.result("im_eigenvalues", h.im_eigenvalues)
    rep.result("re_residuals", h.re_residuals)
    rep.result("im_residuals", h.im_residuals)
    rep.result("chi_norm", h.chi_norm)
    rep.result("chi_norm_quadrature", h.chi_norm_quadrature)
    rep.result("diagnostics", h.diagnostics)
    rep.check("re_eigenvalues", h.defects["re_eigenvalues"], HALFLINE_EIG_TOL)
    rep.check("im_eigenvalues", h.defects["im_eigenvalues"], HALFLINE_EIG_TOL)
    rep.check("even_gram", h.defects["even_gram"])
    rep.check("odd_gram", h.defects["odd_gram"])
    rep.check("chi_norm_is_one", abs(h.chi_norm - 1.0), HALFLINE_CHI_TOL)


def cmd_selftest(args, rep: Report):
    """Invariant suite on seeded inputs of dimension --size."""
    n = args.size
    rng = np.random.default_rng(args.seed)
    rep.inputs.update({"seed": args.seed, "size": n})
    cfg = rep.cfg
    F, G = fixtures.random_pair(n, rng)
    rel = product_relations(F, G, cfg)
    rep.checks_from("relations.", rel.defects)
    rep.checks_from("commutator.", commutator_spectrum(F, G, cfg).defects)
    m = halmos_decompose(F, G, cfg)
    P, Q = m.reconstruct()
    rep.check("halmos.reconstruct", max(np.linalg.norm(P - F.projector(), 2), np.linalg.norm(Q - G.projector(), 2)))

    k = max(1, n // 2)
    L0, L1 = random_frame(n, k, rng), random_frame(n, k, rng)
    rep.checks_from("geodesic.", geodesic_report(L0, L1, cfg)["defects"])

    S, T = fixtures.complementary_pair(n, k, rng)
    Qo = oblique_projection(S, T, cfg)
    rep.checks_from("oblique.", Qo.defects())
    rep.check("oblique.sv_transfer", sv_transfer(Qo, cfg)[2])
    rep.checks_from("oblique.polar.", reflection_polar(Qo, cfg).defects, max(rep.tol, 1e-8))

    A = random_contraction(max(2, n // 4), rng)
    rep.checks_from("dilation.jv.", jv_spectrum(A, cfg).defects)
    rep.checks_from("dilation.nagy_foias.", dilation_block_check(A, 3, cfg).defects)

    theta = BlaschkeData(fixtures.random_zeros(4, rng))
    rep.checks_from("modelspace.", truncated_shift_singulars(theta, cfg=cfg).defects, max(rep.tol, 1e-8))
    a, b = fixtures.random_zero_pair(2, rng)
    rat = rational_symbol_singulars(a, b, cfg)
    rep.checks_from("rational.", rat.defects, max(rep.tol, 1e-8))
    rep.check("rational.corners_trivial", float(sum(rat.corner_dims)), 0.0)

    sh = symmetric_subspace_shift(max(2, n), cfg)
    rep.checks_from("shiftsym.", sh.defects)
    rep.check("shiftsym.distance_vs_exact", abs(sh.distance - exact_distance(sh.N)))
    rep.result("checks_run", len(rep.checks))


COMMANDS = {
    "halmos": (cmd_halmos, "Halmos decomposition of a pair of subspaces"),
    "relations": (cmd_relations, "singular values of PQ and the spectrum of P - Q"),
    "commutator": (cmd_commutator, "spectrum of [P, Q] and its explicit eigenvectors"),
    "geodesic": (cmd_geodesic, "minimal Grassmann geodesic and the Davis symmetry"),
    "oblique": (cmd_oblique, "oblique projection onto --p along --q and the polar factors of 2Q - I"),
    "dilate": (cmd_dilate, "Halmos and Nagy-Foias dilations of a contraction"),
    "toeplitz": (cmd_toeplitz, "Toeplitz/Hankel compression of a Blaschke symbol"),
    "modelspace": (cmd_modelspace, "compressed shift on the model space of a Blaschke product"),
    "rational": (cmd_rational, "singular values for the symbol B_a / B_b"),
    "shiftsym": (cmd_shiftsym, "bilateral shift against the symmetric sequences"),
    "prolate": (cmd_prolate, "time-band limiting eigenvalues"),
    "halfline": (cmd_halfline, "Fourier transform compressed to the half line"),
    "selftest": (cmd_selftest, "seeded invariant suite"),
}


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (np.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=1e-9, help="tolerance for identity checks (default 1e-9)")
    common.add_argument("--seed", type=int, default=0, help="seed for random inputs (default 0)")
    common.add_argument("--size", type=_positive_int, default=8, help="dimension of random inputs (default 8)")
    common.add_argument("--out", type=Path, help="write the report here instead of standard output")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--p", type=Path, help="Matrix Market file; its column span is the first subspace (or A for dilate)")
    common.add_argument("--q", type=Path, help="Matrix Market file; its column span is the second subspace")
    common.add_argument("--zeros-a", dest="zeros_a", type=Path, help="zero list, one 're im' per line")
    common.add_argument("--zeros-b", dest="zeros_b", type=Path, help="zero list, one 're im' per line")
    common.add_argument("--theta", type=Path, help="zeros of a Blaschke product, one 're im' per line")
    common.add_argument("--N", type=_positive_int, help="truncation size")
    common.add_argument("--K", type=int, help="largest Hermite pair index for halfline (default 10)")
    common.add_argument("--grid", type=_positive_int, help="grid size for prolate/halfline")
    common.add_argument("--interval", help="time interval 'a,b' for prolate")
    common.add_argument("--band", help="frequency band 'a,b' for prolate")

    parser = argparse.ArgumentParser(prog="schmidtpairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    cfg = DEFAULT_TOL
    rep = Report(args.command, {}, cfg, args.tol)
    func = COMMANDS[args.command][0]
    try:
        with np.errstate(all="ignore"):
            func(args, rep)
    except (SchmidtPairsError, OSError) as exc:
        print(f"schmidtpairs {args.command}: error: {exc}", file=stderr)
        return EXIT_INPUT

    text = to_json(rep) if args.format == "json" else to_csv(rep)
    if args.out is not None:
        try:
            args.out.write_text(text)
        except OSError as exc:
            print(f"schmidtpairs: cannot write {args.out}: {exc}", file=stderr)
            return EXIT_INPUT
    else:
        stdout.write(text)
    return EXIT_OK if rep.passed else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
