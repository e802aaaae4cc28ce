import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from schmidtpairs.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run
from schmidtpairs.mmio import write_complex_list, write_mm

FAST = ["halmos", "relations", "commutator", "geodesic", "oblique", "dilate", "toeplitz", "modelspace", "rational"]


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("command", FAST)
def test_commands_pass_and_are_deterministic(command):
    code1, text1, _ = invoke(command, "--seed", "3", "--size", "6")
    code2, text2, _ = invoke(command, "--seed", "3", "--size", "6")
    assert code1 == EXIT_OK, text1
    assert text1 == text2
    data = json.loads(text1)
    assert data["command"] == command and data["status"] == "pass"
    assert set(data) == {"command", "inputs", "results", "tolerances", "checks", "status"}


def test_seed_changes_report():
    assert invoke("halmos", "--seed", "1")[1] != invoke("halmos", "--seed", "2")[1]


def test_shiftsym_and_prolate():
    code, text, _ = invoke("shiftsym", "--N", "64")
    assert code == EXIT_OK
    code, text, _ = invoke("prolate", "--interval=-1,1", "--band=-1,1", "--grid", "512")
    assert code == EXIT_OK, text


def test_csv_format():
    code, text, _ = invoke("oblique", "--seed", "5", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["section", "name", "index", "re", "im"]
    assert ["meta", "status", "", "pass", ""] in rows
    assert any(r[0] == "check" for r in rows)
    assert text == invoke("oblique", "--seed", "5", "--format", "csv")[1]


def test_out_file(tmp_path):
    target = tmp_path / "report.json"
    code, text, _ = invoke("halmos", "--out", str(target))
    assert code == EXIT_OK and text == ""
    assert json.loads(target.read_text())["command"] == "halmos"


class TestFixtures:
    def test_relations_from_files(self, tmp_path):
        P = tmp_path / "p.mtx"
        Q = tmp_path / "q.mtx"
        write_mm(P, np.eye(4)[:, :2])
        write_mm(Q, np.array([[1, 0], [0, 1], [1, 0], [0, 2.0]]))
        code, text, _ = invoke("relations", "--p", str(P), "--q", str(Q))
        assert code == EXIT_OK

    def test_overlapping_zeros_is_input_error(self, tmp_path):
        A = tmp_path / "a.txt"
        B = tmp_path / "b.txt"
        write_complex_list(A, [0.2, 0.3j])
        write_complex_list(B, [0.3j, -0.1])
        code, text, err = invoke("rational", "--zeros-a", str(A), "--zeros-b", str(B))
        assert code == EXIT_INPUT and text == "" and "overlap" in err

    def test_failed_check(self):
        # the chi_(0,1) check compares against 1 and the computed value is 1/sqrt 2
        code, text, _ = invoke("halfline", "--K", "2", "--grid", "1024")
        assert code == EXIT_FAIL
        data = json.loads(text)
        assert data["status"] == "fail"
        assert data["checks"]["re_eigenvalues"]["pass"] and not data["checks"]["chi_norm_is_one"]["pass"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nosuch"],
        [],
        ["halmos", "--size", "0"],
        ["halmos", "--p", "/nonexistent.mtx"],
        ["halmos", "--p", "/nonexistent.mtx", "--q", "/nonexistent.mtx"],
        ["prolate", "--interval", "1,0"],
        ["halfline", "--K", "20"],
    ],
)
def test_input_errors(argv):
    assert invoke(*argv)[0] == EXIT_INPUT


def test_malformed_mm(tmp_path):
    bad = tmp_path / "bad.mtx"
    bad.write_text("not a matrix\n")
    assert invoke("halmos", "--p", str(bad), "--q", str(bad))[0] == EXIT_INPUT


def test_selftest():
    assert invoke("selftest", "--size", "16", "--seed", "7")[0] == EXIT_OK


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "schmidtpairs", "commutator", "--seed", "1"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert proc.stdout == invoke("commutator", "--seed", "1")[1]
