"""Command-line interface: exit codes, report schema, golden comparisons.

Golden files live in tests/golden by default; set ESYM_GOLDEN_DIR to point
elsewhere.  Reports are deterministic once the timestamp field is dropped.
"""

import csv
import io
import json
import os
from pathlib import Path

import pytest

from esym.cli import SCHEMA_VERSION, main

GOLDEN_DIR = Path(os.environ.get("ESYM_GOLDEN_DIR",
                                 Path(__file__).parent / "golden"))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert err == ""
    body = json.loads(out)
    assert body.pop("schema_version") == SCHEMA_VERSION
    body.pop("timestamp")
    return code, body


GOLDEN_CASES = {
    "identities_gf3.json": ["identities", "--all", "--max-n", "5",
                            "--field", "gf(3)"],
    "esp_4_2.json": ["esp", "--n", "4", "--d", "2"],
    "certify_2_2.json": ["certify", "--p", "2", "--ell", "2"],
    "v2_scan_gf4.json": ["v2", "scan", "--n", "5", "--d", "2",
                         "--field", "gf(4)"],
    "v2_witness_2_3.json": ["v2", "witness", "--p", "2", "--d", "3",
                            "--field", "gf(8)", "--trials", "25",
                            "--seed", "11"],
    "v2_dim_2_5_2.json": ["v2", "dim", "--p", "2", "--n", "5", "--d", "2"],
    "formula_benor_5_3.json": ["formula", "ben-or", "--n", "5", "--d", "3",
                               "--field", "gf(11)"],
    "formula_bound_10_4.json": ["formula", "bound", "--n", "10", "--d", "4"],
    "formula_peel.json": ["formula", "peel", "--dprime", "3", "--field", "gf(5)",
                          "--formula",
                          "(x1 + x2*x3) * (x2 + x1*x3) * x3 + x1*x2"],
    "sym_build_gf4.json": ["sym", "build", "--quadratic", "x1*x2 + x3^2",
                           "--field", "gf(4)"],
    "border_demo_gf4.json": ["border", "demo", "--target", "x1*x2",
                             "--field", "gf(4)"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden(capsys, name):
    code, body = run_json(capsys, *GOLDEN_CASES[name])
    assert code == 0
    expected = json.loads((GOLDEN_DIR / name).read_text())
    assert body == expected


def test_reports_are_deterministic(capsys):
    _, first = run_json(capsys, "v2", "witness", "--p", "3", "--d", "2",
                        "--seed", "4", "--field", "gf(9)")
    _, second = run_json(capsys, "v2", "witness", "--p", "3", "--d", "2",
                         "--seed", "4", "--field", "gf(9)")
    assert first == second


# -- exit codes ---------------------------------------------------------------

def test_nonmember_certificate_exits_zero(capsys):
    code, body = run_json(capsys, "certify", "--p", "2", "--ell", "2")
    assert code == 0
    assert body["verdict"] == "nonmember"


def test_inconclusive_certificate_exits_two(capsys, tmp_path):
    from esym.certificate import random_member
    member = random_member(1, 2, 2, seed=5)
    poly_file = tmp_path / "member.txt"
    poly_file.write_text(str(member) + "\n")
    code, body = run_json(capsys, "certify", "--p", "2",
                          "--poly", str(poly_file))
    assert code == 2
    assert body["verdict"] == "inconclusive"


def test_errors_exit_one(capsys):
    code, out, err = run(capsys, "esp", "--n", "4", "--d", "9")
    assert code == 1
    assert out == ""
    assert "error:" in err
    code, _, err = run(capsys, "certify", "--p", "4", "--ell", "2")
    assert code == 1
    code, _, err = run(capsys, "--field", "gf(6)", "esp", "--n", "3", "--d", "1")
    assert code == 1


# -- argument conventions --------------------------------------------------------

def test_global_flags_work_on_either_side(capsys):
    _, a = run_json(capsys, "--field", "gf(4)", "v2", "scan", "--n", "4", "--d", "2")
    _, b = run_json(capsys, "v2", "scan", "--n", "4", "--d", "2", "--field", "gf(4)")
    assert a == b


def test_poly_argument_accepts_file_or_literal(capsys, tmp_path):
    poly_file = tmp_path / "poly.txt"
    poly_file.write_text("x1*x2*x3 + x4*x5*x6\n")
    _, from_file = run_json(capsys, "certify", "--p", "2", "--poly", str(poly_file))
    _, literal = run_json(capsys, "certify", "--p", "2",
                          "--poly", "x1*x2*x3 + x4*x5*x6")
    assert from_file == literal


# -- other formats -----------------------------------------------------------------

def test_text_format(capsys):
    code, out, err = run(capsys, "esp", "--n", "3", "--d", "2",
                         "--format", "text")
    assert code == 0
    assert "polynomial: x1*x2 + x1*x3 + x2*x3" in out


def test_csv_format(capsys):
    code, out, _ = run(capsys, "esp", "--n", "3", "--d", "2", "--format", "csv")
    assert code == 0
    rows = {row["key"]: row["value"] for row in csv.DictReader(io.StringIO(out))}
    assert rows["polynomial"] == "x1*x2 + x1*x3 + x2*x3"
    assert rows["terms"] == "3"


def test_json_keys_are_sorted(capsys):
    _, out, _ = run(capsys, "esp", "--n", "3", "--d", "2")
    keys = list(json.loads(out))
    assert keys == sorted(keys)


def test_module_entry_point():
    import subprocess
    import sys
    proc = subprocess.run([sys.executable, "-m", "esym", "esp",
                           "--n", "3", "--d", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["polynomial"] == "x1 + x2 + x3"
