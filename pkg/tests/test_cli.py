import io
import json
import subprocess
import sys

import pytest

from leviflat import from_json, parse, worked_example
from leviflat.cli import main
from leviflat.constructions import UMBRELLA_AFFINE_TEXT, UMBRELLA_TEXT


def run(capsys, monkeypatch, argv, stdin=""):
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_example_then_rank(capsys, monkeypatch):
    code, text, _ = run(capsys, monkeypatch, ["example", "cusp-curve"])
    assert code == 0
    code, out, _ = run(capsys, monkeypatch, ["rank"], text)
    assert code == 0
    assert out.splitlines() == ["rank 4", "signature (2,2)"]


def test_json_pipe(capsys, monkeypatch):
    _, doc, _ = run(capsys, monkeypatch, ["example", "quadratic-cone", "--json"])
    code, out, _ = run(capsys, monkeypatch, ["rank", "--json"], doc)
    report = json.loads(out)
    assert code == 0 and report["outputs"]["rank"] == 2
    assert report["command"] == "rank" and report["schema_version"] == 1


def test_bihomogenize_umbrella(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["bihomogenize"], UMBRELLA_AFFINE_TEXT)
    assert code == 0
    assert parse(out.strip(), 2) == parse(UMBRELLA_TEXT)


def test_sphere_refuted(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["leviflat", "--poly", "z1*~z1 + z2*~z2 - 1"])
    assert code == 4
    assert "verdict: refuted" in out


def test_leviflat_options(capsys, monkeypatch):
    argv = ["leviflat", "--json", "--seed", "3", "--samples", "8", "--box", "-1,1",
            "--thresholds", "1e-12,1e-8,1e-6", "--poly", "z1*~z1 + z2*~z2 - z3*~z3"]
    code, out, _ = run(capsys, monkeypatch, argv)
    code2, out2, _ = run(capsys, monkeypatch, argv)
    assert code == code2 == 4 and out == out2
    assert json.loads(out)["outputs"]["verdict"] == "refuted"


def test_certified_exit_zero(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["leviflat"], worked_example("nodegen-quartic").to_json()["text"])
    assert code == 0 and "certified" in out


def test_matrix_and_decompose(capsys, monkeypatch):
    text = worked_example("cusp-curve").to_json()["text"]
    code, out, _ = run(capsys, monkeypatch, ["matrix", "--json"], text)
    assert code == 0
    assert json.loads(out)["outputs"]["matrix"][0][3] == {"re": "1/1", "im": "0/1"}
    code, out, _ = run(capsys, monkeypatch, ["decompose"], text)
    assert code == 0 and out.count("|^2") == 4


def test_segre_and_degen(capsys, monkeypatch):
    cone = "-1/2*i*z1*~z2 + 1/2*i*z2*~z1"
    code, out, _ = run(capsys, monkeypatch, ["segre", "--point", "1, 1"], cone)
    assert code == 0 and parse(out.splitlines()[0], 2) == parse("-1/2*i*(z1 - z2)")
    code, out, _ = run(capsys, monkeypatch, ["degen", "--point", "0, 0"], cone)
    assert code == 0 and "yes" in out
    code, out, _ = run(capsys, monkeypatch, ["degen", "--point", "1, 1"], cone)
    assert code == 4
    code, out, _ = run(capsys, monkeypatch, ["degen", "--locus", "--reduce", "--vars", "3"], cone)
    assert code == 0 and "w1" in out and "w2" in out


def test_dehomogenize_chart(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["dehomogenize", "--chart", "2"], "z1*~z1 - z2*~z2")
    assert code == 0 and parse(out.strip()) == parse("z1*~z1 - 1")


def test_pullback(capsys, monkeypatch):
    argv = ["pullback", "--f", "z1", "--g", "z2", "--curve", "z1*~z1 - 1"]
    code, out, _ = run(capsys, monkeypatch, argv)
    assert code == 0 and parse(out.strip()) == parse("z1*~z1 - z2*~z2")


def test_leaf_check(capsys, monkeypatch):
    cone = "-1/2*i*z1*~z2 + 1/2*i*z2*~z1"
    code, _, _ = run(capsys, monkeypatch, ["leaf-check", "--family", "z1 = t*z2"], cone)
    assert code == 0
    code, _, _ = run(capsys, monkeypatch, ["leaf-check", "--family", "z1 = i*t*z2"], cone)
    assert code == 4


def test_example_list_and_json_document(capsys, monkeypatch):
    code, out, _ = run(capsys, monkeypatch, ["example", "--list"])
    assert code == 0 and "brunella" in out.split()
    code, out, _ = run(capsys, monkeypatch, ["parse", "--json", "--poly", "~z1*z1"])
    assert from_json(json.loads(out)["polynomial"]) == parse("z1*~z1")


@pytest.mark.parametrize("argv,stdin,expected", [
    (["nonsense"], "", 1),
    (["rank"], "", 1),
    (["leviflat", "--box", "1"], "z1*~z1 + z2*~z2 - 1", 1),
    (["parse"], "2 z1", 2),
    (["parse"], '{"schema_version": 9, "num_vars": 1, "terms": []}', 2),
    (["rank"], "z1*~z2", 3),
    (["matrix"], "z1*~z1 - 1", 3),
    (["dehomogenize", "--chart", "5"], "z1*~z1", 3),
])
def test_exit_codes(capsys, monkeypatch, argv, stdin, expected):
    code, _, err = run(capsys, monkeypatch, argv, stdin)
    assert code == expected
    assert err


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "leviflat", "nonsense"], capture_output=True, text=True)
    assert proc.returncode == 1


def test_version():
    proc = subprocess.run([sys.executable, "-m", "leviflat", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and "schema_version 1" in proc.stdout


def test_shell_pipe(tmp_path):
    path = tmp_path / "cusp.json"
    first = subprocess.run([sys.executable, "-m", "leviflat", "example", "cusp-curve", "--json"],
                           capture_output=True, text=True, check=True)
    path.write_text(first.stdout)
    proc = subprocess.run([sys.executable, "-m", "leviflat", "rank", "--input", str(path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines() == ["rank 4", "signature (2,2)"]
