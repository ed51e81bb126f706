import csv
import io
import json
import subprocess
import sys

import pytest

from braesslab import cli
from braesslab.cli import EXIT_CONSISTENCY, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def star6(tmp_path):
    path = tmp_path / "s6.txt"
    path.write_text("# star\n6\n0 5\n1 5\n2 5\n3 5\n4 5\n")
    return str(path)


def test_kemeny_text(capsys, star6):
    code, out, _ = run(capsys, "kemeny", star6)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# braesslab 0.1.0"
    assert lines[1].startswith("# config: command=kemeny input=")
    assert "kappa = 9/2 ≈ 4.500000" in lines


def test_kemeny_json(capsys):
    code, out, _ = run(capsys, "kemeny", "--family", "cycle", "--n", "5", "--format", "json")
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["config"]["input"] == "cycle(5)"
    assert doc["result"]["kappa"] == {"num": "4", "den": "1", "float": 4.0}


def test_kemeny_csv(capsys):
    code, out, _ = run(capsys, "kemeny", "--family", "complete", "--n", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["n", "m", "tau", "kappa_num", "kappa_den", "kappa_float"]
    assert rows[1][:5] == ["4", "6", "16", "9", "4"]


def test_scan_braess_star(capsys):
    code, out, _ = run(capsys, "scan-braess", "--family", "star", "--n", "5", "--format", "json")
    res = json.loads(out)["result"]
    assert code == EXIT_OK and res["paradoxical"] and res["status"] == "ok"
    assert all(e["is_braess"] for e in res["edges"])


def test_scan_braess_complete(capsys):
    code, out, _ = run(capsys, "scan-braess", "--family", "complete", "--n", "4")
    assert code == EXIT_OK
    assert "status: no non-edges" in out and "paradoxical: no" in out


def test_check_paradox_verify(capsys, star6):
    code, out, _ = run(capsys, "check-paradox", star6, "--vertex", "0", "--k1", "1", "--k2", "2", "--verify")
    assert code == EXIT_OK
    assert "Phi = 192" in out and "verdict: paradoxical" in out
    assert "verified delta_kappa = 1/6 ≈ 0.166667" in out
    assert "G_hat:" in out


def test_check_paradox_boundary(capsys):
    code, out, _ = run(capsys, "check-paradox", "--family", "cycle", "--n", "6", "--vertex", "0", "--k1", "1", "--k2", "2")
    assert code == EXIT_OK and "verdict: boundary (Phi = 0)" in out


def test_family_table_threshold(capsys):
    code, out, _ = run(capsys, "family-table", "--family", "star", "--vertex-policy", "pendent",
                       "--k1", "2", "--k2", "2", "--n-max", "20", "--format", "json")
    res = json.loads(out)["result"]
    assert code == EXIT_OK
    assert res["first_n_true"] == 9 and res["agrees_with_known"] is True


def test_family_table_known(capsys):
    code, out, _ = run(capsys, "family-table", "--known", "--format", "csv")
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 10
    assert all(r["computed"] == r["known"] and r["agree"] == "1" for r in rows)


def test_sequence_ratio_broom(capsys):
    code, out, _ = run(capsys, "sequence-ratio", "--family", "broom", "--alpha", "sqrt",
                       "--vertex-policy", "pendent", "--n-min", "4", "--n-max", "30", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == EXIT_OK
    assert rows[0][-3:] == ["alpha", "ell", "beta"]
    assert len(rows) == 28


def test_oracle_verify(capsys):
    code, out, _ = run(capsys, "oracle-verify", "--family", "broom", "--n", "7", "--alpha", "3")
    assert code == EXIT_OK and out.count(": ok") == 4


def test_oracle_verify_mismatch_exits_3(capsys, monkeypatch):
    monkeypatch.setattr(cli, "tree_count", lambda g: -1)
    code, out, _ = run(capsys, "oracle-verify", "--family", "cycle", "--n", "4")
    assert code == EXIT_CONSISTENCY and "tau: MISMATCH" in out


def test_oracle_verify_bound(capsys):
    code, _, err = run(capsys, "oracle-verify", "--family", "path", "--n", "12")
    assert code == EXIT_DOMAIN and "bound" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["kemeny"],
        ["kemeny", "--family", "wheel", "--n", "5"],
        ["kemeny", "--family", "broom", "--n", "6", "--alpha", "x"],
        ["check-paradox", "--family", "star", "--n", "5", "--vertex", "0", "--k1", "1"],
        ["sequence-ratio", "--family", "cycle", "--cutoff", "abc"],
        ["nope"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


@pytest.mark.parametrize(
    "text",
    ["4\n0 1\n2 3\n", "3\n0 1\n1 x\n", "1\n"],
)
def test_domain_errors_exit_2(capsys, tmp_path, text):
    path = tmp_path / "g.txt"
    path.write_text(text)
    code, out, err = run(capsys, "kemeny", str(path))
    assert code == EXIT_DOMAIN and out == "" and err.startswith("braesslab: error:")


def test_missing_file_exit_2(capsys, tmp_path):
    code, _, _ = run(capsys, "kemeny", str(tmp_path / "absent.txt"))
    assert code == EXIT_DOMAIN


def test_bad_twin_paths_exit_2(capsys):
    code, _, err = run(capsys, "check-paradox", "--family", "star", "--n", "5", "--vertex", "0", "--k1", "0", "--k2", "1")
    assert code == EXIT_DOMAIN and "k1" in err


@pytest.mark.parametrize("fmt", ["text", "json", "csv"])
def test_output_independent_of_threads(capsys, fmt, monkeypatch):
    outs = []
    for threads in ("1", "4"):
        monkeypatch.setenv("BRAESSLAB_THREADS", threads)
        code, out, _ = run(capsys, "scan-braess", "--family", "broom", "--n", "9", "--alpha", "4", "--format", fmt)
        assert code == EXIT_OK
        outs.append(out)
        code, out, _ = run(capsys, "family-table", "--family", "path", "--n-max", "25", "--threads", threads, "--format", fmt)
        outs.append(out)
    assert outs[0] == outs[2] and outs[1] == outs[3]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "braesslab", "kemeny", "--family", "path", "--n", "2"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "kappa = 1/2 ≈ 0.500000" in proc.stdout


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert capsys.readouterr().out.strip() == "0.1.0"
