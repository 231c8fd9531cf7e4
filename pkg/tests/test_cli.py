import csv
import json
import subprocess
import sys

import pytest

from pairdiff.cli import main


@pytest.fixture
def data_csv(tmp_path):
    path = tmp_path / "data.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["age", "income", "treated", "control", "wt"])
        for k in range(60):
            w.writerow([k % 13, (k * 7) % 11, (k % 3) / 2, (k % 5) / 4, 1 + k % 2])
        w.writerow(["", 1, 0, 0, 1])
    return str(path)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_writes_outputs(data_csv, tmp_path, capsys):
    out = tmp_path / "out"
    code, stdout, _ = run(["analyze", data_csv, "--covariates", "age,income", "--q", "treated",
                           "--r", "control", "--weight", "wt", "--bins", "4,8",
                           "--out", str(out)], capsys)
    assert code == 0
    doc = json.loads((out / "analysis.json").read_text())
    assert set(doc["metrics"]) == {"kuiper", "ks", "avg_diff", "sigma",
                                   "kuiper_over_sigma", "ks_over_sigma"}
    assert doc["provenance"]["covariates"] == ["age", "income"]
    assert doc["provenance"]["dropped_rows"] == 1
    assert doc["provenance"]["bins"] == [4, 8]
    assert (out / "cumulative.svg").exists() and (out / "scatter.svg").exists()
    assert (out / "reliability_equivariance_8.svg").exists()
    assert "analysis.json" in stdout


def test_analyze_json_only_is_reproducible(data_csv, tmp_path, capsys):
    args = ["analyze", data_csv, "--covariates", "income,age", "--q", "treated", "--r",
            "control", "--tie-mode", "perturb", "--seed", "7", "--format", "json"]
    assert run(args + ["--out", str(tmp_path / "a")], capsys)[0] == 0
    assert run(args + ["--out", str(tmp_path / "b")], capsys)[0] == 0
    a = (tmp_path / "a" / "analysis.json").read_bytes()
    assert a == (tmp_path / "b" / "analysis.json").read_bytes()
    assert not list((tmp_path / "a").glob("*.svg"))


def test_reliability_command(data_csv, tmp_path, capsys):
    code, _, _ = run(["reliability", data_csv, "--covariates", "age", "--q", "treated",
                      "--r", "control", "--bins", "3", "--bin-strategy", "equispaced",
                      "--out", str(tmp_path)], capsys)
    assert code == 0
    doc = json.loads((tmp_path / "reliability.json").read_text())
    assert [d["strategy"] for d in doc["diagrams"]] == ["equispaced"]
    assert (tmp_path / "reliability_equispaced_3.svg").exists()


def test_hilbert_score_stdout(data_csv, capsys):
    code, stdout, _ = run(["hilbert-score", data_csv, "--covariates", "age,income",
                           "--bits", "8"], capsys)
    assert code == 0
    rows = list(csv.reader(stdout.splitlines()))
    assert rows[0] == ["row", "score", "hilbert_index"]
    assert len(rows) == 61
    assert all(0 <= float(r[1]) <= 1 and 0 <= int(r[2]) < 2**16 for r in rows[1:])


def test_synth_and_analyze_round_trip(tmp_path, capsys):
    code, _, _ = run(["synth", "--profile", "jump", "--n", "400", "--m", "100",
                      "--noise-sd", "0", "--out", str(tmp_path)], capsys)
    assert code == 0
    exp = json.loads((tmp_path / "expected.json").read_text())
    assert exp["metrics"]["kuiper"] == pytest.approx(0.2 * 0.2, rel=1e-12)
    code, _, _ = run(["analyze", str(tmp_path / "synth.csv"), "--covariates", "score",
                      "--q", "q", "--r", "r", "--format", "json", "--out", str(tmp_path)], capsys)
    assert code == 0
    got = json.loads((tmp_path / "analysis.json").read_text())
    assert got["curve"]["ordinates"] == exp["curve"]["ordinates"]


def test_coverage_command(capsys):
    code, stdout, _ = run(["coverage", "--trials", "50", "--n", "40", "--m", "10"], capsys)
    assert code == 0
    assert 0 <= json.loads(stdout)["fraction_within_2_sigma"] <= 1


@pytest.mark.parametrize("argv,kind", [
    (["--covariates", "nope", "--q", "treated", "--r", "control"], "SchemaError"),
    (["--covariates", "age", "--q", "age", "--r", "control"], "SchemaError"),
])
def test_schema_errors_exit_nonzero(data_csv, tmp_path, capsys, argv, kind):
    code, _, err = run(["analyze", data_csv, *argv, "--out", str(tmp_path)], capsys)
    assert code != 0 and kind in err


def test_missing_file_and_empty_input(tmp_path, capsys):
    code, _, err = run(["analyze", str(tmp_path / "x.csv"), "--covariates", "a",
                        "--q", "q", "--r", "r"], capsys)
    assert code != 0 and "IoError" in err
    empty = tmp_path / "e.csv"
    empty.write_text("a,q,r\n,1,1\n")
    code, _, err = run(["analyze", str(empty), "--covariates", "a", "--q", "q", "--r", "r"],
                       capsys)
    assert code != 0 and "EmptyInput" in err


def test_bad_record_exits_nonzero(tmp_path, capsys):
    bad = tmp_path / "b.csv"
    bad.write_text("a,q,r,w\n1,1,1,-1\n")
    code, _, err = run(["analyze", str(bad), "--covariates", "a", "--q", "q", "--r", "r",
                        "--weight", "w"], capsys)
    assert code != 0 and "InvalidRecord" in err


def test_bad_flag_values():
    for argv in (["synth", "--seed", "-1"], ["analyze", "x", "--covariates", "a", "--q", "q",
                                             "--r", "r", "--bins", "0"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code != 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "pairdiff", "synth", "--n", "20", "--m", "5",
                           "--out", str(tmp_path)], capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert (tmp_path / "synth.csv").exists()
