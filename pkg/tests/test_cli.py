import json

import pytest

from permuton_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    assert run(capsys, "enumerate", "--n", "5", "--avoid", "321", "--count-only")[:2] == (0, "42\n")
    assert run(capsys, "enumerate", "--n", "0", "--avoid", "21", "--count-only")[1] == "1\n"
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--avoid", "12")
    assert code == 0 and out.split() == ["3,2,1"]
    assert run(capsys, "enumerate", "--n", "11", "--avoid", "321", "--count-only")[0] == 2


def test_biject(capsys, tmp_path):
    trace = tmp_path / "t.jsonl"
    code, out, _ = run(capsys, "biject", "--perm", "3,1,4,2", "--class", "2,0,1", "--trace", str(trace))
    assert code == 0 and "rho=1,3,4,2" in out
    assert json.loads(trace.read_text())["spec"] == [2, 0, 1]
    assert run(capsys, "biject", "--perm", "1,2,3,4", "--class", "2,1,1")[0] == 3


def test_sample(capsys, tmp_path):
    code, out, _ = run(capsys, "sample", "--n", "20", "--d", "2", "--seed", "3", "--count", "2")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and [x["stream"] for x in lines] == [0, 1]
    again = run(capsys, "sample", "--n", "20", "--d", "2", "--seed", "3", "--count", "2")[1]
    assert again == out
    assert run(capsys, "sample", "--n", "5000", "--d", "2")[0] == 2
    code, out, _ = run(capsys, "sample", "--n", "12", "--class", "2,1,1")
    assert code == 0 and len(json.loads(out)["perm"].split(",")) == 12


def test_measure(capsys):
    code, out, _ = run(capsys, "measure", "--perm", "1,2,3,4", "--eps", "0.5")
    header, row = out.splitlines()
    assert code == 0 and header.startswith("schema_version")
    assert float(row.split(",")[7]) == pytest.approx(0.5)
    assert run(capsys, "measure", "--perm", "2,1", "--eps", "1.5")[0] == 2


def test_converge_and_goodness(capsys, tmp_path):
    out = tmp_path / "c.csv"
    code, text, _ = run(capsys, "converge", "--ns", "10,20", "--samples", "2", "--out", str(out))
    assert code == 0 and len(text.splitlines()) == 2 and len(out.read_text().splitlines()) == 5
    assert run(capsys, "converge", "--ns", "20,10")[0] == 2
    code, text, _ = run(capsys, "goodness", "--ns", "30", "--samples", "2", "--d", "2")
    assert code == 0 and text.startswith("n=30 good_fraction=")


def test_shape_wilf(capsys):
    code, out, _ = run(capsys, "shape-wilf", "--max-boxes", "9")
    assert code == 0 and out.count("{") == 1
    code, out, _ = run(capsys, "shape-wilf", "--pair", "123", "312", "--max-boxes", "16")
    assert "counterexample shape=4,4,4,3 counts=13,12" in out


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "oneside", "--max-n", "5")
    assert code == 0 and json.loads(out)["ok"]


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# sweep\nns = 10,20\nsamples = 1\nseed = 4\n")
    code, out, _ = run(capsys, "--config", str(cfg), "converge")
    rows = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and [r["n"] for r in rows] == [10, 20] and rows[0]["samples"] == 1
    # flags override the file
    out = run(capsys, "--config", str(cfg), "converge", "--ns", "15")[1]
    assert [json.loads(x)["n"] for x in out.splitlines()] == [15]
    assert run(capsys, "--config", str(tmp_path / "missing.cfg"), "converge")[0] == 2
