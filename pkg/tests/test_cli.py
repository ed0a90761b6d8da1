import csv
import io
import json
import subprocess
import sys

import pytest

from flatavoid.cli import main
from flatavoid.geometry import PointSet, is_avoider, read_set, write_set


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out) if out else None, err


@pytest.fixture
def files(tmp_path):
    paths = {
        "sample": "length=4 dim=3\n1001\n0101\n1110\n",
        "trivial": "length=0 dim=0\n",
        "rep": "length=2 dim=1\n11\n",
        "full": "length=2 dim=2\n10\n01\n",
        "bad": "length=4 dim=2\n1001\n01\n",
        "affine": "length=2 dim=0\noffset=11\n",
        "edge": "n=4\n1,2\n",
        "flats": "n=4 k=3\ngroup\nrep=1100 basis=0010,0001\nrep=0011 basis=1000,0100\n",
    }
    out = {}
    for name, text in paths.items():
        p = tmp_path / name
        p.write_text(text)
        out[name] = p
    out["dir"] = tmp_path
    return out


def test_code_info_sample(capsys, files):
    code, rep, _ = run_json(capsys, "code", "info", files["sample"])
    assert code == 0
    assert rep["dim"] == 3 and rep["length"] == 4
    assert rep["generator"] == ["1001", "0101", "0010"]
    assert len(rep["parity_check"]) == 1


def test_code_trivial_has_unit_v(capsys, files):
    code, rep, _ = run_json(capsys, "code", "weights", files["trivial"])
    assert code == 0 and (rep["W(1,3)"], rep["W(3,1)"]) == ("1", "1")


def test_code_dual(capsys, files):
    code, rep, _ = run_json(capsys, "code", "dual", files["rep"])
    assert code == 0 and rep["generator"] == ["11"]
    code, _, err = run(capsys, "code", "dual", files["affine"])
    assert code == 4 and "linear" in err


def test_code_malformed_row_names_line(capsys, files):
    code, out, err = run(capsys, "code", "info", files["bad"])
    assert code == 4 and out == ""
    assert "line 3" in err


def test_missing_file_is_input_error(capsys, files):
    code, _, _ = run(capsys, "code", "info", files["dir"] / "nope")
    assert code == 4


def test_construct_repetition(capsys, files):
    out = files["dir"] / "rep.set"
    code, rep, _ = run_json(capsys, "construct", "code-based", files["rep"], "-k", 3, "-o", out)
    assert code == 0
    assert rep["predicted_size"] == rep["actual_size"] == 6
    s = read_set(out)
    assert s.points() == [3, 7, 11, 12, 13, 14]


def test_construct_full_code_is_empty(capsys, files):
    out = files["dir"] / "full.set"
    code, rep, _ = run_json(capsys, "construct", "code-based", files["full"], "-o", out)
    assert code == 0 and rep["actual_size"] == 0 and rep["k"] == 3


def test_construct_affine_and_hypergraph(capsys, files):
    out = files["dir"] / "aff.set"
    code, rep, _ = run_json(capsys, "construct", "affine", files["affine"], "-o", out)
    assert code == 0 and rep["actual_size"] == 15
    out = files["dir"] / "edge.set"
    code, rep, _ = run_json(capsys, "construct", "hypergraph", files["edge"], "-k", 3, "-o", out)
    assert code == 0 and rep["actual_size"] == rep["predicted_size"] == 4
    assert read_set(out).points() == [3, 7, 11, 15]


def test_construct_flats(capsys, files):
    out = files["dir"] / "flats.set"
    code, rep, _ = run_json(capsys, "construct", "flats", files["flats"], "-o", out)
    assert code == 0 and rep["actual_size"] == 6
    assert is_avoider(read_set(out), 3, 1)
    code, _, _ = run(capsys, "construct", "flats", files["flats"], "-k", 4, "-o", out)
    assert code == 4


def test_construct_rejects_bad_k(capsys, files):
    code, _, _ = run(capsys, "construct", "code-based", files["rep"], "-k", 2, "-o", files["dir"] / "x")
    assert code == 4


def test_verify_avoider_and_not(capsys, files):
    s = files["dir"] / "flat.set"
    s.write_text("n=4\npoints=3,7,11,15\n")
    code, rep, _ = run_json(capsys, "verify", s, "-k", 3, "-t", 1)
    assert code == 0 and rep["verdict"] == "avoider"
    assert rep["flats_scanned"] == 30 and set(rep["profile"]) <= {0, 2, 4}
    p = files["dir"] / "point.set"
    p.write_text("n=3\npoints=5\n")
    code, rep, _ = run_json(capsys, "verify", p, "-k", 1, "-t", 1)
    assert code == 2 and rep["verdict"] == "not avoider"


def test_verify_evasive(capsys, files):
    p = files["dir"] / "empty.set"
    p.write_text("n=5\npoints=\n")
    code, rep, _ = run_json(capsys, "verify", p, "-k", 3, "--evasive", 0)
    assert code == 0 and rep["verdict"] == "evasive"


def test_verify_budget_guard(capsys, files):
    p = files["dir"] / "big.set"
    write_set(PointSet(10), p)
    code, out, err = run(capsys, "verify", p, "-k", 3, "-t", 1, "--budget", 10**6)
    assert code == 3 and out == "" and "budget" in err


def test_verify_input_errors(capsys, files):
    p = files["dir"] / "flat.set"
    p.write_text("n=4\npoints=3,7,11,15\n")
    assert run(capsys, "verify", p, "-k", 3, "-t", 9)[0] == 4
    assert run(capsys, "verify", p, "-k", 5, "-t", 1)[0] == 4
    with pytest.raises(SystemExit) as exc:
        main(["verify", str(p), "-k", "3"])
    assert exc.value.code == 4


def test_transform(capsys, files):
    code, rep, _ = run_json(capsys, "transform", "ab")
    assert code == 0 and rep["W(1,3)"] == "144" and rep["W(3,1)"] == "16"
    assert rep["matrix"] == ["90", "54", "6", "10"]
    assert rep["avoider_size_k3"] == str(256 - 144)
    code, rep, _ = run_json(capsys, "transform", "a", "--seed", files["sample"])
    assert code == 0 and rep["length"] == 6 and rep["dim"] == 3
    assert run(capsys, "transform", "abc")[0] == 4


def test_sizes(capsys):
    code, rep, _ = run_json(capsys, "sizes", 2)
    assert code == 0 and rep["count"] == 4
    assert rep["values"] == ["81", "96", "144", "256"]
    code, rep, _ = run_json(capsys, "sizes", 5, "--balanced")
    assert code == 0 and rep["balanced_only"] is True
    assert run(capsys, "sizes", 99)[0] == 4


def test_spectrum(capsys, files):
    code, rep, _ = run_json(capsys, "spectrum", 4, 1, 2, "--cache-dir", files["dir"] / "cache")
    assert code == 0 and rep["members"] == list(range(2, 17))
    assert (rep["density_num"], rep["density_den"]) == (15, 16)
    assert (files["dir"] / "cache" / "spectrum_n4_k1_t2.json").exists()
    assert run(capsys, "spectrum", 4, 1, 3)[0] == 4


def test_text_and_csv_formats(capsys, files):
    code, out, _ = run(capsys, "code", "weights", files["rep"], "--format", "text")
    assert code == 0 and "weights: 1 0 1" in out
    code, out, _ = run(capsys, "code", "weights", files["rep"], "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["key", "value"] and ["W(1,3)", "10"] in rows


def test_reports_are_deterministic(capsys, files):
    p = files["dir"] / "flat.set"
    p.write_text("n=5\npoints=3,7,11,15,20\n")
    outs = {run(capsys, "verify", p, "-k", 3, "-t", 1, "--threads", th)[1] for th in (1, 1, 3)}
    assert len(outs) == 1


def test_console_entry_point(files):
    proc = subprocess.run(
        [sys.executable, "-m", "flatavoid.cli", "sizes", "1"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["count"] == 2
