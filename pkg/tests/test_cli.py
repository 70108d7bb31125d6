import json
import math
import subprocess
import sys

import numpy as np
import pytest

from mvhyper import __version__
from mvhyper.cli import parse_points, read_csv_header, run


def _write(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def test_eval_hyperg_trivial(capsys):
    assert run(["eval-hyperg", "--eigenvalues", "0,0"]) == 0
    assert capsys.readouterr().out.strip() == "1.0"


def test_eval_hyperg_matrix_file(tmp_path, capsys):
    (tmp_path / "y.txt").write_text("0.5 0\n0 0.5\n")
    assert run(["eval-hyperg", "--upper", "1", "--matrix", str(tmp_path / "y.txt")]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(4.0, rel=1e-8)


def test_eval_hyperg_json_report(tmp_path):
    out = tmp_path / "h.json"
    argv = ["eval-hyperg", "--upper", "1.5", "--lower", "2.5", "--eigenvalues", "0.3,-0.2", "--series",
            "--max-degree", "25", "--out", str(out)]
    assert run(argv) == 0
    doc = json.loads(out.read_text())
    assert doc["header"]["argv"] == argv
    assert doc["header"]["version"] == __version__
    assert doc["header"]["truncation"]["max_degree"] == 25
    assert doc["reason"] == "converged"


def test_eval_density_and_roundtrip(tmp_path):
    spec = _write(tmp_path / "s.json", {"family": "MatricvariateT", "nu": 1.0})
    pts = _write(tmp_path / "p.json", [[[0.0]], [[1.0]]])
    out = tmp_path / "d.csv"
    argv = ["eval-density", "--spec", spec, "--points", pts, "--exp", "--out", str(out)]
    assert run(argv) == 0
    header = read_csv_header(out)
    assert header["version"] == __version__ and header["argv"] == argv
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")]
    assert rows[0] == "index,logpdf,pdf"
    assert float(rows[1].split(",")[1]) == pytest.approx(-math.log(math.pi), rel=1e-14)
    first = out.read_text()
    assert run(header["argv"]) == 0
    assert out.read_text() == first


def test_eval_density_bound_violation(tmp_path, capsys):
    spec = _write(tmp_path / "s.json", {"family": "CompoundThm1", "a": 0.4, "xi": [[1, 0], [0, 1]],
                                        "mu": [[0, 0]], "sigma": [[1, 0], [0, 1]], "theta": [[1]]})
    pts = _write(tmp_path / "p.json", [[[0.0, 0.0]]])
    assert run(["eval-density", "--spec", spec, "--points", pts]) == 2
    assert "a must exceed 0.5" in capsys.readouterr().err


def test_config_errors_name_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"family": "MatrixNormal",\n "sigma": [[1.0]],,}')
    assert run(["sample", "--spec", str(bad), "--n", "2"]) == 2
    assert "line 2" in capsys.readouterr().err
    unknown = _write(tmp_path / "u.json", {"family": "MatrixNormal", "sigmaa": [[1.0]]})
    assert run(["sample", "--spec", unknown, "--n", "2"]) == 2
    assert "sigmaa" in capsys.readouterr().err


def test_usage_errors():
    assert run([]) == 2
    assert run(["nonsense"]) == 2
    assert run(["zonal", "--eigenvalues", "1,2"]) == 2


def test_zonal_command(tmp_path):
    out = tmp_path / "z.csv"
    assert run(["zonal", "--eigenvalues", "1,1", "--degree", "2", "--out", str(out)]) == 0
    rows = [l for l in out.read_text().splitlines() if not l.startswith("#")][1:]
    vals = [float(r.rsplit(",", 1)[1]) for r in rows]
    assert vals == pytest.approx([8 / 3, 4 / 3])


def test_sample_deterministic(tmp_path):
    spec = _write(tmp_path / "s.json", {"family": "HgBeta2Inv", "a": 2.0, "b": 2.5, "m": 2})
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(["sample", "--spec", spec, "--n", "5", "--seed", "4", "--out", str(a)]) == 0
    assert run(["sample", "--spec", spec, "--n", "5", "--seed", "4", "--out", str(b)]) == 0
    assert a.read_text().split("\n", 5)[-1] == b.read_text().split("\n", 5)[-1]
    assert read_csv_header(a)["seed"] == 4


def test_verify_exit_codes(tmp_path, monkeypatch):
    out = tmp_path / "r.json"
    assert run(["verify", "--suite", "zonal", "--seed", "7", "--out", str(out), "--quiet"]) == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["failed"] == 0 and doc["header"]["seed"] == 7
    assert all("wall_time" not in c for c in doc["checks"])

    from mvhyper import verify

    real = verify.run_suite

    def broken(*a, **k):
        reps = real(*a, **k)
        reps[0].passed = False
        return reps

    monkeypatch.setattr(verify, "run_suite", broken)
    assert run(["verify", "--suite", "zonal", "--out", str(out), "--quiet"]) == 1


def test_mellin_check_command(tmp_path):
    out = tmp_path / "m.json"
    assert run(["mellin-check", "--kind", "confluent", "--alpha", "1", "--b", "3", "--c", "2", "--quiet",
                "--out", str(out)]) == 0
    assert json.loads(out.read_text())["checks"][0]["passed"]
    assert run(["mellin-check", "--kind", "gauss", "--alpha", "1", "--b", "3", "--c", "2"]) == 2


def test_dump_tables(tmp_path, monkeypatch):
    monkeypatch.setenv("MVHYPER_TABLE_DIR", str(tmp_path))
    assert run(["dump-tables", "--max-degree", "3", "--max-parts", "2"]) == 0
    assert (tmp_path / "zonal_K3_m2.txt").read_text().startswith("# mvhyper-zonal-table v1")
    monkeypatch.delenv("MVHYPER_TABLE_DIR")
    assert run(["dump-tables", "--max-degree", "3", "--max-parts", "2"]) == 2


def test_points_text_blocks():
    pts = parse_points("1 2\n3 4\n\n5 6\n7 8\n")
    assert len(pts) == 2 and pts[1][1, 0] == 7


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "mvhyper", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and __version__ in res.stdout
