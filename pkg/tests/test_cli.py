import io
import json

import pytest

from amalgams.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_intersect_figure_instance():
    assert run("intersect", "--k", "2", "--kprime", "7") == (0, "15\n")
    assert run("intersect", "--k", "2", "--kprime", "7", "--oracle", "homology") == (0, "15\n")


def test_construct_xb(tmp_path):
    path = tmp_path / "xb.json"
    code, text = run("construct", "xb", "--s", "0.1", "--emit", str(path))
    d = json.loads(text)
    assert code == 0 and d["k"] == 10
    assert d["B"] == pytest.approx(7.8066, abs=1e-3)
    assert d["chain"]["ok"]
    assert json.loads(run("validate", str(path))[1])["valid"]
    m = json.loads(run("metrics", str(path))[1])
    assert m["sys"] == pytest.approx(0.1)


def test_bounds_precondition(capsys):
    code, _ = run("bounds", "--A", "12.566", "--B", "1", "--sys", "2", "--L", "1")
    assert code == 2
    assert "sys(X) ≤ B" in capsys.readouterr().err


def test_bounds_keys():
    code, text = run("bounds", "--A", "12.566", "--B", "10", "--sys", "2", "--L", "10", "--stepwise")
    d = json.loads(text)
    for key in ("n_max", "leaves_max", "ball_area_max", "strip_max", "betaL_max", "lambda_max",
                "upper_stepwise_log10", "upper_coarse_log10", "entropy_upper"):
        assert key in d


def test_count_and_entropy(tmp_path):
    code, text = run("count", "--family", "xb", "--s", "0.1", "--L-grid", "8:22:2")
    assert code == 0
    assert text.splitlines()[0] == "L,lower,enumerated,upper,family"
    path = tmp_path / "c.csv"
    path.write_text(text)
    code, est = run("entropy", "--counts", str(path), "--mode", "ricks")
    assert code == 0 and json.loads(est)["lower_only"]


def test_count_sbm_and_enumerate():
    code, text = run("count", "--family", "sbm", "--L-grid", "3:5:1")
    assert code == 0
    rows = text.splitlines()[1:]
    assert len(rows) == 3 and all(r.endswith(",sbm") for r in rows)
    code, text = run("enumerate", "--base", "torus", "--s", "1.83", "--u", "1.83", "--L", "4")
    assert code == 0 and text.startswith("word,length")


def test_budget_exit_code(monkeypatch):
    monkeypatch.setenv("AMALGAM_MAX_SECONDS", "0")
    code, _ = run("count", "--family", "sbm", "--L-grid", "4:9:1")
    assert code == 3


def test_bad_grid():
    assert run("count", "--family", "xb", "--s", "0.1", "--L-grid", "8:2:1")[0] == 2


def test_validate_bad_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    assert run("validate", str(p))[0] == 2
