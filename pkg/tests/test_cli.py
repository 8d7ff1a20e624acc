import json
import subprocess
import sys

import pytest

from semireg.cli import main
from semireg.generators import RsrbParams
from semireg.experiments import sample_graph
from semireg.spectra import algebraic_connectivity


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_predict_rsrb(capsys):
    code, out, _ = run(capsys, "predict", "--model", "rsrb", "--d1", "2", "--d2", "6")
    assert code == 0
    rep = json.loads(out)
    assert rep["mu"] == pytest.approx(0.19577, abs=1e-5)
    assert rep["config"]["d1"] == 2 and out.endswith("\n")


def test_gen_small_world(capsys, tmp_path):
    path = tmp_path / "g.csv"
    code, _, _ = run(capsys, "gen", "--model", "small-world", "--n", "52", "--seed", "7", "--out", str(path))
    assert code == 0
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "u,v" and len(lines) == 66


def test_gen_then_ac_matches_in_memory(capsys, tmp_path):
    path = tmp_path / "g.csv"
    run(capsys, "gen", "--model", "rsrb", "--d1", "2", "--d2", "3", "--n", "200", "--seed", "4", "--out", str(path))
    code, out, _ = run(capsys, "ac", "--in", str(path), "--vertices", "200")
    assert code == 0
    expected = algebraic_connectivity(sample_graph(RsrbParams.from_n(2, 3, 200), 4, 0))
    assert float(out) == pytest.approx(expected, abs=1e-12)


def test_spectrum(capsys, tmp_path):
    path = tmp_path / "g.csv"
    run(capsys, "gen", "--model", "complete-bipartite", "--b", "2", "--n", "7", "--out", str(path))
    code, out, _ = run(capsys, "spectrum", "--in", str(path))
    vals = [float(v) for v in out.split()]
    assert code == 0 and len(vals) == 7
    assert vals[1] == pytest.approx(2, abs=1e-12)


def test_mc_report(capsys):
    code, out, _ = run(capsys, "mc", "--model", "rsrb", "--d1", "2", "--d2", "3", "--n", "1000",
                       "--trials", "3", "--seed", "1", "--jobs", "1")
    rep = json.loads(out)
    assert code == 0 and len(rep["values"]) == 3 and rep["trials"] == 3


def test_mc_byte_identical_across_jobs(capsys):
    args = ["mc", "--model", "rsr", "--p", "1/2", "--d1", "2", "--d2", "6", "--n", "200", "--trials", "6"]
    _, a, _ = run(capsys, *args, "--jobs", "1")
    _, b, _ = run(capsys, *args, "--jobs", "3")
    assert a == b


def test_series_catalan(capsys):
    code, out, _ = run(capsys, "series", "--system", "catalan", "--order", "10", "--exact")
    rep = json.loads(out)
    assert code == 0
    assert rep["coefficients"][:6] == ["1", "1", "2", "5", "14", "42"]


def test_pairs(capsys):
    code, out, _ = run(capsys, "pairs", "--d", "8")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "d,d1,d2,mu_asympt" and len(lines) == 4


def test_usage_errors_exit_2(capsys):
    code, _, err = run(capsys, "mc", "--model", "rsrb", "--d1", "2", "--d2", "3", "--n", "1001")
    assert code == 2 and "cannot be split" in err
    code, _, err = run(capsys, "predict", "--model", "rsr", "--d1", "2", "--d2", "3")
    assert code == 2 and "--p" in err
    with pytest.raises(SystemExit) as exc:
        main(["predict", "--model", "bogus"])
    assert exc.value.code == 2


def test_runtime_error_exit_1(capsys):
    code, _, err = run(capsys, "gen", "--model", "rsrb", "--d1", "2", "--d2", "6", "--n1", "3")
    assert code == 1 and "RewireError" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "semireg", "predict", "--model", "regular", "--d", "3"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(res.stdout)["mu"] == pytest.approx(0.171572875, abs=1e-9)
