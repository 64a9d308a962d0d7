import json

import numpy as np

from privsq import privacy_deviation
from privsq.cli import run_cli
from privsq.stateio import read_state, write_isometry
from privsq import Isometry, SystemLayout


def test_gen_private_passes_privacy_check(tmp_path):
    out = tmp_path / "g.state"
    code = run_cli(
        ["gen", "--private", "--k", "2", "--shield-dims", "2,2", "--seed", "7",
         "--out", str(out)]
    )
    assert code == 0
    rho = read_state(str(out))
    assert rho.layout.labels == ("A1", "A2", "A1p", "A2p")
    dev = privacy_deviation(rho, 2, ("A1", "A2"), ("A1p", "A2p"))
    assert dev < 1e-9


def test_gen_extension_and_approx(tmp_path):
    out = tmp_path / "e.state"
    report = tmp_path / "r.json"
    code = run_cli(
        ["gen", "--extension", "--k", "2", "--shield-dims", "2,2", "--ext-dim", "2",
         "--seed", "3", "--out", str(out), "--report", str(report)]
    )
    assert code == 0
    rho = read_state(str(out))
    assert rho.layout.labels == ("A1", "A2", "A1p", "A2p", "E")
    rep = json.loads(report.read_text())
    assert rep["mode"] == "extension"
    assert rep["seed"] == 3

    out2 = tmp_path / "a.state"
    code = run_cli(
        ["gen", "--approx", "--p", "0.1", "--shield-dims", "2,2", "--seed", "4",
         "--out", str(out2), "--report", str(report)]
    )
    assert code == 0
    rep = json.loads(report.read_text())
    assert 0.0 < rep["eps"] < 1.0


def test_entropy_command(tmp_path, capsys):
    out = tmp_path / "g.state"
    run_cli(["gen", "--private", "--seed", "7", "--out", str(out)])
    code = run_cli(
        ["entropy", "--in", str(out), "--quantity", "cmi",
         "--groups", "A=A1+A1p;B=A2+A2p"]
    )
    assert code == 0
    line = [l for l in capsys.readouterr().out.splitlines() if l.startswith("cmi")][0]
    value = float(line.split("=")[1].split()[0])
    assert value >= 2.0 - 1e-9  # private states carry at least 2 log2 K correlated bits

    code = run_cli(["entropy", "--in", str(out), "--quantity", "vn"])
    assert code == 0


def test_esq_command_and_determinism(tmp_path):
    state = tmp_path / "g.state"
    run_cli(["gen", "--private", "--seed", "7", "--out", str(state)])
    args = ["esq", "--in", str(state), "--groups", "A=A1+A1p;B=A2+A2p",
            "--d-env", "2", "--d-sink", "2", "--restarts", "2", "--iters", "40",
            "--seed", "3"]
    r1, r2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert run_cli(args + ["--out", str(r1)]) == 0
    assert run_cli(args + ["--out", str(r2)]) == 0
    assert r1.read_bytes() == r2.read_bytes()
    rep = json.loads(r1.read_text())
    assert rep["report"]["value"] >= 1.0 - 1e-6  # private state holds a full key bit
    assert rep["tolerances"]["ftol"] == 1e-7


def test_esq_channel_command(tmp_path):
    chan = tmp_path / "id.isom"
    write_isometry(
        str(chan),
        Isometry(np.eye(2), SystemLayout([("Ain", 2)]), SystemLayout([("B", 2)])),
    )
    out = tmp_path / "r.json"
    code = run_cli(
        ["esq", "--channel", "--in", str(chan), "--d-env", "2", "--d-sink", "2",
         "--restarts", "2", "--iters", "150", "--seed", "3", "--out", str(out)]
    )
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["report"]["heuristic"] is True
    assert abs(rep["report"]["value"] - 1.0) < 1e-3


def test_verify_suite_exit_codes(tmp_path):
    r1 = tmp_path / "v1.json"
    assert run_cli(["verify", "--suite", "dual", "--instances", "10", "--seed", "1",
                    "--out", str(r1)]) == 0
    rep = json.loads(r1.read_text())
    assert rep["pass"] is True
    assert "tolerances" in rep and rep["seed"] == 1

    # an absurd tolerance forces a failing suite and exit code 1
    assert run_cli(["verify", "--suite", "dual", "--instances", "10", "--seed", "1",
                    "--tol", "1e-30"]) == 1


def test_verify_thm1_suite(tmp_path):
    out = tmp_path / "t.json"
    code = run_cli(["verify", "--suite", "thm1", "--seed", "2", "--restarts", "1",
                    "--iters", "8", "--out", str(out)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["pass"] is True
    assert len(rep["rows"]) == 3


def test_verify_report_byte_identical(tmp_path):
    r1, r2 = tmp_path / "v1.json", tmp_path / "v2.json"
    run_cli(["verify", "--suite", "lemmas", "--instances", "8", "--seed", "1", "--out", str(r1)])
    run_cli(["verify", "--suite", "lemmas", "--instances", "8", "--seed", "1", "--out", str(r2)])
    assert r1.read_bytes() == r2.read_bytes()


def test_bound_commands(tmp_path, capsys):
    assert run_cli(["bound", "--rate", "--esq", "1.0", "--eps", "0.01", "--n", "100"]) == 0
    out = capsys.readouterr().out
    assert "1.2620" in out

    code = run_cli(["bound", "--rate", "--esq", "1.0", "--eps", "0.25", "--n", "100"])
    assert code == 2
    err = capsys.readouterr().err
    assert "1 - 2*sqrt(eps)" in err

    rep = tmp_path / "b.json"
    assert run_cli(["bound", "--thm1", "--esq", "0.9", "--eps", "0.01", "--k", "2",
                    "--out", str(rep)]) == 0
    data = json.loads(rep.read_text())
    assert "arrangement" in data and data["rhs"] > 0.9

    assert run_cli(["bound", "--thm1", "--esq", "0.9", "--eps", "0.01", "--k", "2",
                    "--mode", "multi-total", "--m", "3"]) == 0


def test_usage_errors_exit_2(tmp_path):
    assert run_cli(["bound", "--esq", "1.0", "--eps", "0.1"]) == 2  # no kind flag
    assert run_cli(["nonsense"]) == 2
    missing = tmp_path / "missing.state"
    assert run_cli(["entropy", "--in", str(missing), "--quantity", "vn"]) == 2

    bad = tmp_path / "bad.state"
    bad.write_text("{not json")
    assert run_cli(["entropy", "--in", str(bad), "--quantity", "vn"]) == 2


def test_env_var_seed(tmp_path, monkeypatch, capsys):
    state = tmp_path / "g.state"
    monkeypatch.setenv("PRIVSQ_SEED", "7")
    assert run_cli(["gen", "--private", "--out", str(state)]) == 0
    via_env = read_state(str(state)).matrix.copy()
    monkeypatch.delenv("PRIVSQ_SEED")
    assert run_cli(["gen", "--private", "--seed", "7", "--out", str(state)]) == 0
    via_flag = read_state(str(state)).matrix
    assert np.array_equal(via_env, via_flag)
