import csv
import io
import json
import os
import subprocess
import sys

import pytest

from hermite_cs.cli import EXIT_CHECK, EXIT_OK, EXIT_USAGE, main, to_json


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kernel_example(capsys):
    code, out, _ = run(["kernel", "--spec", "bargmann1d", "--z", "0", "--w", "1", "--no-timing"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert list(rep) == ["command", "parameters", "results", "checks", "warnings", "wall_time_s"]
    assert rep["results"]["value"] == {"re": 1, "im": 0}
    assert rep["wall_time_s"] is None


def test_verify_orthogonality_example(capsys):
    code, out, _ = run(["verify-orthogonality", "--family", "k1d", "--alpha", "0.5", "--n", "10", "--order", "80"],
                       capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["results"]["max_offdiag"] <= 1e-8
    assert rep["checks"][0]["pass"] is True
    assert rep["wall_time_s"] >= 0


def test_entropy_sweep_csv(capsys):
    code, out, _ = run(["entropy-sweep", "--z1", "0.3", "--z2", "0.3", "--alphas", "0.3,0.5,0.7,0.9,0.99",
                        "--n", "12"], capsys)
    assert code == EXIT_OK
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 5
    ent = [float(r["entropy_nats"]) for r in rows]
    assert ent[-1] == min(ent)


def test_deterministic_bytes(tmp_path):
    outs = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        assert main(["schmidt", "--z1", "0.3", "--z2=-0.1j", "--alpha", "0.6", "--no-timing",
                     "--output", str(path)]) == EXIT_OK
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_float_format():
    assert to_json(0.1) == "0.10000000000000001"
    assert to_json(1 + 2j).replace(" ", "").replace("\n", "") == '{"re":1,"im":2}'
    assert to_json(float("nan")) == '"nan"'


def test_config_precedence(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# comment\nalpha = 0.3\nn = 6\nfamily = h1d\n")
    code, out, _ = run(["verify-orthogonality", "--config", str(cfg), "--alpha", "0.7", "--no-timing"], capsys)
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["parameters"]["alpha"] == 0.7 and rep["parameters"]["n"] == 6


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus = 1\n")
    code, _, err = run(["kernel", "--config", str(cfg)], capsys)
    assert code == EXIT_USAGE and "bogus" in err


@pytest.mark.parametrize("argv", [
    [],
    ["no-such-command"],
    ["kernel", "--spec", "nope", "--z", "0", "--w", "1"],
    ["kernel", "--spec", "bargmann1d", "--z", "abc", "--w", "1"],
    ["kernel", "--spec", "bargmann1d"],
    ["squeeze-compare", "--xi", "6"],
    ["verify-orthogonality", "--family", "h1d", "--alpha", "1.5"],
    ["kernel", "--spec", "szego", "--z", "2", "--w", "0"],
    ["schmidt", "--z1", "0", "--z2", "0", "--alpha", "0.5", "--format", "csv"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == EXIT_USAGE
    assert err


def test_unknown_command_lists_commands(capsys):
    code, _, err = run(["frobnicate"], capsys)
    assert code == EXIT_USAGE and "entropy-sweep" in err


def test_check_failure_exit(capsys):
    code, out, _ = run(["logconvexity", "--sequence", "1,10,1"], capsys)
    assert code == EXIT_CHECK
    assert json.loads(out)["checks"][0]["pass"] is False
    code, out, _ = run(["squeeze-compare", "--xi", "0.3", "--middle-factor", "plus"], capsys)
    assert code == EXIT_CHECK


def test_convergence_failure_exit(capsys):
    code, _, err = run(["zaremba-compare", "--spec", "vanem1d", "--alpha", "0.3", "--z", "1.5j", "--w", "1.5j"],
                       capsys)
    assert code == EXIT_CHECK and "computation failed" in err


@pytest.mark.parametrize("argv", [
    ["eval-basis", "--family", "h2d", "--alpha", "0.5", "--index", "1,2", "--z", "0.3", "--z2", "0.1j"],
    ["zaremba-compare", "--spec", "3f2", "--z", "2", "--w", "2", "--n", "2000"],
    ["zaremba-compare", "--spec", "vanem2d", "--alpha", "0.5", "--z", "0.3", "--z2", "0.1", "--w", "1j",
     "--w2", "0.2"],
    ["transform-check", "--kind", "C1hat", "--alpha", "0.5", "--reverse", "true"],
    ["compose-check", "--alpha", "0.5", "--x", "0.3", "--y", "0.2+0.1j"],
    ["compose-check", "--pair", "a2b2", "--alpha", "0.5", "--x", "0.3,-0.1", "--y", "0.2,0.1j"],
    ["coherent-state", "--z", "0.2", "--z2", "0.1", "--alpha", "0.5", "--n", "6"],
    ["eigen-residual", "--z", "0.5", "--alpha", "0.5"],
    ["eigen-residual", "--z", "0.5", "--z2=-0.3j", "--alpha", "0.5"],
    ["squeeze-compare", "--xi", "0.4+0.2j"],
    ["squeeze-compare", "--xi", "0.2", "--arity", "2", "--n", "12"],
    ["resolution-check", "--alpha", "0.5"],
    ["logconvexity", "--factorial", "10"],
    ["limit-scan", "--target", "c2hat"],
    ["limit-scan", "--target", "k1d", "--format", "json"],
])
def test_commands_pass(argv, capsys):
    code, out, _ = run(argv + ["--no-timing"], capsys)
    assert code == EXIT_OK, out
    assert out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "hermite_cs", "kernel", "--spec", "szego", "--z", "0", "--w", "0",
                        "--no-timing"], capture_output=True, text=True, env=dict(os.environ))
    assert r.returncode == 0
    assert json.loads(r.stdout)["results"]["value"]["re"] == pytest.approx(1 / (2 * 3.141592653589793))
