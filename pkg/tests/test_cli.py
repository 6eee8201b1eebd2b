"""Command-line behavior: exit codes, JSON shape, determinism, config."""

import json
import subprocess
import sys

import pytest

SERIES_SINGLE = '{"terms": [{"b": 1.0, "theta": 0.75}]}\n'
SERIES_CONSTANT = '{"terms": [{"b": 1.0, "theta": 0.0}]}\n'


def run_cli(*argv, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "b2gbounds.cli", *argv],
        capture_output=True,
        text=True,
        cwd=cwd,
        timeout=300,
    )


@pytest.fixture
def series_file(tmp_path):
    path = tmp_path / "single.json"
    path.write_text(SERIES_SINGLE)
    return str(path)


def test_version_flag():
    proc = run_cli("--version")
    assert proc.returncode == 0
    assert proc.stdout.strip()


def test_analyze_reports_constant(series_file):
    proc = run_cli("analyze", series_file)
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["i1_negative"] is True
    assert obj["constant"] == pytest.approx(1.8198734513025105, rel=1e-12)
    assert obj["summary"]["i2"] == pytest.approx(0.5, rel=1e-12)


def test_analyze_missing_file_exits_2(tmp_path):
    proc = run_cli("analyze", str(tmp_path / "nope.json"))
    assert proc.returncode == 2
    assert "error" in proc.stderr.lower()


def test_analyze_malformed_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"terms": [{"b": -3, "theta": 1}]}')
    proc = run_cli("analyze", str(bad))
    assert proc.returncode == 2
    truncated = tmp_path / "trunc.json"
    truncated.write_text('{"terms": [')
    assert run_cli("analyze", str(truncated)).returncode == 2


def test_analyze_hypothesis_gate_exits_3(tmp_path):
    path = tmp_path / "const.json"
    path.write_text(SERIES_CONSTANT)
    assert run_cli("analyze", str(path)).returncode == 0
    proc = run_cli("analyze", str(path), "--require-negative-i1")
    assert proc.returncode == 3
    assert "hypothesis" in proc.stderr.lower()
    # without the gate the constant is withheld rather than invented
    obj = json.loads(run_cli("analyze", str(path)).stdout)
    assert obj["constant"] is None


def test_analyze_emit_samples(series_file, tmp_path):
    csv_path = tmp_path / "w.csv"
    proc = run_cli(
        "analyze", series_file, "--emit-samples", "4", "--samples-out", str(csv_path)
    )
    assert proc.returncode == 0
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "t,w"
    assert len(lines) == 6
    t0, w0 = lines[1].split(",")
    assert float(t0) == 0.0 and float(w0) == 1.0
    # K points need somewhere to land
    assert run_cli("analyze", series_file, "--emit-samples", "4").returncode == 2


def test_bound_command(series_file):
    proc = run_cli("bound", series_file, "--n", "1000", "--g", "2")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["max_size"] == 75
    assert obj["reference_min"] == pytest.approx(min(2 * 3.1694, 3 * 1.74217))
    # scientific count notation accepted
    assert run_cli("bound", series_file, "--n", "1e4", "--g", "1").returncode == 0


def test_yu_command_limit():
    proc = run_cli("yu", "--lambda", "0.75", "--limit", "--tol", "1e-6")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["truncation"] == "limit"
    assert obj["constant"] == pytest.approx(1.7424537, abs=1e-6)
    assert obj["error_bound"] <= 1e-6


def test_yu_command_finite_and_flag_exclusion():
    proc = run_cli("yu", "--lambda", "0.8", "--m", "100")
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["truncation"] == 100
    assert run_cli("yu", "--lambda", "0.8").returncode == 2
    assert run_cli("yu", "--lambda", "0.8", "--m", "5", "--limit").returncode == 2
    assert run_cli("yu", "--lambda", "1.2", "--limit").returncode == 2


def test_search_exact_and_budget(tmp_path):
    proc = run_cli("search", "--g", "1", "--n", "7")
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    assert obj["F"] == 4 and obj["witness"]["elems"] == [0, 1, 3, 7]
    proc = run_cli("search", "--g", "2", "--n", "14", "--budget", "40")
    assert proc.returncode == 4
    assert "lower bound" in proc.stderr


def test_search_table_csv():
    proc = run_cli("search", "--g", "1", "--n", "7", "--table")
    assert proc.returncode == 0
    lines = proc.stdout.strip().splitlines()
    assert lines[0].startswith("g,N,F,witness")
    assert lines[-1].startswith("1,7,4,0 1 3 7")
    assert len(lines) == 9


def test_optimize_deterministic_and_manifest(tmp_path):
    out1, out2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
    for out in (out1, out2):
        proc = run_cli(
            "optimize", "--m", "6", "--init", "random", "--seed", "11", "--out", out
        )
        assert proc.returncode == 0
    with open(out1) as f1, open(out2) as f2:
        assert f1.read() == f2.read()
    with open(out1 + ".manifest.json") as fh:
        manifest = json.load(fh)
    assert manifest["command"] == "optimize"
    assert manifest["inputs"]["seed"] == 11
    assert manifest["outputs"] == [out1]
    assert "timestamp" in manifest and "tool_version" in manifest


def test_optimize_resume_roundtrip(tmp_path):
    ck = str(tmp_path / "ck.json")
    run_cli(
        "optimize", "--m", "5", "--max-iter", "4",
        "--checkpoint", "2", "--checkpoint-path", ck,
    )
    proc = run_cli("optimize", "--m", "5", "--resume", ck)
    assert proc.returncode == 0
    obj = json.loads(proc.stdout)
    fresh = json.loads(run_cli("optimize", "--m", "5").stdout)
    assert obj["rho"] == pytest.approx(fresh["rho"], rel=1e-9)


def test_optimize_init_from_params_file(tmp_path):
    out = str(tmp_path / "seed.json")
    run_cli("optimize", "--m", "4", "--out", out)
    proc = run_cli("optimize", "--m", "4", "--init", out)
    assert proc.returncode == 0
    proc = run_cli("optimize", "--m", "3", "--init", out)
    assert proc.returncode == 2  # order mismatch is an input error


def test_config_file_precedence(tmp_path, series_file):
    cfg = tmp_path / "cfg.txt"
    cfg.write_text("# defaults\ntol = 1e-3\nthreads = 2\n")
    loose = json.loads(
        run_cli("yu", "--config", str(cfg), "--lambda", "0.75", "--limit").stdout
    )
    assert loose["error_bound"] <= 1e-3
    tight = json.loads(
        run_cli(
            "yu", "--config", str(cfg), "--lambda", "0.75", "--limit",
            "--tol", "1e-9",
        ).stdout
    )
    assert tight["error_bound"] <= 1e-9  # explicit flag beats config
    bad = tmp_path / "bad.txt"
    bad.write_text("tol 1e-3\n")
    assert (
        run_cli("yu", "--config", str(bad), "--lambda", "0.75", "--limit").returncode
        == 2
    )


def test_verify_command_passes():
    proc = run_cli("verify", "--suite", "identities", "--seed", "3")
    assert proc.returncode == 0
    assert "PASS" in proc.stdout and "FAIL" not in proc.stdout


def test_threads_env_fallback(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "b2gbounds.cli", "search", "--g", "1", "--n", "10"],
        capture_output=True,
        text=True,
        env={"B2G_THREADS": "3", "PATH": "/usr/bin:/bin", "HOME": str(tmp_path)},
        timeout=120,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["F"] == 4
