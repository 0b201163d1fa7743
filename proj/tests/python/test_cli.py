"""End-to-end tests of the codedconv command-line binary.

The binary path comes from the CODEDCONV_CLI environment variable (set by the
ctest registration) and defaults to build/codedconv.
"""

import json
import os
import subprocess

import pytest

CLI = os.environ.get(
    "CODEDCONV_CLI",
    os.path.join(os.path.dirname(__file__), "..", "..", "build", "codedconv"),
)

BASE_CONFIG = {
    "n1": 64,
    "n2": 32,
    "p": 8,
    "strategies": [
        {"kind": "uncoded"},
        {"kind": "replication", "r": 4},
        {"kind": "coded", "s": 32},
    ],
    "model": {"mu": 1, "alpha": 1, "c": 1, "log_base": 2},
    "deadlines": {"min": 400, "max": 1600, "count": 10, "spacing": "linear"},
    "trials": 2000,
    "seed": 7,
}


def write_config(tmp_path, overrides=None, name="config.json"):
    cfg = json.loads(json.dumps(BASE_CONFIG))
    if overrides:
        cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run_cli(*args):
    return subprocess.run([CLI, *args], capture_output=True, text=True)


def test_plan(tmp_path):
    cfg = write_config(tmp_path)
    out = tmp_path / "plan.json"
    proc = run_cli("plan", "--config", cfg, "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    assert "worst_k=8" in proc.stdout
    assert "verified" in proc.stdout
    report = json.loads(out.read_text())
    by_label = {s["strategy"]: s for s in report["strategies"]}
    assert by_label["uncoded"]["worst_k"] == 8
    assert by_label["replication_r4"]["worst_k"] == 5
    assert by_label["coded_s32"]["worst_k"] == 2
    assert all(s["verified"] for s in report["strategies"])


def test_verify_pass_and_corrupt_decode_fails(tmp_path):
    cfg = write_config(tmp_path)
    ok = run_cli("verify", "--config", cfg)
    assert ok.returncode == 0, ok.stderr + ok.stdout
    assert "FAIL" not in ok.stdout

    bad = run_cli("verify", "--config", cfg, "--corrupt-decode")
    assert bad.returncode == 1
    assert "FAIL" in bad.stdout


def test_simulate_deterministic_and_well_formed(tmp_path):
    cfg = write_config(tmp_path)
    outs = []
    for name in ("a.csv", "b.csv"):
        out = tmp_path / name
        proc = run_cli("simulate", "--config", cfg, "--out", str(out))
        assert proc.returncode == 0, proc.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]

    lines = outs[0].decode().splitlines()
    assert lines[0] == "strategy,s,r,deadline,trials,failures,survival,log10_survival"
    assert len(lines) == 1 + 3 * 10
    for line in lines[1:]:
        cols = line.split(",")
        survival = float(cols[6])
        assert 0.0 <= survival <= 1.0
        if survival == 0.0:
            assert cols[7] == ""
        else:
            assert cols[7] != ""


def test_simulate_single_trial_survival_is_zero_or_one(tmp_path):
    cfg = write_config(tmp_path, {"trials": 1})
    proc = run_cli("simulate", "--config", cfg)
    assert proc.returncode == 0, proc.stderr
    for line in proc.stdout.splitlines()[1:]:
        assert float(line.split(",")[6]) in (0.0, 1.0)


def test_analyze_with_simulation(tmp_path):
    cfg = write_config(tmp_path)
    csv = tmp_path / "sim.csv"
    # Deadlines deep enough into the tail for a meaningful slope fit.
    sim_cfg = write_config(
        tmp_path,
        {
            "deadlines": {"min": 480, "max": 1400, "count": 25, "spacing": "linear"},
            "trials": 50000,
        },
        name="sim_config.json",
    )
    assert run_cli("simulate", "--config", sim_cfg, "--out", str(csv)).returncode == 0

    out = tmp_path / "report.json"
    proc = run_cli("analyze", "--config", cfg, "--sim", str(csv), "--out", str(out))
    assert proc.returncode == 0, proc.stderr
    report = json.loads(out.read_text())

    by_label = {s["strategy"]: s for s in report["strategies"]}
    eps_uncoded = by_label["uncoded"]["epsilon"]
    assert eps_uncoded == pytest.approx(-1.0 / 160.0)
    assert by_label["coded_s32"]["epsilon_is_upper_bound"] is True
    assert by_label["uncoded"]["fitted_slope"] == pytest.approx(eps_uncoded, rel=0.15)
    assert report["regime"] == "coded-favorable"
    assert report["best_s"] == 32
    assert report["theorem5"]["holds"] is True


def test_unknown_config_key_rejected(tmp_path):
    cfg = write_config(tmp_path, {"unexpected": 1})
    proc = run_cli("plan", "--config", cfg)
    assert proc.returncode == 2
    assert "unknown key" in proc.stderr


def test_invalid_strategy_rejected(tmp_path):
    cfg = write_config(
        tmp_path, {"strategies": [{"kind": "coded", "s": 8}]}  # below the coded regime
    )
    proc = run_cli("plan", "--config", cfg)
    assert proc.returncode == 2
    assert "coded regime" in proc.stderr
