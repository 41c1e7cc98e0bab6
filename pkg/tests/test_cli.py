import json
import subprocess
import sys

import pytest

from repboost import cli, harness


@pytest.fixture
def domain_file(tmp_path):
    path = tmp_path / "domain.json"
    assert cli.main(["gen-domain", "--size", "32", "--seed", "5", "--out", str(path)]) == 0
    return path


def test_gen_domain_stdout(capsys):
    assert cli.main(["gen-domain", "--size", "4", "--margin", "0.25"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["points"]) == 4 and len(doc["labels"]) == 4


def test_rboost_star_run_writes_artifacts(tmp_path, domain_file):
    out = tmp_path / "run"
    code = cli.main(["rboost-star", "--domain", str(domain_file), "--eps", "0.0625",
                     "--trials", "2", "--out", str(out)])
    assert code == 0
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["status"] == "complete"
    assert manifest["seed"] == 0 and len(manifest["config_hash"]) == 64
    assert (out / "reports" / "trial_0001.json").exists()
    rows = (out / "summary.csv").read_text().splitlines()
    assert rows[0] == ",".join(harness.SUMMARY_FIELDS) and len(rows) == 3


def test_summary_is_byte_identical_across_reruns(tmp_path, domain_file):
    args = ["rmetaboost", "--domain", str(domain_file), "--trials", "2", "--seed", "4",
            "--meta-threshold-scale", "1e-5"]
    assert cli.main(args + ["--out", str(tmp_path / "a")]) == 0
    assert cli.main(args + ["--out", str(tmp_path / "b")]) == 0
    assert (tmp_path / "a/summary.csv").read_bytes() == (tmp_path / "b/summary.csv").read_bytes()
    ma = json.loads((tmp_path / "a/manifest.json").read_text())
    mb = json.loads((tmp_path / "b/manifest.json").read_text())
    assert ma["config_hash"] == mb["config_hash"]


def test_missing_domain_exits_2_without_outputs(tmp_path):
    out = tmp_path / "run"
    code = cli.main(["rboost-star", "--domain", str(tmp_path / "nope.json"),
                     "--out", str(out)])
    assert code == 2
    assert not out.exists()


def test_invalid_parameters_exit_2(tmp_path, domain_file):
    assert cli.main(["rboost-star", "--domain", str(domain_file), "--eps", "1.5"]) == 2
    assert cli.main(["threshold-test", "--mean", "2"]) == 2


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as info:
        cli.main(["rboost-star", "--mode", "bogus"])
    assert info.value.code == 2


def test_config_file_precedence(tmp_path, domain_file):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"eps": 0.2, "gamma": 0.1, "trials": 3,
                               "domain": str(domain_file)}))
    args = cli.build_parser().parse_args(["rboost-star", "--config", str(cfg), "--eps", "0.0625"])
    resolved = cli.resolve_config(args, "rboost-star")
    assert resolved.eps == 0.0625 and resolved.trials == 3 and resolved.gamma == 0.1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"eps": 0.1, "nested": {"x": 1}}))
    assert cli.main(["rboost-star", "--config", str(bad)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"epsilon": 0.1}))
    assert cli.main(["rboost-star", "--config", str(unknown)]) == 2


def test_threshold_test_csv(tmp_path):
    out = tmp_path / "t"
    assert cli.main(["threshold-test", "--trials", "4", "--m", "2000", "--out", str(out)]) == 0
    lines = (out / "summary.csv").read_text().splitlines()
    assert lines[0] == "trial,b,phi_bar,z0" and len(lines) == 5


def test_verify_writes_verdicts(tmp_path):
    out = tmp_path / "v"
    assert cli.main(["verify", "--suite", "rejection", "--out", str(out)]) == 0
    doc = json.loads((out / "verdict.json").read_text())
    assert doc["passed"] and doc["suites"]["rejection"][0]["criterion"] == 3
    assert (out / "rejection.csv").read_text().startswith("criterion,")
    assert json.loads((out / "manifest.json").read_text())["status"] == "complete"


def test_verify_failure_exits_1(tmp_path, monkeypatch):
    def failing(seed=0, jobs=1):
        return [harness._verdict(0, "always fails", False, 0, 1, 0.0)]
    monkeypatch.setitem(harness.SUITES, "rejection", failing)
    assert cli.main(["verify", "--suite", "rejection", "--out", str(tmp_path / "v")]) == 1


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "repboost.cli", "rboost-star",
                           "--domain", str(tmp_path / "missing.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "not found" in proc.stderr
