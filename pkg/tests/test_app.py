"""
コマンドラインと出力ファイルのテスト
"""

import csv
import dataclasses

import pytest
import yaml

import main
import src.app
from src.errors import SimulationError

ITEM2 = "shape:\n  matrix: [[0.2, 0, 0], [0, 0.4, 0], [0, 0, 0.4]]\n"


def writeConfig(tmp_path, text: str) -> str:
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


def readCsv(path):
    with open(path, encoding="utf-8") as fp:
        return list(csv.reader(line for line in fp if not line.startswith("#")))


def test_presets(capsys):
    assert main.main(["presets"]) == 0
    output = capsys.readouterr().out
    for name in ("certify-item2", "fig5", "fig7", "sweep-item2"):
        assert name in output


def test_unknown_preset(tmp_path):
    assert main.main(["certify", "--preset", "fig9", "--out", str(tmp_path)]) == 1


def test_certify_item2(tmp_path):
    assert main.main(["certify", "--preset", "certify-item2", "--out", str(tmp_path)]) == 0
    with open(tmp_path / "certify-item2" / "certification.txt", encoding="utf-8") as fp:
        report = yaml.safe_load(fp)
    assert report["passed"] is True
    assert report["minRefinedGap"] == pytest.approx(report["closedFormBound"], rel=0.01)


def test_gain_outside_bound_is_config_error(tmp_path):
    path = writeConfig(tmp_path, "name: bad\n" + ITEM2 + "family:\n  k: 0.6\n")
    assert main.main(["certify", "--config", path, "--out", str(tmp_path)]) == 1


def test_certification_failure_exit_code(tmp_path, monkeypatch):
    real = src.app.certify

    def failing(*args, **kwargs):
        return dataclasses.replace(real(*args, **kwargs), passed=False)

    monkeypatch.setattr(src.app, "certify", failing)
    assert main.main(["certify", "--preset", "certify-item2", "--out", str(tmp_path)]) == 2
    assert (tmp_path / "certify-item2" / "certification.txt").exists()


def test_simulate_zero_horizon(tmp_path):
    text = "name: zero\n" + ITEM2 + "controllers:\n  - kind: pics\n  - kind: noncs\n    q0: 1\nsimulation:\n  horizon: 0\n"
    assert main.main(["simulate", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path)]) == 0
    directory = tmp_path / "zero"
    rows = readCsv(directory / "piV-CS-q0.csv")
    assert rows == [["t", "j", "q", "theta_err", "omega_err_norm", "torque_norm", "V", "U", "eval_count_cum"]]
    assert (directory / "NonCS-q1_events.csv").exists()
    assert (directory / "summary.txt").exists()
    assert (directory / "config.yaml").exists()


def test_simulate_short_run(tmp_path):
    text = "name: short\n" + ITEM2 + "controllers:\n  - kind: mucs\nsimulation:\n  horizon: 0.01\n"
    assert main.main(["simulate", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path), "--seed", "4"]) == 0
    rows = readCsv(tmp_path / "short" / "muV-CS-q0.csv")
    assert len(rows) == 12
    with open(tmp_path / "short" / "config.yaml", encoding="utf-8") as fp:
        assert yaml.safe_load(fp)["seed"] == 4


def test_simulation_error_exit_code(tmp_path, monkeypatch):
    def diverging(scenario):
        raise SimulationError("状態が有限ではありません", time=1.0)

    monkeypatch.setattr(src.app, "runScenario", diverging)
    text = "name: diverge\n" + ITEM2 + "controllers:\n  - kind: pics\n"
    assert main.main(["simulate", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path)]) == 3


def test_sweep(tmp_path):
    text = "name: sweep\n" + ITEM2 + "sweep:\n  kValues: [0.2, 0.465]\n  xiValues: [0.75]\n  branchGrid: 90\n"
    assert main.main(["sweep", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path)]) == 0
    rows = readCsv(tmp_path / "sweep" / "sweep.csv")
    assert rows[0] == ["k", "closed_form", "certified_min"]
    assert len(rows) == 3
    assert float(rows[2][1]) == pytest.approx(0.0712, abs=5e-4)
    xiRows = readCsv(tmp_path / "sweep" / "sweep_xi.csv")
    assert float(xiRows[1][2]) == pytest.approx(0.5, abs=1e-6)


def test_sweep_rejects_gain_outside_bound(tmp_path):
    text = "name: sweep\n" + ITEM2 + "sweep:\n  kValues: [0.3, 0.6]\n"
    assert main.main(["sweep", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path)]) == 1


def test_profile(tmp_path):
    text = "name: profile\n" + ITEM2 + "profile:\n  samples: 36\n"
    assert main.main(["profile", "--config", writeConfig(tmp_path, text), "--out", str(tmp_path)]) == 0
    with open(tmp_path / "profile" / "profile.csv", encoding="utf-8") as fp:
        assert fp.readline().startswith("# referenceLevel=")
