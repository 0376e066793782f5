import json
from pathlib import Path

import pytest

from main import main
from storage import ReportStore


@pytest.fixture
def write_scenario(tmp_path, scenario_dict):
    def write(**overrides):
        data = scenario_dict(**overrides)
        path = tmp_path / f"{data['name']}.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        return str(path)
    return write


def test_list_checks(capsys):
    assert main(["list-checks"]) == 0
    out = capsys.readouterr().out
    for name in ("gradient", "hessian", "entropy", "oracle", "pde-residual", "curvature-evolution"):
        assert name in out


def test_run_writes_report(tmp_path, write_scenario):
    out = tmp_path / "raporlar"
    assert main(["run", write_scenario(time_steps=128), "--out", str(out)]) == 0
    store = ReportStore(str(out), "deneme")
    report = store.load_report()
    assert report["success"] is True
    assert report["checks"][0]["name"] == "entropy"
    assert "timings" not in report
    assert "entropy" in store.list_tables()
    rows = store.load_table("entropy")
    assert len(rows) == 129
    assert rows[0]["dW_dt"] is None


def test_invalid_config_exit_code(tmp_path, write_scenario):
    path = write_scenario(checks=["bilinmeyen"])
    assert main(["run", path, "--out", str(tmp_path)]) == 2


def test_run_is_deterministic(tmp_path, write_scenario):
    path = write_scenario(time_steps=128)
    first, second = tmp_path / "a", tmp_path / "b"
    assert main(["run", path, "--out", str(first)]) == 0
    assert main(["run", path, "--out", str(second), "--threads", "2"]) == 0
    a = (first / "deneme" / "report.json").read_bytes()
    b = (second / "deneme" / "report.json").read_bytes()
    assert a == b
    assert (first / "deneme" / "tables" / "entropy.csv").read_bytes() == \
        (second / "deneme" / "tables" / "entropy.csv").read_bytes()


def test_extinction_is_reported(tmp_path, write_scenario):
    path = write_scenario(backend={"kind": "shrinking-sphere", "grid_sizes": [32], "dimension": 2},
                         final_time=0.6)
    assert main(["run", path, "--out", str(tmp_path)]) == 1
    report = ReportStore(str(tmp_path), "deneme").load_report()
    assert report["success"] is False
    assert report["failure"]["error"] == "GeometryError"


def test_study_needs_three_levels(tmp_path, write_scenario):
    assert main(["study", write_scenario(), "--levels", "2", "--out", str(tmp_path)]) == 1


def test_entropy_study_in_time(tmp_path, write_scenario):
    path = write_scenario(time_steps=128, study={"levels": 3, "refine": "time"})
    assert main(["study", path, "--out", str(tmp_path)]) == 0
    report = ReportStore(str(tmp_path), "deneme").load_report()
    assert [level["time_steps"] for level in report["levels"]] == [32, 64, 128]
    (order,) = report["orders"]
    assert order["quantity"] == "entropy_residual"
    assert order["order"] > 1.5


SCENARIOS = sorted(Path(__file__).resolve().parent.parent.glob("scenarios/*.json"))


@pytest.mark.parametrize("path", SCENARIOS, ids=lambda p: p.stem)
def test_shipped_scenarios_pass(tmp_path, path):
    data = json.loads(path.read_text(encoding="utf-8"))
    assert main(["run", str(path), "--out", str(tmp_path / "run")]) == 0
    assert ReportStore(str(tmp_path / "run"), data["name"]).load_report()["success"] is True
    if "study" in data:
        assert main(["study", str(path), "--out", str(tmp_path / "study")]) == 0
        report = ReportStore(str(tmp_path / "study"), data["name"]).load_report()
        assert report["success"] is True
        assert report["orders"]
