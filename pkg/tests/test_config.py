import glob
import json
import os

import pytest

from exceptions import ConfigError, RefinementError
from models.config import ScenarioConfig

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "scenarios")


def test_minimal_scenario_is_valid(scenario_dict):
    config = ScenarioConfig.from_dict(scenario_dict())
    assert config.backend.kind == "torus-1d"
    assert config.backend.edge_lengths == pytest.approx([6.283185307179586])
    assert config.scheme == "crank-nicolson"
    assert config.residual_times == [0.05]


def test_unknown_check_names_field(scenario_dict):
    with pytest.raises(ConfigError) as info:
        ScenarioConfig.from_dict(scenario_dict(checks=["ricci-soliton"]))
    assert "checks" in info.value.detail


def test_oracle_requires_gaussian_terminal(scenario_dict):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(checks=["oracle"]))
    config = ScenarioConfig.from_dict(scenario_dict(
        checks=["oracle"], terminal={"kind": "periodized-gaussian", "variance": 0.05}))
    assert config.terminal.variance == 0.05


def test_backend_restrictions(scenario_dict):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(checks=["curvature-evolution"]))
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(backend={"kind": "torus-2d", "grid_sizes": [64]}))


def test_grid_and_steps_must_be_even(scenario_dict):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(backend={"kind": "torus-1d", "grid_sizes": [63]}))
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(time_steps=33))


def test_sample_times_on_interior_nodes(scenario_dict):
    ScenarioConfig.from_dict(scenario_dict(sample_times=[0.025, 0.075]))
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(sample_times=[0.1]))
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(sample_times=[0.001]))


def test_assert_policy_needs_constants(scenario_dict):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_dict(scenario_dict(checks=["gradient"], constant_policy="assert"))
    config = ScenarioConfig.from_dict(scenario_dict(
        checks=["gradient"], constant_policy="assert", constants={"C": 0.0}))
    assert config.constants["C"] == 0.0


def test_broken_json_reports_position(tmp_path):
    path = tmp_path / "bozuk.json"
    path.write_text('{\n  "name": "x",\n  "checks": [\n}\n', encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        ScenarioConfig.from_file(str(path))
    assert info.value.detail.startswith(f"{path}:4:")
    assert info.value.exit_code == 2


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        ScenarioConfig.from_file(str(tmp_path / "yok.json"))


def test_coarsened_halves_resolution(scenario_dict):
    config = ScenarioConfig.from_dict(scenario_dict())
    coarse = config.coarsened(2)
    assert coarse.backend.grid_sizes == [16]
    assert coarse.time_steps == 8
    in_time = config.coarsened(1, "time")
    assert in_time.backend.grid_sizes == [64]
    assert in_time.time_steps == 16
    assert config.coarsened(0) == config


def test_coarsening_must_nest(scenario_dict):
    with pytest.raises(RefinementError):
        ScenarioConfig.from_dict(scenario_dict(time_steps=34)).coarsened(2)
    with pytest.raises(RefinementError):
        ScenarioConfig.from_dict(scenario_dict()).coarsened(3)


@pytest.mark.parametrize("path", sorted(glob.glob(os.path.join(SCENARIO_DIR, "*.json"))))
def test_shipped_scenarios_validate(path):
    config = ScenarioConfig.from_file(path)
    with open(path, encoding="utf-8") as fh:
        assert config.name == json.load(fh)["name"]
