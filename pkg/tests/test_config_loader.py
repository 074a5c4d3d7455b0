import json

import pytest

from models.errors import ConfigError
from models.nic import CombinedMode
from utils.config_loader import load_config, load_example_config, parse_config

SHIPPED = ["minimal_run", "timer_delay_sweep", "counter_load_scaling", "cause_ratio_grid", "replay_bursty", "replay_continuous"]


@pytest.mark.parametrize("name", SHIPPED)
def test_load_example_config(name):
    config = load_example_config(name)
    assert config.workload.required_compute > 0


def test_timer_sweep_config_shape():
    config = load_example_config("timer_delay_sweep.json")
    assert isinstance(config.nic.mode, CombinedMode)
    assert config.load.poisson.count >= 5000
    assert len(config.sweep.timer_delay) >= 8
    assert config.sweep.timer_delay == sorted(config.sweep.timer_delay)


def test_missing_example_config():
    with pytest.raises(ConfigError, match="not found"):
        load_example_config("no_such_config")


def test_parse_config_reports_json_position():
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("{not json")


def test_parse_config_reports_first_schema_error():
    text = json.dumps({"load": {"uniform": {"period": 10, "count": 1}}, "nic": {"delays": {}}, "workload": {"required_compute": 1}})
    with pytest.raises(ConfigError, match="nic.delays"):
        parse_config(text, origin="x.json")


def test_load_config_missing_file(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(str(tmp_path / "absent.json"))


def test_load_config_rejects_non_utf8_bytes(tmp_path):
    path = tmp_path / "latin1.json"
    path.write_bytes(b'{"load": "\xff"}')
    with pytest.raises(ConfigError, match="not UTF-8"):
        load_config(str(path))


def test_load_config_rejects_duplicate_seeds(tmp_path):
    path = tmp_path / "seeds.json"
    data = {
        "load": {"uniform": {"period": 10, "count": 1}},
        "nic": {"delays": {"isr_constant": 1}},
        "workload": {"required_compute": 1},
        "seeds": [3, 3],
    }
    path.write_text(json.dumps(data), encoding="utf-8")
    with pytest.raises(ConfigError, match="distinct"):
        load_config(str(path))


def test_capture_paths_resolve_against_the_config_file():
    import os

    config = load_example_config("replay_bursty")
    assert os.path.isabs(config.load.pcap)
    assert os.path.isfile(config.load.pcap)
