import json
import os

from pydantic import ValidationError

from models.errors import ConfigError
from models.experiment import ExperimentConfig


def configs_dir() -> str:
    # Get the absolute path to the project root
    base_dir = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
    return os.path.join(base_dir, "configs")


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


def parse_config(text: str, origin: str = "<config>") -> ExperimentConfig:
    """
    Validates experiment configuration JSON.

    Raises:
        ConfigError: If the text is not JSON or does not satisfy the schema.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{origin}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from e
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{origin}: {_first_error(e)}") from e


def load_config(path: str) -> ExperimentConfig:
    """
    Loads an experiment configuration file.

    Args:
        path (str): Path of the JSON config file.

    Returns:
        ExperimentConfig: The validated configuration.
    """
    try:
        with open(path, "r", encoding="utf-8") as file:
            text = file.read()
    except FileNotFoundError:
        raise ConfigError(f"Config file '{path}' not found")
    except UnicodeDecodeError as e:
        raise ConfigError(f"{path}: config is not UTF-8 text") from e
    except OSError as e:
        raise ConfigError(f"An error occurred while reading the config file: {str(e)}") from e
    return _resolve_load_paths(parse_config(text, origin=path), os.path.dirname(os.path.abspath(path)))


def _resolve_load_paths(config: ExperimentConfig, base_dir: str) -> ExperimentConfig:
    # trace and pcap paths in a config file are relative to that file
    load = config.load
    for field in ("trace", "pcap"):
        path = getattr(load, field)
        if path is not None and not os.path.isabs(path):
            load = load.model_copy(update={field: os.path.normpath(os.path.join(base_dir, path))})
    return config.model_copy(update={"load": load})


def load_example_config(name: str) -> ExperimentConfig:
    """
    Loads one of the example configs shipped in the 'configs' folder.

    Args:
        name (str): Config name with or without the '.json' suffix, e.g. 'timer_delay_sweep'.
    """
    filename = name if name.endswith(".json") else f"{name}.json"
    filepath = os.path.join(configs_dir(), filename)
    if not os.path.isfile(filepath):
        raise ConfigError(f"Example config '{filename}' not found in {configs_dir()}")
    return load_config(filepath)
