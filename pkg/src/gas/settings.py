import logging
import os
from pathlib import Path

import yaml

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "experiments.yaml"


def config_path():
    """Path of the experiments YAML file (``GAS_CONFIG`` overrides the bundled one)."""
    override = os.environ.get("GAS_CONFIG")
    if override:
        return Path(override)
    return DEFAULT_CONFIG_PATH


def load_yaml(path):
    """Load a YAML mapping from ``path``.

    Args:
        path: File to read

    Returns:
        dict: The parsed mapping (empty if the file is empty)

    Raises:
        ConfigurationError: If the file is missing or does not hold a mapping
    """
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Configuration file not found: {path}")
    with path.open("r", encoding="utf-8") as f:
        data = yaml.safe_load(f) or {}
    if not isinstance(data, dict):
        raise ConfigurationError(f"Configuration file {path} must contain a mapping")
    return data


def load_settings():
    """Load global settings from environment variables or the config file.

    Environment variables win; anything they leave unset is taken from the
    ``settings`` section of the experiments YAML.
    """
    settings = {
        "output_dir": os.environ.get("GAS_OUTPUT_DIR"),
        "workers": os.environ.get("GAS_WORKERS"),
        "log_level": os.environ.get("GAS_LOG_LEVEL"),
    }

    try:
        path = config_path()
        if path.exists():
            file_settings = load_yaml(path).get("settings", {}) or {}
            for key, value in file_settings.items():
                if settings.get(key) is None:
                    settings[key] = value
        else:
            logger.debug("No experiments.yaml found at %s", path)
    except ConfigurationError as e:
        logger.error(f"Error loading settings from config: {str(e)}")

    settings["output_dir"] = settings.get("output_dir") or "results"
    settings["workers"] = int(settings.get("workers") or 1)
    settings["log_level"] = str(settings.get("log_level") or "INFO").upper()
    return settings


def load_verb_defaults(verb):
    """Return the default flag values for a CLI verb from the experiments YAML."""
    path = config_path()
    if not path.exists():
        logger.debug("No experiments.yaml found at %s", path)
        return {}
    verbs = load_yaml(path).get("verbs", {}) or {}
    return dict(verbs.get(verb, {}) or {})


def parse_key_values(text, source="<text>"):
    """Parse ``key = value`` lines into a mapping.

    Values are read as YAML scalars or flow lists; ``#`` starts a comment and a
    dotted key such as ``model_params.theta`` fills a nested mapping.
    """
    data = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{source}:{number}: expected 'key = value', got '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigurationError(f"{source}:{number}: missing key")
        try:
            parsed = yaml.safe_load(value) if value else None
        except yaml.YAMLError as e:
            raise ConfigurationError(
                f"{source}:{number}: cannot parse value '{value}': {e}"
            ) from e
        if "." in key:
            outer, inner = key.split(".", 1)
            data.setdefault(outer, {})[inner] = parsed
        else:
            data[key] = parsed
    return data


def load_run_file(path):
    """Flag values for one run, from a YAML mapping or from ``key = value`` lines."""
    path = Path(path)
    if not path.exists():
        raise ConfigurationError(f"Configuration file not found: {path}")
    text = path.read_text(encoding="utf-8")
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError:
        data = None
    if isinstance(data, dict):
        return data
    if not text.strip():
        return {}
    logger.debug(f"Reading {path} as key = value lines")
    return parse_key_values(text, path)
