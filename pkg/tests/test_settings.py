import pytest

from gas.errors import ConfigurationError
from gas.registry import Registry
from gas.settings import (
    DEFAULT_CONFIG_PATH,
    config_path,
    load_run_file,
    load_settings,
    load_verb_defaults,
    load_yaml,
    parse_key_values,
)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ("GAS_CONFIG", "GAS_OUTPUT_DIR", "GAS_WORKERS", "GAS_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def config_file(tmp_path, monkeypatch):
    path = tmp_path / "experiments.yaml"
    path.write_text(
        "settings:\n"
        "  output_dir: out\n"
        "  workers: 2\n"
        "verbs:\n"
        "  price:\n"
        "    K: 5\n"
        "    estimators: [MC]\n"
    )
    monkeypatch.setenv("GAS_CONFIG", str(path))
    return path


class TestRegistry:
    def setup_method(self):
        self.registry = Registry(kind="verb")

    def test_lookup_ignores_case(self):
        self.registry.register("Price", 1)
        assert self.registry.get("price") == 1
        assert "PRICE" in self.registry
        assert self.registry.get("heatmap") is None

    def test_duplicate_names(self):
        self.registry.register("eig")
        with pytest.raises(ValueError, match="Verb 'EIG' is already registered"):
            self.registry.register("EIG")

    def test_unregister(self):
        self.registry.register("Ridge", 3)
        self.registry.unregister("ridge")
        assert len(self.registry) == 0
        self.registry.register("ridge", 4)
        assert self.registry.names() == ["ridge"]


def test_bundled_config_is_default():
    assert config_path() == DEFAULT_CONFIG_PATH
    settings = load_settings()
    assert settings == {"output_dir": "results", "workers": 1, "log_level": "INFO"}


def test_bundled_verb_defaults():
    defaults = load_verb_defaults("price")
    assert defaults["estimators"] == ["MC", "PCE", "AS_PCE", "GAS_PCE"]
    assert defaults["K"] == 40
    assert load_verb_defaults("pce-dump") == {}


def test_config_file_override(config_file):
    assert config_path() == config_file
    settings = load_settings()
    assert settings["output_dir"] == "out"
    assert settings["workers"] == 2
    assert load_verb_defaults("price") == {"K": 5, "estimators": ["MC"]}


def test_environment_wins(config_file, monkeypatch):
    monkeypatch.setenv("GAS_OUTPUT_DIR", "/tmp/gas")
    monkeypatch.setenv("GAS_WORKERS", "4")
    monkeypatch.setenv("GAS_LOG_LEVEL", "debug")
    assert load_settings() == {"output_dir": "/tmp/gas", "workers": 4, "log_level": "DEBUG"}


def test_missing_config_file(tmp_path, monkeypatch):
    monkeypatch.setenv("GAS_CONFIG", str(tmp_path / "missing.yaml"))
    assert load_settings()["output_dir"] == "results"
    assert load_verb_defaults("price") == {}
    with pytest.raises(ConfigurationError):
        load_yaml(tmp_path / "missing.yaml")


def test_config_must_be_a_mapping(tmp_path, monkeypatch):
    path = tmp_path / "list.yaml"
    path.write_text("- a\n- b\n")
    with pytest.raises(ConfigurationError):
        load_yaml(path)
    monkeypatch.setenv("GAS_CONFIG", str(path))
    assert load_settings()["workers"] == 1


def test_key_value_lines():
    text = "# run\nK = 5\nestimators = [MC, GAS_PCE]\nmodel_params.rho = -0.5\n\nlabel =\n"
    assert parse_key_values(text) == {
        "K": 5,
        "estimators": ["MC", "GAS_PCE"],
        "model_params": {"rho": -0.5},
        "label": None,
    }
    with pytest.raises(ConfigurationError):
        parse_key_values("K 5")
    with pytest.raises(ConfigurationError):
        parse_key_values("= 5")


def test_run_file_formats(tmp_path):
    yaml_file = tmp_path / "run.yaml"
    yaml_file.write_text("K: 3\nmodel: ridge\n")
    plain_file = tmp_path / "run.cfg"
    plain_file.write_text("K = 3\nmodel = ridge\n")
    assert load_run_file(yaml_file) == load_run_file(plain_file) == {"K": 3, "model": "ridge"}

    empty = tmp_path / "empty.cfg"
    empty.write_text("")
    assert load_run_file(empty) == {}
    with pytest.raises(ConfigurationError):
        load_run_file(tmp_path / "missing.cfg")
