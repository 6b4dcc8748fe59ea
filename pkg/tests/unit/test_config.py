"""
Tests for configuration system.
"""
import logging
from pathlib import Path

import pytest

from config import (
    Config,
    ConfigError,
    load_config,
    get_logging_config,
    get_numeric_config,
    get_runtime_config,
)


@pytest.mark.unit
class TestConfig:
    """Test configuration loading and management."""

    def test_config_initialization(self):
        """Test Config class initialization with default values."""
        config = Config()
        assert config.threads == 1
        assert config.seed == 20240601
        assert config.rank_cutoff == 1e-10
        assert config.margin == 0.1
        assert config.max_degree == 600
        assert config.log_dir is None
        assert config.log_level == logging.WARNING

    def test_config_from_env(self, monkeypatch, tmp_path):
        """Test Config initialization from environment variables."""
        monkeypatch.setenv("ESSNORM_THREADS", "8")
        monkeypatch.setenv("ESSNORM_SEED", "42")
        monkeypatch.setenv("ESSNORM_RANK_CUTOFF", "1e-8")
        monkeypatch.setenv("ESSNORM_MARGIN", "0.25")
        monkeypatch.setenv("ESSNORM_MAX_DEGREE", "120")
        monkeypatch.setenv("ESSNORM_LOG_DIR", str(tmp_path / "logs"))
        monkeypatch.setenv("ESSNORM_LOG_LEVEL", "debug")

        config = Config()
        assert config.threads == 8
        assert config.seed == 42
        assert config.rank_cutoff == 1e-8
        assert config.margin == 0.25
        assert config.max_degree == 120
        assert config.log_dir == tmp_path / "logs"
        assert config.log_level == logging.DEBUG

    def test_load_config_from_dotenv(self, tmp_path, monkeypatch):
        """Test loading configuration from .env file."""
        env_file = tmp_path / ".env"
        env_file.write_text("ESSNORM_THREADS=4\nESSNORM_MAX_DEGREE=50\n")

        config = load_config(env_file_path=env_file)
        assert config.threads == 4
        assert config.max_degree == 50

    def test_load_config_without_dotenv(self, tmp_path):
        """Test that a missing .env file falls back to defaults."""
        config = load_config(env_file_path=tmp_path / "missing.env")
        assert config.threads == 1

    @pytest.mark.parametrize(
        "name,value",
        [
            ("ESSNORM_THREADS", "many"),
            ("ESSNORM_THREADS", "0"),
            ("ESSNORM_MARGIN", "-1"),
            ("ESSNORM_RANK_CUTOFF", "tiny"),
            ("ESSNORM_LOG_LEVEL", "LOUD"),
        ],
    )
    def test_invalid_values_raise(self, monkeypatch, name, value):
        """Test that unusable values raise ConfigError naming the variable."""
        monkeypatch.setenv(name, value)
        with pytest.raises(ConfigError, match=name):
            Config()

    def test_get_numeric_config(self):
        """Test getting numeric configuration."""
        numeric = get_numeric_config(Config())
        assert numeric == {"rank_cutoff": 1e-10, "margin": 0.1, "max_degree": 600}

    def test_get_runtime_config(self, monkeypatch):
        """Test getting runtime configuration."""
        monkeypatch.setenv("ESSNORM_THREADS", "3")
        runtime = get_runtime_config(Config())
        assert runtime == {"threads": 3, "seed": 20240601}

    def test_get_logging_config(self, monkeypatch, tmp_path):
        """Test that logging config matches setup_logging keywords."""
        monkeypatch.setenv("ESSNORM_LOG_DIR", str(tmp_path))
        logging_config = get_logging_config(Config())
        assert logging_config["log_dir"] == Path(tmp_path)
        assert logging_config["log_level"] == logging.WARNING
