"""
Unit tests for configuration and logging setup
"""

import logging
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from utils.config import DEFAULTS, get_config, load_config, reset_config, setting
from utils.logger import RunLogger, setup_logger


class TestConfig:
    """YAML loading with defaults and ${VAR} substitution"""

    def teardown_method(self):
        reset_config()

    def test_repository_config(self):
        config = load_config()
        assert config["oracle"]["max_length"] == 12
        assert config["sampler"]["state_budget"] == 200000

    def test_missing_file_uses_defaults(self, tmp_path):
        config = load_config(str(tmp_path / "absent.yaml"))
        assert config == DEFAULTS

    def test_partial_override(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("oracle:\n  max_length: 6\n", encoding="utf-8")
        load_config(str(path))
        assert setting("oracle", "max_length") == 6
        assert setting("oracle", "max_words") == DEFAULTS["oracle"]["max_words"]

    def test_env_substitution(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SHUFFLEPD_TEST_DIR", "/tmp/shufflepd-logs")
        path = tmp_path / "config.yaml"
        path.write_text('logging:\n  file: "${SHUFFLEPD_TEST_DIR}/run.log"\n', encoding="utf-8")
        load_config(str(path))
        assert setting("logging", "file") == "/tmp/shufflepd-logs/run.log"

    def test_env_path(self, tmp_path, monkeypatch):
        path = tmp_path / "alt.yaml"
        path.write_text("derive:\n  state_budget: 42\n", encoding="utf-8")
        monkeypatch.setenv("SHUFFLEPD_CONFIG", str(path))
        reset_config()
        assert get_config()["derive"]["state_budget"] == 42

    def test_explicit_override_wins(self):
        assert setting("oracle", "max_length", 3) == 3


class TestLogger:
    """Logger setup"""

    def test_single_stream_handler(self):
        log = setup_logger("shufflepd-test")
        setup_logger("shufflepd-test")
        streams = [h for h in log.handlers if getattr(h, "_shufflepd_stream", False)]
        assert len(streams) == 1

    def test_level(self):
        assert setup_logger("shufflepd-test-level", level="DEBUG").level == logging.DEBUG

    def test_file_handler(self, tmp_path):
        log_file = tmp_path / "logs" / "run.log"
        log = setup_logger("shufflepd-test-file", log_file=str(log_file))
        RunLogger(log).log_check("smoke", True, "ok")
        for handler in log.handlers:
            handler.flush()
        assert "CHECK smoke: PASS - ok" in log_file.read_text(encoding="utf-8")


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
