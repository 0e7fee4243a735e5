"""
Shared fixtures: every test gets a private config directory.
"""

import pytest

from src.utils.config import Config


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point Config at a temporary directory and drop the cached instance."""
    app_dir = tmp_path / "skewbetti"
    monkeypatch.setattr(Config, "_APP_DIR", app_dir)
    monkeypatch.setattr(Config, "_CONFIG_FILE", app_dir / "config.json")
    monkeypatch.delenv("SKEWBETTI_MAX_VERTICES", raising=False)
    Config.reset()
    yield app_dir
    Config.reset()
