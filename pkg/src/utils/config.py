"""
Application configuration management for SkewBetti.

Handles default limits, field and method choices, and fuzzing bounds.
Settings are persisted to ~/.skewbetti/config.json.
"""

import json
import logging
import os
from pathlib import Path
from typing import Optional

from src.utils.constants import DEFAULT_MAX_VERTICES

logger = logging.getLogger(__name__)


class Config:
    """Manages application settings with JSON file persistence."""

    _APP_DIR = Path.home() / ".skewbetti"
    _CONFIG_FILE = _APP_DIR / "config.json"

    _defaults = {
        "max_vertices": DEFAULT_MAX_VERTICES,
        "threads": 1,
        "field": "gf2",             # "gf2", "rational", "both"
        "method": "all",            # "hochster", "nagel-reiner", "corso-nagel", "all"
        "fuzz_seed": 1,
        "fuzz_count": 100,
        "fuzz_max_rows": 6,
        "fuzz_max_cols": 6,
    }

    _instance: Optional["Config"] = None
    _settings: dict

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._settings = {}
            cls._instance._load()
        return cls._instance

    def _load(self):
        """Load settings from disk, merging with defaults."""
        if self._CONFIG_FILE.exists():
            try:
                with open(self._CONFIG_FILE) as f:
                    saved = json.load(f)
                # Merge: defaults first, then saved values override
                self._settings = {**self._defaults, **saved}
            except (json.JSONDecodeError, IOError) as e:
                logger.warning(f"Ignoring unreadable config {self._CONFIG_FILE}: {e}")
                self._settings = dict(self._defaults)
        else:
            self._settings = dict(self._defaults)

    def save(self):
        """Persist current settings to disk."""
        self._APP_DIR.mkdir(parents=True, exist_ok=True)
        with open(self._CONFIG_FILE, "w") as f:
            json.dump(self._settings, f, indent=2)

    def get(self, key: str, default=None):
        """Get a setting value."""
        return self._settings.get(key, default)

    def set(self, key: str, value):
        """Set a setting value and save."""
        self._settings[key] = value
        self.save()

    @classmethod
    def reset(cls):
        """Drop the cached instance so the next access re-reads disk."""
        cls._instance = None

    @classmethod
    def get_max_vertices(cls) -> int:
        """Get the vertex ceiling for oracle runs from env or config."""
        instance = cls()
        # Environment variable takes priority
        env_value = os.environ.get("SKEWBETTI_MAX_VERTICES", "")
        if env_value:
            try:
                return int(env_value)
            except ValueError:
                logger.warning(f"SKEWBETTI_MAX_VERTICES={env_value!r} is not an integer")
        return int(instance.get("max_vertices", DEFAULT_MAX_VERTICES))

    @classmethod
    def get_app_dir(cls) -> Path:
        """Get the application data directory."""
        instance = cls()
        return instance._APP_DIR
