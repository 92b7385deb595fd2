# core/settings.py
import copy
import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from core.errors import ValidationError
from core.linalg import MAX_PRIME, is_prime

logger = logging.getLogger(__name__)

ENV_PREFIX = "STABILIZER_"

DEFAULT_SETTINGS = {
    "field": {
        "prime": 2,
    },
    "generator": {
        "seed": 1,
        "max_degree": 4,  # top degree of random complexes
        "max_dim": 3,     # generators per degree
        "max_tail": 3,
    },
    "probe": {
        "max_level": 4,
        "max_degree": 5,
    },
    "verify": {
        "json_out": None,
        "report_log": "data/verification_log.json",
    },
    "logging": {
        "level": "INFO",
    },
}

# environment variable suffix -> (category, key, type)
ENV_KEYS = {
    "PRIME": ("field", "prime", int),
    "SEED": ("generator", "seed", int),
    "MAX_DEGREE": ("generator", "max_degree", int),
    "MAX_DIM": ("generator", "max_dim", int),
    "MAX_TAIL": ("generator", "max_tail", int),
    "PROBE_LEVEL": ("probe", "max_level", int),
    "PROBE_DEGREE": ("probe", "max_degree", int),
    "LOG_LEVEL": ("logging", "level", str),
    "REPORT_LOG": ("verify", "report_log", str),
}

_NON_NEGATIVE = [("generator", "max_degree"), ("generator", "max_dim"), ("generator", "max_tail"),
                 ("probe", "max_level"), ("probe", "max_degree")]


class Settings:
    def __init__(self, data: Optional[Dict[str, Dict[str, Any]]] = None):
        self.data = copy.deepcopy(DEFAULT_SETTINGS)
        for category, values in (data or {}).items():
            self.data.setdefault(category, {}).update(values)
        self.validate()

    @classmethod
    def load(cls, env_file: Optional[Path] = None) -> "Settings":
        """Defaults, then a .env file, then STABILIZER_* environment variables."""
        load_dotenv(dotenv_path=env_file, override=False)
        overrides: Dict[str, Dict[str, Any]] = {}
        for suffix, (category, key, kind) in ENV_KEYS.items():
            raw = os.getenv(ENV_PREFIX + suffix)
            if raw is None or raw == "":
                continue
            try:
                value = kind(raw)
            except ValueError:
                raise ValidationError(f"{ENV_PREFIX}{suffix}={raw!r} is not a valid {kind.__name__}")
            overrides.setdefault(category, {})[key] = value
        if overrides:
            logger.info("settings overridden from environment: %s", overrides)
        return cls(overrides)

    def validate(self) -> None:
        p = self.get("field", "prime")
        if not isinstance(p, int) or p >= MAX_PRIME or not is_prime(p):
            raise ValidationError(f"prime must be a prime number below {MAX_PRIME}, got {p!r}")
        for category, key in _NON_NEGATIVE:
            value = self.get(category, key)
            if not isinstance(value, int) or value < 0:
                raise ValidationError(f"{category}.{key} must be a non-negative integer, got {value!r}")

    def get(self, category: str, key: str, default: Any = None) -> Any:
        """
        Retrieves a setting from a category.
        Returns the default value if the category or key is not found.
        """
        return self.data.get(category, {}).get(key, default)

    def set(self, category: str, key: str, value: Any) -> None:
        """Command-line flags override both defaults and the environment."""
        if value is None:
            return
        self.data.setdefault(category, {})[key] = value
        self.validate()
