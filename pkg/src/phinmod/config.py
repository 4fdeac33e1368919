"""Persistent settings for the workbench.

Defaults describe the desk-scale setting: the model field Q(2^(1/6)),
whose value group (1/6)Z realizes every /2 and /3 valuation the catalog
needs, and the randomized certification campaign sizes. Values read from
``config.json`` are checked against ``SETTING_RULES``; a bad stored value
is replaced by its default with a warning.
"""

import json
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Tuple

from sympy import isprime

from .error_handler import ConfigError
from .paths import user_dir

logger = logging.getLogger('phinmod')

CONFIG_FILENAME = "config.json"

DEFAULT_CONFIG: Dict[str, Any] = {
    "prime": 2,
    "ramification": 6,
    "oracle_samples": 200,
    "certify_samples": 2000,
    "certify_seed": 20140101,
    "certify_workers": 1,
    "max_s": 8,
    "log_level": "WARNING",
    "version": "1.0"
}


def _int_rule(check: Callable[[int], bool], text: str) -> Tuple[Callable[[Any], bool], str]:
    return (lambda v: isinstance(v, int) and not isinstance(v, bool) and check(v)), text


SETTING_RULES: Dict[str, Tuple[Callable[[Any], bool], str]] = {
    "prime": _int_rule(isprime, "a prime number"),
    "ramification": _int_rule(lambda v: v >= 1, "a positive integer"),
    "oracle_samples": _int_rule(lambda v: v >= 0, "a non-negative integer"),
    "certify_samples": _int_rule(lambda v: v >= 0, "a non-negative integer"),
    "certify_seed": _int_rule(lambda v: v >= 0, "a non-negative integer"),
    "certify_workers": _int_rule(lambda v: v >= 1, "a positive integer"),
    "max_s": _int_rule(lambda v: v >= 2, "an integer >= 2"),
    "log_level": (lambda v: v in ("DEBUG", "INFO", "WARNING", "ERROR"), "a logging level name"),
}


def setting_errors(values: Dict[str, Any]) -> List[str]:
    """Describe every known setting in ``values`` that breaks its rule."""
    errors = []
    for key, value in values.items():
        rule = SETTING_RULES.get(key)
        if rule is not None and not rule[0](value):
            errors.append(f"{key} must be {rule[1]}, got {value!r}")
    return errors


class ConfigManager:
    """Settings stored as ``config.json`` in the per-user config directory."""

    def __init__(self):
        self.config_dir = self._get_config_dir()
        self.config_file = self.config_dir / CONFIG_FILENAME
        self.config = self._load_config()

    def _get_config_dir(self) -> Path:
        """Directory holding ``config.json``; tests replace this hook."""
        return user_dir("config")

    def _load_config(self) -> Dict[str, Any]:
        """Stored settings merged over the defaults.

        Unknown keys are kept as written. Known keys with a bad value fall
        back to the default.
        """
        if not self.config_file.exists():
            return DEFAULT_CONFIG.copy()
        try:
            stored = json.loads(self.config_file.read_text(encoding='utf-8'))
        except (json.JSONDecodeError, OSError) as e:
            logger.warning(f"Ignoring unreadable {self.config_file}: {e}")
            return DEFAULT_CONFIG.copy()
        if not isinstance(stored, dict):
            logger.warning(f"Ignoring {self.config_file}: top level is not an object")
            return DEFAULT_CONFIG.copy()
        merged = {**DEFAULT_CONFIG, **stored}
        for key in list(merged):
            errors = setting_errors({key: merged[key]})
            if errors:
                logger.warning(f"{errors[0]}; using {DEFAULT_CONFIG[key]!r}")
                merged[key] = DEFAULT_CONFIG[key]
        return merged

    def save(self) -> None:
        try:
            self.config_file.write_text(json.dumps(self.config, indent=2) + "\n", encoding='utf-8')
        except OSError as e:
            logger.warning(f"Could not write {self.config_file}: {e}")

    def get(self, key: str, default: Any = None) -> Any:
        return self.config.get(key, default)

    def set(self, key: str, value: Any) -> None:
        """Store one setting.

        Raises:
            ConfigError: if the value breaks the setting's rule
        """
        self.update({key: value})

    def update(self, updates: Dict[str, Any]) -> None:
        """Store several settings at once; nothing is stored if any is bad.

        Args:
            updates: Mapping of setting names to new values

        Raises:
            ConfigError: listing every rejected value
        """
        errors = setting_errors(updates)
        if errors:
            raise ConfigError(errors)
        self.config.update(updates)
        self.save()

    def reset_to_defaults(self) -> None:
        self.config = DEFAULT_CONFIG.copy()
        self.save()

    def field_defaults(self) -> Dict[str, int]:
        """The model field as a ``{"prime", "ramification"}`` document."""
        return {"prime": self.config["prime"], "ramification": self.config["ramification"]}

    def certify_defaults(self) -> Dict[str, int]:
        """Campaign settings used when the command line leaves them out."""
        return {
            "samples": self.config["certify_samples"],
            "seed": self.config["certify_seed"],
            "workers": self.config["certify_workers"],
            "oracle_samples": self.config["oracle_samples"],
        }

    def get_config_path(self) -> Path:
        return self.config_file
