"""
Configuration manager for the k-bonacci toolkit.
Loads the shipped JSON defaults, merges an optional user file over them and
applies environment overrides.
"""
import copy
import json
import logging
import os
from typing import Any, Dict, Optional

from core.errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))),
    "resources", "config", "default_config.json",
)

MAX_ORDER_CAP_ENV = "KBONACCI_MAX_ORDER_CAP"

POSITIVE_INTEGER_KEYS = (
    "detection.max_order_cap",
    "detection.default_max_order",
    "spectrum.default_n_max",
    "quasi.default_n_max",
    "table.default_r_max",
)

BUILTIN_DEFAULTS: Dict[str, Any] = {
    "detection": {
        "max_order_cap": 64,
        "default_max_order": 16,
    },
    "spectrum": {
        "default_n_max": 10,
    },
    "quasi": {
        "default_c": "0",
        "default_n_max": 20,
    },
    "table": {
        "default_r_max": 5,
    },
    "output": {
        "default_format": "json",
    },
    "logging": {
        "level": "WARNING",
        "file": None,
    },
}


class ConfigManager:
    """
    Layered configuration: built-in defaults, shipped file, user file, environment.

    Attributes:
        config (dict): The merged configuration
    """

    def __init__(self, user_config_path: Optional[str] = None,
                 default_config_path: str = DEFAULT_CONFIG_PATH,
                 environ: Optional[Dict[str, str]] = None):
        """
        Load and merge all configuration layers.

        Args:
            user_config_path (str, optional): JSON file merged over the defaults
            default_config_path (str, optional): Shipped defaults file
            environ (dict, optional): Environment mapping; defaults to os.environ
        """
        self.config = copy.deepcopy(BUILTIN_DEFAULTS)
        self._environ = os.environ if environ is None else environ

        if os.path.exists(default_config_path):
            self._merge_configs(self.config, self._read(default_config_path))
            logger.debug(f"Configuration loaded from {default_config_path}")
        else:
            logger.warning(f"Configuration file {default_config_path} not found, using built-in defaults")

        if user_config_path is not None:
            if not os.path.exists(user_config_path):
                raise ConfigError(f"configuration file {user_config_path} not found")
            self._merge_configs(self.config, self._read(user_config_path))
            logger.info(f"User configuration merged from {user_config_path}")

        self._apply_environment()
        self._validate()

    @staticmethod
    def _read(path: str) -> Dict[str, Any]:
        try:
            with open(path, "r", encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise ConfigError(f"cannot read configuration {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigError(f"configuration {path} must be a JSON object")
        return data

    def _merge_configs(self, base_config: Dict, overlay_config: Dict):
        """
        Recursively merge overlay_config into base_config.

        Args:
            base_config (dict): The base configuration to merge into
            overlay_config (dict): The configuration to overlay
        """
        for key, value in overlay_config.items():
            if key in base_config and isinstance(base_config[key], dict) and isinstance(value, dict):
                self._merge_configs(base_config[key], value)
            else:
                base_config[key] = value

    def _apply_environment(self):
        raw = self._environ.get(MAX_ORDER_CAP_ENV)
        if raw is None:
            return
        try:
            cap = int(raw)
        except ValueError as e:
            raise ConfigError(f"{MAX_ORDER_CAP_ENV} must be an integer, got {raw!r}") from e
        if cap < 1:
            raise ConfigError(f"{MAX_ORDER_CAP_ENV} must be >= 1, got {cap}")
        if not isinstance(self.config.get("detection"), dict):
            raise ConfigError("detection must be a JSON object")
        self.config["detection"]["max_order_cap"] = cap
        logger.debug(f"Detection cap set to {cap} from {MAX_ORDER_CAP_ENV}")

    def _validate(self):
        for path in POSITIVE_INTEGER_KEYS:
            value = self.get(path)
            if isinstance(value, bool) or not isinstance(value, int):
                raise ConfigError(f"{path} must be an integer, got {value!r}")
            if value < 1:
                raise ConfigError(f"{path} must be >= 1, got {value}")

    def get(self, path: str, default: Any = None) -> Any:
        """
        Look up a dotted key such as "detection.max_order_cap".

        Args:
            path (str): Dotted key
            default: Value returned when the key is missing

        Returns:
            The configured value
        """
        node: Any = self.config
        for part in path.split("."):
            if not isinstance(node, dict) or part not in node:
                return default
            node = node[part]
        return node

    @property
    def max_order_cap(self) -> int:
        return self.get("detection.max_order_cap")
