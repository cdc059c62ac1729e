"""
Configuration loading
YAML file + .env, with ${VAR} substitution from the environment
"""

import copy
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from utils.logger import logger

CONFIG_ENV_VAR = "SHUFFLEPD_CONFIG"
DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "config.yaml"

DEFAULTS: Dict[str, Any] = {
    'oracle': {
        'max_length': 12,
        'max_words': 1_000_000,
    },
    'derive': {
        'state_budget': 1_000_000,
    },
    'combinatorics': {
        'enumeration_guard': 10_000_000,
        'max_n': 5000,
    },
    'sampler': {
        'workers': 1,
        'state_budget': 200_000,
        'default_samples': 1000,
    },
    'logging': {
        'level': 'INFO',
        'file': None,
        'max_size_mb': 10,
        'backup_count': 5,
    },
}

_cached: Optional[Dict[str, Any]] = None


def _replace_env_vars(config: Any) -> Any:
    """Replace ${VAR} with environment variables"""
    if isinstance(config, str):
        for var in re.findall(r'\$\{(\w+)\}', config):
            config = config.replace(f'${{{var}}}', os.getenv(var, ''))
        return config
    if isinstance(config, dict):
        return {k: _replace_env_vars(v) for k, v in config.items()}
    if isinstance(config, list):
        return [_replace_env_vars(item) for item in config]
    return config


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    Load configuration

    Args:
        path: Explicit config path; falls back to $SHUFFLEPD_CONFIG,
            then config/config.yaml

    Returns:
        Config dictionary with every default filled in
    """
    global _cached
    load_dotenv()

    config_path = Path(path or os.getenv(CONFIG_ENV_VAR) or DEFAULT_CONFIG_PATH)
    if not config_path.exists():
        logger.warning(f"Config not found: {config_path}, using defaults")
        _cached = copy.deepcopy(DEFAULTS)
        return _cached

    with open(config_path, 'r', encoding='utf-8') as f:
        raw = yaml.safe_load(f) or {}

    _cached = _merge(DEFAULTS, _replace_env_vars(raw))
    logger.debug(f"Loaded config: {config_path}")
    return _cached


def get_config() -> Dict[str, Any]:
    """Cached configuration, loading it on first use"""
    if _cached is None:
        return load_config()
    return _cached


def reset_config():
    global _cached
    _cached = None


def setting(section: str, key: str, override: Any = None) -> Any:
    """Explicit override if given, else the configured value"""
    if override is not None:
        return override
    return get_config().get(section, {}).get(key, DEFAULTS[section][key])
