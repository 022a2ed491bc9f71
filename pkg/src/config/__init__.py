"""Configuration package."""
from .settings import (
    DEFAULT_TOLERANCES,
    Config,
    RoofSettings,
    RunConfig,
    Tolerances,
    get_config,
    load_run_config,
    reset_config,
)

__all__ = [
    'Config',
    'DEFAULT_TOLERANCES',
    'RoofSettings',
    'RunConfig',
    'Tolerances',
    'get_config',
    'load_run_config',
    'reset_config',
]
