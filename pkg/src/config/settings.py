"""Configuration management for the monogamy toolkit."""
import json
import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional

from dotenv import load_dotenv

from src.errors import ConfigError, ParseError


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances shared by the dense linear algebra."""
    herm: float = 1e-9
    psd: float = 1e-9
    tr: float = 1e-10
    eig: float = 1e-9
    rec: float = 1e-9
    det: float = 1e-10
    rank: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


@dataclass
class RoofSettings:
    """Roof optimizer fields of a run configuration (None = derive from rank)."""
    ensemble_size: Optional[int] = None
    restarts: int = 20
    max_iterations: int = 2000
    step_tolerance: float = 1e-10
    value_tolerance: float = 1e-10


@dataclass
class RunConfig:
    """Settings for one CLI invocation."""
    seed: int = 20240101
    tolerance: float = 1e-6
    samples: int = 1000
    roof: RoofSettings = field(default_factory=RoofSettings)
    output: str = 'json'
    threads: int = 1
    tolerances: Tolerances = DEFAULT_TOLERANCES

    def validate(self) -> 'RunConfig':
        """Check the invariants; raise ConfigError on the first violation."""
        if self.samples < 1:
            raise ConfigError("samples must be >= 1")
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")
        if self.roof.restarts < 1 or self.roof.max_iterations < 1:
            raise ConfigError("roof restarts and max_iterations must be >= 1")
        if self.roof.ensemble_size is not None and self.roof.ensemble_size < 1:
            raise ConfigError("roof ensemble_size must be >= 1")
        if self.tolerance <= 0:
            raise ConfigError("tolerance must be > 0")
        if self.output not in ('json', 'csv'):
            raise ConfigError(f"output must be 'json' or 'csv', got {self.output!r}")
        return self

    def merged(self, overrides: Dict[str, Any]) -> 'RunConfig':
        """
        Return a copy with top-level and roof fields replaced.

        Args:
            overrides: Mapping of field name to value; None values are ignored.
                The key 'roof' may hold a mapping of RoofSettings fields.
        """
        top = {f.name for f in fields(self)} - {'roof', 'tolerances'}
        roof_names = {f.name for f in fields(RoofSettings)}
        roof_updates = {}
        top_updates = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key == 'roof':
                if not isinstance(value, dict):
                    raise ConfigError("'roof' must be an object")
                unknown = set(value) - roof_names
                if unknown:
                    raise ConfigError(f"unknown roof keys: {sorted(unknown)}")
                roof_updates.update({k: v for k, v in value.items() if v is not None})
            elif key in top:
                top_updates[key] = value
            elif key in roof_names:
                roof_updates[key] = value
            else:
                raise ConfigError(f"unknown configuration key: {key!r}")
        return replace(self, roof=replace(self.roof, **roof_updates), **top_updates)


def load_run_config(path: Path, base: RunConfig) -> RunConfig:
    """
    Read a RunConfig JSON file on top of a base configuration.

    Args:
        path: JSON file in the same dialect as StateFile (a single object)
        base: Defaults to override

    Returns:
        Validated RunConfig
    """
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, path=str(path), line=e.lineno)
    if not isinstance(data, dict):
        raise ParseError("config must be a JSON object", path=str(path), line=1)
    return base.merged(data).validate()


class Config:
    """Application configuration."""

    def __init__(self, env_file: Optional[Path] = None):
        """
        Initialize configuration.

        Args:
            env_file: Path to .env file. If None, looks in current directory.
        """
        if env_file is None:
            env_file = Path.cwd() / '.env'

        if env_file.exists():
            load_dotenv(env_file)

        try:
            self.seed = int(os.getenv('QMONO_SEED', '20240101'))
            self.tolerance = float(os.getenv('QMONO_TOLERANCE', '1e-6'))
            self.threads = int(os.getenv('QMONO_THREADS', '1'))
            self.samples = int(os.getenv('QMONO_SAMPLES', '1000'))

            defaults = Tolerances()
            self.tolerances = Tolerances(
                herm=float(os.getenv('QMONO_TAU_HERM', defaults.herm)),
                psd=float(os.getenv('QMONO_TAU_PSD', defaults.psd)),
                tr=float(os.getenv('QMONO_TAU_TR', defaults.tr)),
                eig=float(os.getenv('QMONO_TAU_EIG', defaults.eig)),
                rec=float(os.getenv('QMONO_TAU_REC', defaults.rec)),
                det=float(os.getenv('QMONO_TAU_DET', defaults.det)),
                rank=float(os.getenv('QMONO_TAU_RANK', defaults.rank)),
            )
        except ValueError as e:
            raise ConfigError(f"invalid numeric environment setting: {e}")

        # Logging
        self.log_level = os.getenv('LOG_LEVEL', 'INFO')
        self.log_file = os.getenv('QMONO_LOG_FILE')

        # Verification history
        self.db_path = Path(os.getenv('QMONO_HISTORY_DB', str(Path.cwd() / 'data' / 'verify_history.db')))

    def run_config(self) -> RunConfig:
        """Default RunConfig derived from the environment."""
        return RunConfig(
            seed=self.seed,
            tolerance=self.tolerance,
            samples=self.samples,
            threads=self.threads,
            tolerances=self.tolerances,
        ).validate()

    def __repr__(self) -> str:
        return (
            f"Config("
            f"seed={self.seed}, "
            f"threads={self.threads}, "
            f"tolerance={self.tolerance}, "
            f"db={self.db_path}"
            f")"
        )


# Singleton instance
_config: Optional[Config] = None


def get_config(env_file: Optional[Path] = None) -> Config:
    """
    Get the application configuration.

    Args:
        env_file: Path to .env file. Only used on first call.

    Returns:
        Config instance
    """
    global _config
    if _config is None:
        _config = Config(env_file)
    return _config


def reset_config() -> None:
    """Drop the cached configuration so the next get_config() re-reads the environment."""
    global _config
    _config = None
