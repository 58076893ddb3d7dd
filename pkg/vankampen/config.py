from dataclasses import dataclass, asdict, replace
from typing      import Any, Dict, Optional, Tuple
import logging
import os

import yaml

from .utils import data_path, settings_path, env_bound, env_probes, log_level

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS = data_path('settings.yaml')


@dataclass(frozen=True)
class Settings:
    """
    Bounds and defaults shared by every computation.

    Attributes:
        max_rules (int): Rule cap for Knuth-Bendix completion.
        max_len (int): Left-hand-side length cap for completion.
        bound (int): Budget of rule applications and search steps.
        probes (Tuple[str, ...]): Names of the finite probe groupoids.
        square_cap (int): Largest square set enumerated eagerly.
        law_cap (int): Most instances a law is enumerated over exhaustively.
        law_sample_cap (int): Instances drawn per law when sampling is asked for.
        hom_cap (int): Largest assignment space enumerated when counting morphisms.
        kernel_radius (int): Word length of the group elements tried by kernel search.
        seed (int): Seed for every sampled check.
        workers (Optional[int]): Thread pool size; None lets the executor decide.
        log_level (str): Level installed by the command line.
    """
    max_rules: int = 200
    max_len: int = 24
    bound: int = 10_000
    probes: Tuple[str, ...] = ('Z2', 'Z3', 'Z4', 'S3')
    square_cap: int = 100_000
    law_cap: int = 1_000_000
    law_sample_cap: int = 20_000
    hom_cap: int = 200_000
    kernel_radius: int = 1
    seed: int = 0
    workers: Optional[int] = None
    log_level: str = 'WARNING'

    def __post_init__(self):
        for name in ('max_rules', 'max_len', 'bound', 'square_cap', 'law_cap', 'law_sample_cap', 'hom_cap'):
            if getattr(self, name) <= 0:
                raise ValueError(f"Setting '{name}' must be positive.")
        if self.kernel_radius < 0:
            raise ValueError("Setting 'kernel_radius' must be non-negative.")
        object.__setattr__(self, 'probes', tuple(self.probes))

    def override(self, **changes: Any) -> 'Settings':
        """Returns a copy with the non-None changes applied."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self):
        data = asdict(self)
        data['probes'] = list(self.probes)
        return data


def load_settings(data: Optional[str] = None) -> Settings:
    """
    Loads settings from a YAML file path or a YAML string, then applies the
    environment overrides.

    Args:
        data (Optional[str]): Path or YAML text. Defaults to the shipped settings
            file, or to $VANKAMPEN_SETTINGS when set.

    Returns:
        Settings: The resolved settings.
    """
    data = data or settings_path or DEFAULT_SETTINGS
    if os.path.isfile(data):
        with open(data, 'r', encoding='utf-8') as f:
            config: Dict[str, Any] = yaml.safe_load(f) or {}
    else:
        config = yaml.safe_load(data) or {}
    if not isinstance(config, dict):
        raise ValueError("Settings must be a mapping.")

    known = set(Settings.__dataclass_fields__)
    unknown = set(config) - known
    if unknown:
        logger.warning("Ignoring unknown settings: %s", ", ".join(sorted(unknown)))
    settings = Settings(**{k: v for k, v in config.items() if k in known})

    env = {}
    if env_bound:
        env['bound'] = int(env_bound)
    if env_probes:
        env['probes'] = tuple(p.strip() for p in env_probes.split(',') if p.strip())
    if log_level:
        env['log_level'] = log_level
    return settings.override(**env)


_settings: Optional[Settings] = None


def settings() -> Settings:
    """The process-wide settings, loaded once."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings
