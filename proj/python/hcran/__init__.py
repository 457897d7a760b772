"""Energy-efficiency experiments for heterogeneous cloud RANs."""

from ._core import (
    ConfigError,
    __version__,
    config_keys,
    jain_index,
    resolve_config,
    run_experiment,
    total_power,
)

__all__ = [
    "ConfigError",
    "__version__",
    "config_keys",
    "jain_index",
    "resolve_config",
    "run_experiment",
    "total_power",
]
