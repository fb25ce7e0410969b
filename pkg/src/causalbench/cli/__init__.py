"""Console client: config handling, HTTP client, and the `cb` command."""

from .client import ApiClient, ApiError, RemoteSource, ServerUnreachable
from .config import (
    CliConfig,
    ConfigError,
    MalformedConfig,
    MissingConfig,
    load_config,
    parse_config,
    write_config,
)
from .main import main

__all__ = [
    "ApiClient",
    "ApiError",
    "RemoteSource",
    "ServerUnreachable",
    "CliConfig",
    "ConfigError",
    "MalformedConfig",
    "MissingConfig",
    "load_config",
    "parse_config",
    "write_config",
    "main",
]
