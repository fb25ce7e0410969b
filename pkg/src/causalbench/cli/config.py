"""Client configuration: a flat key=value file plus environment overrides.

The default location is ``~/.causalbench/config``. Lines are ``key=value``;
blank lines and ``#`` comments are ignored. ``CB_API_KEY`` in the
environment always wins over the file's key so scripts can inject
credentials without touching disk.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from urllib.parse import urlsplit

from causalbench.harness import ExecutionLimits

DEFAULT_CONFIG_PATH = "~/.causalbench/config"
DEFAULT_SERVER_URL = "http://127.0.0.1:8237"
DEFAULT_CACHE_DIR = "~/.causalbench/cache"
API_KEY_ENV = "CB_API_KEY"


class ConfigError(Exception):
    """Base for config problems; ``detail`` is the user-facing message."""

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class MissingConfig(ConfigError):
    pass


class MalformedConfig(ConfigError):
    pass


@dataclass(frozen=True)
class CliConfig:
    server_url: str = DEFAULT_SERVER_URL
    api_key: str = ""
    store_cache_dir: str = DEFAULT_CACHE_DIR
    default_limits: ExecutionLimits = field(default_factory=ExecutionLimits)

    def cache_path(self) -> Path:
        return Path(self.store_cache_dir).expanduser()

    def require_key(self) -> str:
        if not self.api_key:
            raise MalformedConfig(
                "api_key is empty; set it in the config file or export "
                f"{API_KEY_ENV}"
            )
        return self.api_key


_LIMIT_FIELDS = {
    "limit_timeout_s": ("timeout_s", float),
    "limit_max_output_bytes": ("max_output_bytes", int),
    "limit_working_dir_root": ("working_dir_root", str),
}
_KNOWN_FIELDS = {"server_url", "api_key", "store_cache_dir", *_LIMIT_FIELDS}


def _check_url(url: str, source: str) -> str:
    parts = urlsplit(url)
    if parts.scheme not in ("http", "https") or not parts.netloc:
        raise MalformedConfig(f"{source}: server_url {url!r} is not an http(s) URL")
    return url.rstrip("/")


def parse_config(text: str, source: str = "<config>") -> CliConfig:
    """Parse config text; errors name the offending line and field."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep or not key:
            raise MalformedConfig(f"{source}:{lineno}: expected key=value, got {line!r}")
        if key not in _KNOWN_FIELDS:
            raise MalformedConfig(f"{source}:{lineno}: unknown field {key!r}")
        values[key] = value.strip()

    limits_kwargs: dict[str, object] = {}
    for key, (attr, cast) in _LIMIT_FIELDS.items():
        if values.get(key):
            try:
                limits_kwargs[attr] = cast(values[key])
            except ValueError as exc:
                raise MalformedConfig(f"{source}: field {key!r}: {exc}") from exc
    try:
        limits = ExecutionLimits(**limits_kwargs)
    except ValueError as exc:
        raise MalformedConfig(f"{source}: {exc}") from exc

    return CliConfig(
        server_url=_check_url(values.get("server_url", DEFAULT_SERVER_URL), source),
        api_key=values.get("api_key", ""),
        store_cache_dir=values.get("store_cache_dir", DEFAULT_CACHE_DIR),
        default_limits=limits,
    )


def load_config(path: str | Path | None = None) -> CliConfig:
    """Read the config file, applying defaults and the env key override."""
    resolved = Path(path or DEFAULT_CONFIG_PATH).expanduser()
    if not resolved.is_file():
        raise MissingConfig(
            f"no config file at {resolved}; create one with `cb init-config`"
        )
    config = parse_config(resolved.read_text(encoding="utf-8"), source=str(resolved))
    env_key = os.environ.get(API_KEY_ENV)
    if env_key:
        config = CliConfig(
            server_url=config.server_url,
            api_key=env_key,
            store_cache_dir=config.store_cache_dir,
            default_limits=config.default_limits,
        )
    return config


def write_config(
    path: str | Path, server_url: str = DEFAULT_SERVER_URL, api_key: str = ""
) -> Path:
    """Write a fresh config file (owner-readable only) and return its path."""
    resolved = Path(path).expanduser()
    resolved.parent.mkdir(parents=True, exist_ok=True)
    _check_url(server_url, str(resolved))
    lines = [
        "# causalbench client configuration",
        f"server_url={server_url}",
        f"api_key={api_key}",
        f"store_cache_dir={DEFAULT_CACHE_DIR}",
        "# optional execution limits for `cb run`",
        "# limit_timeout_s=300",
        "# limit_max_output_bytes=65536",
        "# limit_working_dir_root=",
    ]
    resolved.write_text("\n".join(lines) + "\n", encoding="utf-8")
    resolved.chmod(0o600)
    return resolved
