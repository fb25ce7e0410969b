"""HTTP service: API-key auth plus a versioned JSON facade over the store."""

from .app import create_app
from .main import build_app, build_store, parse_bind

__all__ = ["build_app", "build_store", "create_app", "parse_bind"]
