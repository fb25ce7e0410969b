"""Service entrypoint: environment-configured store behind uvicorn.

Configuration, overridable by flags:
  CB_STORE_DIR   store directory (default ./cb-store)
  CB_BIND_ADDR   host:port to listen on (default 127.0.0.1:8237)
  CB_REGISTRAR   identifier registrar, sim | zenodo-sandbox (default sim)
  CB_ZENODO_TOKEN  deposition token, only read for zenodo-sandbox
"""

from __future__ import annotations

import argparse
import os
import sys

from causalbench.registry import RegistryStore, make_registrar

from .app import create_app

DEFAULT_BIND = "127.0.0.1:8237"


def parse_bind(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise ValueError(f"bind address must be host:port, got {text!r}")
    return host, int(port)


def build_store(store_dir: str, registrar_name: str) -> RegistryStore:
    registrar = make_registrar(
        registrar_name, token=os.environ.get("CB_ZENODO_TOKEN", "")
    )
    return RegistryStore(store_dir, registrar=registrar)


def build_app():
    """App factory resolving everything from the environment (uvicorn --factory)."""
    store = build_store(
        os.environ.get("CB_STORE_DIR", "./cb-store"),
        os.environ.get("CB_REGISTRAR", "sim"),
    )
    return create_app(store)


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cb-server", description="Serve the benchmarking API over HTTP."
    )
    parser.add_argument(
        "--store",
        default=os.environ.get("CB_STORE_DIR", "./cb-store"),
        help="store directory (env CB_STORE_DIR)",
    )
    parser.add_argument(
        "--bind",
        default=os.environ.get("CB_BIND_ADDR", DEFAULT_BIND),
        help="host:port to listen on (env CB_BIND_ADDR)",
    )
    parser.add_argument(
        "--registrar",
        choices=("sim", "local-sim", "zenodo-sandbox"),
        default=os.environ.get("CB_REGISTRAR", "sim"),
        help="identifier registrar (env CB_REGISTRAR)",
    )
    args = parser.parse_args(argv)

    try:
        host, port = parse_bind(args.bind)
    except ValueError as exc:
        parser.error(str(exc))

    import uvicorn

    store = build_store(args.store, args.registrar)
    try:
        uvicorn.run(create_app(store), host=host, port=port, log_level="info")
    finally:
        store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
