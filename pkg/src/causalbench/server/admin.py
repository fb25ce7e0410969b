"""Operator CLI for key management, run directly against the store directory.

Keys are printed exactly once at issue time and stored only as hashes;
there is deliberately no way to read one back later.
"""

from __future__ import annotations

import argparse
import os
import sys

from causalbench.registry import NameTaken, RegistryStore, UnknownSubject


def _add_store_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--store",
        default=os.environ.get("CB_STORE_DIR", "./cb-store"),
        help="store directory (env CB_STORE_DIR)",
    )


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cb-admin", description="Manage users and API keys of a local store."
    )
    _add_store_flag(parser)
    commands = parser.add_subparsers(dest="command", required=True)

    create = commands.add_parser("create-user", help="issue a new user and print their key")
    create.add_argument("user")
    create.add_argument("--display", default="", help="display name used by registrars")

    rotate = commands.add_parser("rotate-key", help="replace a user's key, invalidating the old one")
    rotate.add_argument("user")

    deactivate = commands.add_parser("deactivate", help="disable a user's key")
    deactivate.add_argument("user")

    commands.add_parser("list-users", help="list users and their status")

    args = parser.parse_args(argv)
    store = RegistryStore(args.store)
    try:
        if args.command == "create-user":
            key = store.create_user(args.user, args.display)
            print(key)
        elif args.command == "rotate-key":
            print(store.rotate_key(args.user))
        elif args.command == "deactivate":
            store.deactivate_user(args.user)
            print(f"deactivated {args.user}")
        else:
            for row in store.list_users():
                state = "active" if row["active"] else "inactive"
                print(f"{row['user_id']}\t{state}\t{row['created_at']}")
    except (NameTaken, UnknownSubject) as exc:
        print(f"error: {exc.detail}", file=sys.stderr)
        return 1
    finally:
        store.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
