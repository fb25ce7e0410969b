"""Canonical serialization primitives shared across the platform.

The wire and on-disk form everywhere is UTF-8 JSON with lexicographically
sorted keys and no insignificant whitespace. Floats serialize as Python's
shortest round-trip decimal; NaN/Infinity are rejected so every document
stays interoperable JSON. Content hashes are SHA-256 hex digests of the
canonical bytes.
"""

from __future__ import annotations

import hashlib
import json
import os
import time

__all__ = [
    "canonical_dumps",
    "canonical_dumps_bytes",
    "canonical_loads",
    "sha256_hex",
    "object_hash",
    "new_ulid",
    "iso_utc_now",
]


def canonical_dumps(obj) -> str:
    """Serialize a JSON-able object to its canonical text form."""
    return json.dumps(
        obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False, allow_nan=False
    )


def canonical_dumps_bytes(obj) -> bytes:
    return canonical_dumps(obj).encode("utf-8")


def canonical_loads(text: str | bytes):
    return json.loads(text)


def sha256_hex(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def object_hash(obj) -> str:
    """SHA-256 of the canonical serialization of ``obj``."""
    return sha256_hex(canonical_dumps_bytes(obj))


# Crockford base32 alphabet, as used by ULIDs.
_B32 = "0123456789ABCDEFGHJKMNPQRSTVWXYZ"


def new_ulid(timestamp_ms: int | None = None, randomness: bytes | None = None) -> str:
    """Mint a 26-char sortable identifier (48-bit ms timestamp + 80 random bits)."""
    if timestamp_ms is None:
        timestamp_ms = time.time_ns() // 1_000_000
    if randomness is None:
        randomness = os.urandom(10)
    if len(randomness) != 10:
        raise ValueError("ULID randomness must be 10 bytes")
    value = (timestamp_ms & ((1 << 48) - 1)) << 80 | int.from_bytes(randomness, "big")
    chars = []
    for shift in range(125, -5, -5):
        chars.append(_B32[(value >> shift) & 0x1F])
    return "".join(chars)


def iso_utc_now() -> str:
    """Current UTC time as a fixed-width ISO-8601 string (sorts lexicographically)."""
    from datetime import datetime, timezone

    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%S.%fZ")
