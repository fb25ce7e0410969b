"""Loading components from authoring directories.

An authoring directory holds a ``component.json`` (kind, descriptor,
optional metadata) next to the component's actual files. Dataset file
entries are recomputed from disk at pack time, so authors never maintain
hashes by hand.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from causalbench.core.canonical import canonical_dumps
from causalbench.core.types import ComponentKind, descriptor_from_obj

from .archive import MANIFEST_NAME, pack_members
from .errors import CorruptArchive

AUTHORING_NAME = "component.json"


@dataclass(frozen=True)
class AuthoredComponent:
    kind: ComponentKind
    descriptor: object
    metadata: dict = field(default_factory=dict)
    payload: bytes = b""


def payload_members(root: Path | str) -> list[tuple[str, bytes]]:
    """All payload files under root, excluding authoring and manifest files."""
    root = Path(root)
    out = []
    for path in sorted(p for p in root.rglob("*") if p.is_file()):
        rel = path.relative_to(root).as_posix()
        if rel in (AUTHORING_NAME, MANIFEST_NAME):
            continue
        out.append((rel, path.read_bytes()))
    return out


def load_component_dir(path: Path | str) -> AuthoredComponent:
    root = Path(path)
    decl_path = root / AUTHORING_NAME
    if not decl_path.is_file():
        raise CorruptArchive(f"{root}: no {AUTHORING_NAME} found")
    try:
        decl = json.loads(decl_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorruptArchive(f"{decl_path}: invalid JSON: {exc}") from exc
    if not isinstance(decl, dict) or "kind" not in decl or "descriptor" not in decl:
        raise CorruptArchive(f"{decl_path}: must carry kind and descriptor")
    try:
        kind = ComponentKind(decl["kind"])
    except ValueError as exc:
        raise CorruptArchive(f"{decl_path}: {exc}") from exc
    desc_obj = dict(decl["descriptor"])
    members = payload_members(root)
    if kind is ComponentKind.DATASET:
        desc_obj["files"] = [
            {
                "logical_name": name,
                "content_hash": hashlib.sha256(data).hexdigest(),
                "byte_size": len(data),
            }
            for name, data in members
        ]
    try:
        descriptor = descriptor_from_obj(kind, desc_obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise CorruptArchive(f"{decl_path}: bad descriptor: {exc}") from exc
    manifest = canonical_dumps(
        {"kind": kind.value, "descriptor": descriptor.to_obj()}
    ).encode("utf-8")
    payload = pack_members([(MANIFEST_NAME, manifest)] + members)
    return AuthoredComponent(
        kind=kind,
        descriptor=descriptor,
        metadata=dict(decl.get("metadata", {})),
        payload=payload,
    )
