"""Component payload archives.

A payload is a gzip tar archive with a ``manifest.json`` at its root naming
the component kind and full descriptor. Packing is deterministic (sorted
member order, zeroed timestamps and ownership) so identical content always
produces identical bytes and therefore an identical content hash.
"""

from __future__ import annotations

import hashlib
import io
import json
import tarfile
from pathlib import Path

from causalbench.core.canonical import canonical_dumps
from causalbench.core.types import ComponentKind, DatasetDescriptor

from .errors import CorruptArchive

MANIFEST_NAME = "manifest.json"


def pack_component(kind: ComponentKind, descriptor, src_dir: Path | str) -> bytes:
    """Build a payload archive from a component directory.

    Every regular file under ``src_dir`` is included under its relative path;
    the manifest is generated, so a stale ``manifest.json`` in the directory
    is ignored.
    """
    src = Path(src_dir)
    manifest = canonical_dumps(
        {"kind": ComponentKind(kind).value, "descriptor": descriptor.to_obj()}
    ).encode("utf-8")
    members: list[tuple[str, bytes]] = [(MANIFEST_NAME, manifest)]
    for path in sorted(p for p in src.rglob("*") if p.is_file()):
        rel = path.relative_to(src).as_posix()
        if rel == MANIFEST_NAME:
            continue
        members.append((rel, path.read_bytes()))
    return pack_members(members)


def pack_members(members: list[tuple[str, bytes]]) -> bytes:
    buf = io.BytesIO()
    # mtime=0 on the gzip stream keeps the archive bytes reproducible
    with tarfile.open(fileobj=buf, mode="w:gz", format=tarfile.PAX_FORMAT, compresslevel=6) as tar:
        for name, data in sorted(members):
            info = tarfile.TarInfo(name=name)
            info.size = len(data)
            info.mtime = 0
            info.uid = info.gid = 0
            info.uname = info.gname = ""
            tar.addfile(info, io.BytesIO(data))
    raw = buf.getvalue()
    # zero the gzip header mtime field (bytes 4..8) for reproducibility
    return raw[:4] + b"\x00\x00\x00\x00" + raw[8:]


def _safe_members(tar: tarfile.TarFile) -> list[tarfile.TarInfo]:
    members = []
    for info in tar.getmembers():
        name = info.name
        if name.startswith("/") or ".." in Path(name).parts:
            raise CorruptArchive(f"unsafe member path: {name}")
        if not (info.isreg() or info.isdir()):
            raise CorruptArchive(f"unsupported member type: {name}")
        members.append(info)
    return members


def read_archive(payload: bytes) -> dict[str, bytes]:
    """Decode an archive into {member path: bytes}, rejecting unsafe paths."""
    try:
        with tarfile.open(fileobj=io.BytesIO(payload), mode="r:gz") as tar:
            out = {}
            for info in _safe_members(tar):
                if info.isreg():
                    fh = tar.extractfile(info)
                    out[info.name] = fh.read() if fh else b""
            return out
    except tarfile.TarError as exc:
        raise CorruptArchive(f"unreadable archive: {exc}") from exc


def read_manifest(payload: bytes) -> dict:
    files = read_archive(payload)
    if MANIFEST_NAME not in files:
        raise CorruptArchive("archive has no manifest.json")
    try:
        manifest = json.loads(files[MANIFEST_NAME].decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CorruptArchive(f"manifest.json is not valid JSON: {exc}") from exc
    if not isinstance(manifest, dict) or "kind" not in manifest or "descriptor" not in manifest:
        raise CorruptArchive("manifest.json must carry kind and descriptor")
    return manifest


def verify_archive(payload: bytes, kind: ComponentKind, descriptor) -> None:
    """Check archive structure against the descriptor it claims to carry.

    The manifest must agree on kind and component name; model and metric
    entrypoints must exist as members; dataset file entries must be present
    byte-for-byte (hash and size).
    """
    files = read_archive(payload)
    manifest = read_manifest(payload)
    if manifest["kind"] != ComponentKind(kind).value:
        raise CorruptArchive(
            f"manifest kind {manifest['kind']!r} does not match {ComponentKind(kind).value!r}"
        )
    declared = manifest["descriptor"].get("id", "")
    declared_name = str(declared).split("@")[0]
    if declared_name != descriptor.id.name:
        raise CorruptArchive(
            f"manifest names component {declared_name!r}, expected {descriptor.id.name!r}"
        )
    entrypoint = getattr(descriptor, "entrypoint", None)
    if entrypoint is not None and entrypoint not in files:
        raise CorruptArchive(f"declared entrypoint {entrypoint!r} missing from archive")
    if isinstance(descriptor, DatasetDescriptor):
        for entry in descriptor.files:
            if entry.logical_name not in files:
                raise CorruptArchive(f"declared file {entry.logical_name!r} missing from archive")
            data = files[entry.logical_name]
            if len(data) != entry.byte_size:
                raise CorruptArchive(
                    f"file {entry.logical_name!r} is {len(data)} bytes, "
                    f"descriptor says {entry.byte_size}"
                )
            digest = hashlib.sha256(data).hexdigest()
            if digest != entry.content_hash:
                raise CorruptArchive(
                    f"file {entry.logical_name!r} hash mismatch: archive has {digest}"
                )


def unpack_archive(payload: bytes, dest: Path | str) -> list[Path]:
    """Extract an archive below dest; returns the written file paths."""
    dest = Path(dest)
    written = []
    for name, data in read_archive(payload).items():
        target = dest / name
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(data)
        written.append(target)
    return written
