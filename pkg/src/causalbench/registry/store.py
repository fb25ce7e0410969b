"""Persistent, versioned, content-addressed registry.

Layout: a blob directory (``blobs/<sha256>``) holding payload archives plus
an embedded sqlite metadata database (``meta.db``). All mutations serialize
through one writer lock; reads take the same lock briefly and see committed
state only, which keeps the store copyable mid-test and safe under the
threaded API server.

The publish rule: publishing flips a subject public after minting its
identifier (mint-then-flip, so registrar failures leave visibility
untouched), and publishing a *run* freezes every referenced component
version: permanent, public, undeletable from then on. Re-publishing is
idempotent and re-applies the flips, which doubles as crash recovery for a
mint that never got recorded.
"""

from __future__ import annotations

import dataclasses
import hashlib
import hmac
import json
import secrets
import sqlite3
import threading
from contextlib import contextmanager
from pathlib import Path

from causalbench.core.canonical import canonical_dumps, iso_utc_now, sha256_hex
from causalbench.core.context import validate_run
from causalbench.core.errors import SchemaViolation
from causalbench.core.types import (
    BenchmarkContext,
    BenchmarkRun,
    ComponentId,
    ComponentKind,
    Visibility,
    descriptor_from_obj,
)

from .archive import verify_archive
from .errors import (
    Forbidden,
    IntegrityFailure,
    InvalidRun,
    NameTaken,
    NotOwner,
    PermanentEntity,
    UnknownComponent,
    UnknownSubject,
)
from .records import ComponentRecord, PublicationRecord
from .registrar import LocalSimRegistrar, Registrar

_SCHEMA = """
CREATE TABLE IF NOT EXISTS users(
  user_id TEXT PRIMARY KEY,
  display_name TEXT NOT NULL,
  api_key_hash TEXT NOT NULL UNIQUE,
  active INTEGER NOT NULL DEFAULT 1,
  created_at TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS components(
  name TEXT NOT NULL,
  version INTEGER NOT NULL,
  kind TEXT NOT NULL,
  task TEXT,
  descriptor TEXT NOT NULL,
  metadata TEXT NOT NULL,
  payload_hash TEXT NOT NULL,
  owner TEXT NOT NULL,
  visibility TEXT NOT NULL,
  permanent INTEGER NOT NULL DEFAULT 0,
  created_at TEXT NOT NULL,
  PRIMARY KEY(name, version));
CREATE TABLE IF NOT EXISTS contexts(
  context_id TEXT PRIMARY KEY,
  body TEXT NOT NULL,
  owner TEXT NOT NULL,
  visibility TEXT NOT NULL,
  permanent INTEGER NOT NULL DEFAULT 0,
  created_at TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS runs(
  run_id TEXT PRIMARY KEY,
  context_id TEXT NOT NULL,
  body TEXT NOT NULL,
  owner TEXT NOT NULL,
  visibility TEXT NOT NULL,
  permanent INTEGER NOT NULL DEFAULT 0,
  created_at TEXT NOT NULL);
CREATE TABLE IF NOT EXISTS publications(
  identifier TEXT PRIMARY KEY,
  subject TEXT NOT NULL UNIQUE,
  registrar TEXT NOT NULL,
  minted_at TEXT NOT NULL);
"""


def context_content_id(context: BenchmarkContext, owner: str) -> str:
    """Content-derived context id: same owner and content, same id."""
    body = context.to_obj()
    body["context_id"] = ""
    basis = canonical_dumps({"owner": owner, "context": body})
    return "ctx-" + sha256_hex(basis.encode("utf-8"))[:16]


class RegistryStore:
    def __init__(self, root: Path | str, registrar: Registrar | None = None):
        self.root = Path(root)
        self.blob_dir = self.root / "blobs"
        self.blob_dir.mkdir(parents=True, exist_ok=True)
        self.registrar = registrar if registrar is not None else LocalSimRegistrar()
        self._lock = threading.RLock()
        self._conn = sqlite3.connect(str(self.root / "meta.db"), check_same_thread=False)
        self._conn.row_factory = sqlite3.Row
        with self._lock:
            self._conn.execute("PRAGMA journal_mode=WAL")
            self._conn.execute("PRAGMA busy_timeout=5000")
            self._conn.executescript(_SCHEMA)
            self._conn.commit()

    def close(self) -> None:
        with self._lock:
            self._conn.close()

    @contextmanager
    def _txn(self):
        with self._lock:
            try:
                yield self._conn
                self._conn.commit()
            except Exception:
                self._conn.rollback()
                raise

    # -- users ------------------------------------------------------------

    def create_user(self, user_id: str, display_name: str = "") -> str:
        """Create a user and return their api key (shown once, stored hashed)."""
        api_key = "cbk_" + secrets.token_hex(20)
        key_hash = sha256_hex(api_key.encode("utf-8"))
        with self._txn() as conn:
            row = conn.execute("SELECT 1 FROM users WHERE user_id=?", (user_id,)).fetchone()
            if row:
                raise NameTaken(f"user {user_id!r} already exists")
            conn.execute(
                "INSERT INTO users(user_id, display_name, api_key_hash, created_at) VALUES(?,?,?,?)",
                (user_id, display_name or user_id, key_hash, iso_utc_now()),
            )
        return api_key

    def rotate_key(self, user_id: str) -> str:
        api_key = "cbk_" + secrets.token_hex(20)
        key_hash = sha256_hex(api_key.encode("utf-8"))
        with self._txn() as conn:
            cur = conn.execute(
                "UPDATE users SET api_key_hash=? WHERE user_id=?", (key_hash, user_id)
            )
            if cur.rowcount == 0:
                raise UnknownSubject(f"user {user_id!r} does not exist")
        return api_key

    def authenticate(self, api_key: str) -> str | None:
        """Map an api key to its active user id, or None.

        Every stored hash is compared (constant-time each) regardless of
        earlier matches, so timing does not reveal key existence.
        """
        key_hash = sha256_hex(api_key.encode("utf-8"))
        with self._lock:
            rows = self._conn.execute(
                "SELECT user_id, api_key_hash, active FROM users"
            ).fetchall()
        found = None
        for row in rows:
            if hmac.compare_digest(row["api_key_hash"], key_hash) and row["active"]:
                found = row["user_id"]
        return found

    def deactivate_user(self, user_id: str) -> None:
        """Disable authentication for a user; their data stays untouched."""
        with self._txn() as conn:
            cur = conn.execute("UPDATE users SET active=0 WHERE user_id=?", (user_id,))
            if cur.rowcount == 0:
                raise UnknownSubject(f"user {user_id!r} does not exist")

    def list_users(self) -> list[dict]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT user_id, display_name, active, created_at FROM users ORDER BY user_id"
            ).fetchall()
        return [dict(r) | {"active": bool(r["active"])} for r in rows]

    def _display_name(self, user_id: str) -> str:
        with self._lock:
            row = self._conn.execute(
                "SELECT display_name FROM users WHERE user_id=?", (user_id,)
            ).fetchone()
        return row["display_name"] if row else user_id

    # -- blobs ------------------------------------------------------------

    def _write_blob(self, payload: bytes) -> str:
        digest = hashlib.sha256(payload).hexdigest()
        target = self.blob_dir / digest
        if not target.exists():
            tmp = target.with_suffix(".tmp-" + secrets.token_hex(4))
            tmp.write_bytes(payload)
            tmp.replace(target)
        return digest

    def _read_blob(self, payload_hash: str) -> bytes:
        target = self.blob_dir / payload_hash
        if not target.exists():
            raise IntegrityFailure(f"payload blob {payload_hash} missing from store")
        data = target.read_bytes()
        if hashlib.sha256(data).hexdigest() != payload_hash:
            raise IntegrityFailure(f"payload blob {payload_hash} failed its hash check")
        return data

    # -- components -------------------------------------------------------

    def _validated(self, descriptor) -> None:
        violations = descriptor.validate()
        if violations:
            raise SchemaViolation(violations)

    def _insert_component(
        self, conn, kind: ComponentKind, descriptor, payload: bytes, principal: str, metadata: dict
    ) -> None:
        payload_hash = self._write_blob(payload)
        task = getattr(getattr(descriptor, "signature", None), "task", None)
        meta = {
            "title": str(metadata.get("title") or descriptor.id.name),
            "description": str(metadata.get("description", "")),
            "license": str(metadata.get("license", "unspecified")),
            "created_at": iso_utc_now(),
            "owner": principal,
        }
        conn.execute(
            "INSERT INTO components(name, version, kind, task, descriptor, metadata,"
            " payload_hash, owner, visibility, permanent, created_at)"
            " VALUES(?,?,?,?,?,?,?,?,?,0,?)",
            (
                descriptor.id.name,
                descriptor.id.version,
                ComponentKind(kind).value,
                task.value if task else None,
                canonical_dumps(descriptor.to_obj()),
                canonical_dumps(meta),
                payload_hash,
                principal,
                Visibility.PRIVATE.value,
                meta["created_at"],
            ),
        )

    def register_component(
        self,
        kind: ComponentKind,
        descriptor,
        payload: bytes,
        principal: str,
        metadata: dict | None = None,
    ) -> ComponentId:
        """First version of a new name; the store assigns version 1."""
        self._validated(descriptor)
        verify_archive(payload, kind, descriptor)
        descriptor = dataclasses.replace(descriptor, id=ComponentId(descriptor.id.name, 1))
        with self._txn() as conn:
            row = conn.execute(
                "SELECT 1 FROM components WHERE name=? LIMIT 1", (descriptor.id.name,)
            ).fetchone()
            if row:
                raise NameTaken(f"component name {descriptor.id.name!r} exists; use new_version")
            self._insert_component(conn, kind, descriptor, payload, principal, metadata or {})
        return descriptor.id

    def new_version(
        self,
        component_id: ComponentId | str,
        descriptor,
        payload: bytes,
        principal: str,
        metadata: dict | None = None,
    ) -> ComponentId:
        """Next dense version of an existing name; prior versions stay frozen."""
        base = ComponentId.parse(str(component_id))
        self._validated(descriptor)
        if descriptor.id.name != base.name:
            raise SchemaViolation(
                [f"descriptor names {descriptor.id.name!r}, expected {base.name!r}"]
            )
        with self._txn() as conn:
            row = conn.execute(
                "SELECT kind, owner, MAX(version) AS top FROM components WHERE name=?",
                (base.name,),
            ).fetchone()
            if not row or row["top"] is None:
                raise UnknownComponent(f"no component named {base.name!r}")
            if row["owner"] != principal:
                raise NotOwner(f"{base.name!r} is owned by {row['owner']!r}")
            assigned = ComponentId(base.name, int(row["top"]) + 1)
            new_descriptor = dataclasses.replace(descriptor, id=assigned)
            verify_archive(payload, ComponentKind(row["kind"]), new_descriptor)
            self._insert_component(
                conn, ComponentKind(row["kind"]), new_descriptor, payload, principal, metadata or {}
            )
        return assigned

    def _component_row(self, component_id: ComponentId | str):
        cid = ComponentId.parse(str(component_id))
        with self._lock:
            return self._conn.execute(
                "SELECT * FROM components WHERE name=? AND version=?",
                (cid.name, cid.version),
            ).fetchone()

    @staticmethod
    def _row_record(row) -> ComponentRecord:
        kind = ComponentKind(row["kind"])
        return ComponentRecord(
            kind=kind,
            descriptor=descriptor_from_obj(kind, json.loads(row["descriptor"])),
            payload_hash=row["payload_hash"],
            metadata=json.loads(row["metadata"]),
            visibility=Visibility(row["visibility"]),
            permanent=bool(row["permanent"]),
        )

    def _require_viewable(self, row, principal: str | None, subject: str):
        if row is None:
            raise UnknownComponent(f"unknown component {subject!r}")
        if row["visibility"] != Visibility.PUBLIC.value and row["owner"] != principal:
            raise Forbidden(f"{subject!r} is private")

    def get_component(self, component_id: ComponentId | str, principal: str | None) -> ComponentRecord:
        row = self._component_row(component_id)
        self._require_viewable(row, principal, str(component_id))
        return self._row_record(row)

    def fetch(
        self, component_id: ComponentId | str, principal: str | None
    ) -> tuple[ComponentRecord, bytes]:
        """Record plus payload bytes, hash-verified before return."""
        record = self.get_component(component_id, principal)
        return record, self._read_blob(record.payload_hash)

    def restore_payload(self, component_id: ComponentId | str, payload: bytes, principal: str) -> str:
        """Idempotent payload re-upload for an existing version.

        Versions are immutable: the bytes must hash to the recorded
        payload_hash. A matching upload is a no-op when the blob is present
        and a repair when it has gone missing; anything else is a conflict.
        """
        subject = str(component_id)
        row = self._component_row(subject)
        if row is None:
            raise UnknownComponent(f"unknown component {subject!r}")
        if row["owner"] != principal:
            raise NotOwner(f"{subject!r} is owned by {row['owner']!r}")
        digest = hashlib.sha256(payload).hexdigest()
        if digest != row["payload_hash"]:
            raise NameTaken(
                f"{subject!r} payload is immutable; uploaded bytes hash to"
                f" {digest[:12]}, recorded {row['payload_hash'][:12]}"
            )
        return self._write_blob(payload)

    def component_versions(self, name: str, principal: str | None) -> list[ComponentRecord]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM components WHERE name=? ORDER BY version DESC", (name,)
            ).fetchall()
        visible = [
            r
            for r in rows
            if r["visibility"] == Visibility.PUBLIC.value or r["owner"] == principal
        ]
        if not visible:
            raise UnknownComponent(f"unknown component {name!r}")
        return [self._row_record(r) for r in visible]

    def query(
        self,
        kind: ComponentKind | str | None = None,
        task: str | None = None,
        text: str | None = None,
        scope: str = "all",
        page: int = 1,
        page_size: int = 50,
        principal: str | None = None,
    ) -> tuple[list[ComponentRecord], int]:
        """Filtered component listing restricted to public plus owned records.

        Task filtering keys on the declared signature task, so datasets
        (which carry no task) drop out whenever a task filter is present.
        """
        if not 1 <= page_size <= 100:
            raise ValueError("page_size must be within 1..100")
        if page < 1:
            raise ValueError("page must be >= 1")
        clauses = []
        args: list = []
        if scope == "mine":
            clauses.append("owner = ?")
            args.append(principal or "")
        elif scope == "public":
            clauses.append("visibility = 'public'")
        else:
            clauses.append("(visibility = 'public' OR owner = ?)")
            args.append(principal or "")
        if kind:
            clauses.append("kind = ?")
            args.append(ComponentKind(kind).value)
        if task:
            clauses.append("task = ?")
            args.append(task)
        if text:
            clauses.append("(name LIKE ? OR metadata LIKE ?)")
            pat = f"%{text}%"
            args.extend([pat, pat])
        where = " AND ".join(clauses)
        with self._lock:
            total = self._conn.execute(
                f"SELECT COUNT(*) AS n FROM components WHERE {where}", args
            ).fetchone()["n"]
            rows = self._conn.execute(
                f"SELECT * FROM components WHERE {where}"
                " ORDER BY name ASC, version DESC LIMIT ? OFFSET ?",
                args + [page_size, (page - 1) * page_size],
            ).fetchall()
        return [self._row_record(r) for r in rows], int(total)

    # -- contexts ----------------------------------------------------------

    def save_context(self, context: BenchmarkContext, principal: str) -> str:
        """Store a context under a content-derived id; idempotent per owner."""
        violations = context.validate()
        if violations:
            raise SchemaViolation(violations)
        context_id = context_content_id(context, principal)
        body = context.to_obj()
        body["context_id"] = context_id
        with self._txn() as conn:
            row = conn.execute(
                "SELECT context_id FROM contexts WHERE context_id=?", (context_id,)
            ).fetchone()
            if not row:
                conn.execute(
                    "INSERT INTO contexts(context_id, body, owner, visibility, permanent, created_at)"
                    " VALUES(?,?,?,?,0,?)",
                    (
                        context_id,
                        canonical_dumps(body),
                        principal,
                        Visibility.PRIVATE.value,
                        iso_utc_now(),
                    ),
                )
        return context_id

    def _context_row(self, context_id: str):
        with self._lock:
            return self._conn.execute(
                "SELECT * FROM contexts WHERE context_id=?", (context_id,)
            ).fetchone()

    def get_context(self, context_id: str, principal: str | None) -> BenchmarkContext:
        row = self._context_row(context_id)
        if row is None:
            raise UnknownSubject(f"unknown context {context_id!r}")
        if row["visibility"] != Visibility.PUBLIC.value and row["owner"] != principal:
            raise Forbidden(f"context {context_id!r} is private")
        return BenchmarkContext.from_obj(json.loads(row["body"]))

    def list_contexts(self, principal: str | None) -> list[dict]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT context_id, body, owner, visibility, created_at FROM contexts"
                " WHERE visibility='public' OR owner=? ORDER BY context_id",
                (principal or "",),
            ).fetchall()
        out = []
        for row in rows:
            body = json.loads(row["body"])
            out.append(
                {
                    "context_id": row["context_id"],
                    "owner": row["owner"],
                    "visibility": row["visibility"],
                    "created_at": row["created_at"],
                    "datasets": body["datasets"],
                    "models": body["models"],
                    "metrics": body["metrics"],
                }
            )
        return out

    # -- runs ---------------------------------------------------------------

    def _referenced_ids(self, context: BenchmarkContext) -> list[str]:
        return [str(c) for c in context.datasets + context.models + context.metrics]

    def _check_run_references(self, context: BenchmarkContext, principal: str) -> None:
        for cid in self._referenced_ids(context):
            row = self._component_row(cid)
            if row is None:
                raise InvalidRun(f"run references unknown component {cid!r}")
            if row["visibility"] != Visibility.PUBLIC.value and row["owner"] != principal:
                raise InvalidRun(f"run references inaccessible component {cid!r}")

    def save_run(self, run: BenchmarkRun, principal: str) -> str:
        """Validate and store a run privately; publishing is a separate step."""
        if run.executed_by != principal:
            raise NotOwner(
                f"run is attributed to {run.executed_by!r}, uploaded by {principal!r}"
            )
        if run.visibility is not Visibility.PRIVATE or run.minted_identifier is not None:
            raise InvalidRun("uploaded runs must be private and unminted")
        try:
            context = self.get_context(run.context_id, principal)
        except UnknownSubject as exc:
            raise InvalidRun(f"run references unknown context {run.context_id!r}") from exc
        violations = validate_run(run, context)
        if violations:
            raise InvalidRun("run fails validation", violations)
        self._check_run_references(context, principal)
        body = canonical_dumps(run.to_obj())
        with self._txn() as conn:
            row = conn.execute("SELECT body FROM runs WHERE run_id=?", (run.run_id,)).fetchone()
            if row:
                if row["body"] != body:
                    raise NameTaken(f"run id {run.run_id!r} exists with different content")
                return run.run_id
            conn.execute(
                "INSERT INTO runs(run_id, context_id, body, owner, visibility, permanent, created_at)"
                " VALUES(?,?,?,?,?,0,?)",
                (
                    run.run_id,
                    run.context_id,
                    body,
                    principal,
                    Visibility.PRIVATE.value,
                    iso_utc_now(),
                ),
            )
        return run.run_id

    def _run_row(self, run_id: str):
        with self._lock:
            return self._conn.execute("SELECT * FROM runs WHERE run_id=?", (run_id,)).fetchone()

    def get_run(self, run_id: str, principal: str | None) -> BenchmarkRun:
        row = self._run_row(run_id)
        if row is None:
            raise UnknownSubject(f"unknown run {run_id!r}")
        if row["visibility"] != Visibility.PUBLIC.value and row["owner"] != principal:
            raise Forbidden(f"run {run_id!r} is private")
        return BenchmarkRun.from_obj(json.loads(row["body"]))

    def list_runs(self, principal: str | None, context_id: str | None = None) -> list[dict]:
        clauses = ["(visibility='public' OR owner=?)"]
        args: list = [principal or ""]
        if context_id:
            clauses.append("context_id=?")
            args.append(context_id)
        with self._lock:
            rows = self._conn.execute(
                f"SELECT run_id, context_id, owner, visibility, permanent, created_at"
                f" FROM runs WHERE {' AND '.join(clauses)} ORDER BY run_id",
                args,
            ).fetchall()
        return [dict(r) for r in rows]

    # -- publish / delete ---------------------------------------------------

    def get_publication(self, subject: str) -> PublicationRecord | None:
        with self._lock:
            row = self._conn.execute(
                "SELECT * FROM publications WHERE subject=?", (subject,)
            ).fetchone()
        if row is None:
            return None
        return PublicationRecord(
            subject=row["subject"],
            identifier=row["identifier"],
            registrar=row["registrar"],
            minted_at=row["minted_at"],
        )

    def list_publications(self) -> list[PublicationRecord]:
        with self._lock:
            rows = self._conn.execute(
                "SELECT * FROM publications ORDER BY minted_at, identifier"
            ).fetchall()
        return [
            PublicationRecord(
                subject=r["subject"],
                identifier=r["identifier"],
                registrar=r["registrar"],
                minted_at=r["minted_at"],
            )
            for r in rows
        ]

    def _mint(self, subject: str, title: str, owner: str, description: str) -> str:
        return self.registrar.mint(
            subject=subject,
            title=title,
            creators=[self._display_name(owner)],
            description=description,
        )

    def _flip_component_public(self, conn, name: str, version: int, permanent: bool) -> None:
        if permanent:
            conn.execute(
                "UPDATE components SET visibility='public', permanent=1 WHERE name=? AND version=?",
                (name, version),
            )
        else:
            conn.execute(
                "UPDATE components SET visibility='public' WHERE name=? AND version=?",
                (name, version),
            )

    def _publish_component(self, subject: str, principal: str) -> PublicationRecord:
        row = self._component_row(subject)
        if row is None:
            raise UnknownComponent(f"unknown component {subject!r}")
        if row["owner"] != principal:
            raise NotOwner(f"{subject!r} is owned by {row['owner']!r}")
        cid = ComponentId.parse(subject)
        existing = self.get_publication(str(cid))
        if existing:
            with self._txn() as conn:
                self._flip_component_public(conn, cid.name, cid.version, permanent=False)
            return existing
        metadata = json.loads(row["metadata"])
        identifier = self._mint(
            str(cid), metadata.get("title", cid.name), row["owner"], metadata.get("description", "")
        )
        record = PublicationRecord(
            subject=str(cid),
            identifier=identifier,
            registrar=self.registrar.name,
            minted_at=iso_utc_now(),
        )
        with self._txn() as conn:
            conn.execute(
                "INSERT INTO publications(identifier, subject, registrar, minted_at)"
                " VALUES(?,?,?,?)",
                (record.identifier, record.subject, record.registrar, record.minted_at),
            )
            self._flip_component_public(conn, cid.name, cid.version, permanent=False)
        return record

    def _apply_run_publication(self, conn, row, identifier: str) -> None:
        run_obj = json.loads(row["body"])
        run_obj["visibility"] = Visibility.PUBLIC.value
        run_obj["minted_identifier"] = identifier
        conn.execute(
            "UPDATE runs SET body=?, visibility='public', permanent=1 WHERE run_id=?",
            (canonical_dumps(run_obj), row["run_id"]),
        )
        conn.execute(
            "UPDATE contexts SET visibility='public', permanent=1 WHERE context_id=?",
            (row["context_id"],),
        )
        context = BenchmarkContext.from_obj(json.loads(self._context_row(row["context_id"])["body"]))
        for cid_str in self._referenced_ids(context):
            cid = ComponentId.parse(cid_str)
            self._flip_component_public(conn, cid.name, cid.version, permanent=True)

    def _publish_run(self, run_id: str, principal: str) -> PublicationRecord:
        row = self._run_row(run_id)
        if row is None:
            raise UnknownSubject(f"unknown run {run_id!r}")
        if row["owner"] != principal:
            raise NotOwner(f"run {run_id!r} is owned by {row['owner']!r}")
        existing = self.get_publication(run_id)
        if existing:
            with self._txn() as conn:
                self._apply_run_publication(conn, row, existing.identifier)
            return existing
        ctx_row = self._context_row(row["context_id"])
        if ctx_row is None:
            raise InvalidRun(f"run references unknown context {row['context_id']!r}")
        context = BenchmarkContext.from_obj(json.loads(ctx_row["body"]))
        run = BenchmarkRun.from_obj(json.loads(row["body"]))
        violations = validate_run(run, context)
        violations = [v for v in violations if v.code != "identifier_visibility"]
        if violations:
            raise InvalidRun("run fails validation", violations)
        for cid_str in self._referenced_ids(context):
            if self._component_row(cid_str) is None:
                raise InvalidRun(f"run references unknown component {cid_str!r}")
        identifier = self._mint(
            run_id, f"benchmark run {run_id}", row["owner"], f"results for context {row['context_id']}"
        )
        record = PublicationRecord(
            subject=run_id,
            identifier=identifier,
            registrar=self.registrar.name,
            minted_at=iso_utc_now(),
        )
        with self._txn() as conn:
            conn.execute(
                "INSERT INTO publications(identifier, subject, registrar, minted_at)"
                " VALUES(?,?,?,?)",
                (record.identifier, record.subject, record.registrar, record.minted_at),
            )
            self._apply_run_publication(conn, row, identifier)
        return record

    def publish(self, subject: str, principal: str) -> PublicationRecord:
        """Mint an identifier, then flip the subject public.

        For runs, every referenced component version becomes permanent. The
        registrar is consulted before any state changes; re-publish returns
        the existing record and re-applies the flips.
        """
        if "@" in subject:
            return self._publish_component(subject, principal)
        return self._publish_run(subject, principal)

    def delete(self, subject: str, principal: str) -> None:
        if "@" in subject:
            self._delete_component(subject, principal)
        elif subject.startswith("ctx-"):
            self._delete_context(subject, principal)
        else:
            self._delete_run(subject, principal)

    def _delete_component(self, subject: str, principal: str) -> None:
        cid = ComponentId.parse(subject)
        with self._txn() as conn:
            row = conn.execute(
                "SELECT * FROM components WHERE name=? AND version=?", (cid.name, cid.version)
            ).fetchone()
            if row is None:
                raise UnknownComponent(f"unknown component {subject!r}")
            if row["owner"] != principal:
                raise NotOwner(f"{subject!r} is owned by {row['owner']!r}")
            if row["permanent"]:
                raise PermanentEntity(f"{subject!r} is permanent and cannot be removed")
            conn.execute(
                "DELETE FROM components WHERE name=? AND version=?", (cid.name, cid.version)
            )
            still_used = conn.execute(
                "SELECT 1 FROM components WHERE payload_hash=? LIMIT 1", (row["payload_hash"],)
            ).fetchone()
            if not still_used:
                blob = self.blob_dir / row["payload_hash"]
                if blob.exists():
                    blob.unlink()

    def _delete_run(self, run_id: str, principal: str) -> None:
        with self._txn() as conn:
            row = conn.execute("SELECT * FROM runs WHERE run_id=?", (run_id,)).fetchone()
            if row is None:
                raise UnknownSubject(f"unknown run {run_id!r}")
            if row["owner"] != principal:
                raise NotOwner(f"run {run_id!r} is owned by {row['owner']!r}")
            if row["permanent"]:
                raise PermanentEntity(f"run {run_id!r} is permanent and cannot be removed")
            conn.execute("DELETE FROM runs WHERE run_id=?", (run_id,))

    def _delete_context(self, context_id: str, principal: str) -> None:
        with self._txn() as conn:
            row = conn.execute(
                "SELECT * FROM contexts WHERE context_id=?", (context_id,)
            ).fetchone()
            if row is None:
                raise UnknownSubject(f"unknown context {context_id!r}")
            if row["owner"] != principal:
                raise NotOwner(f"context {context_id!r} is owned by {row['owner']!r}")
            if row["permanent"]:
                raise PermanentEntity(f"context {context_id!r} is permanent and cannot be removed")
            referenced = conn.execute(
                "SELECT 1 FROM runs WHERE context_id=? LIMIT 1", (context_id,)
            ).fetchone()
            if referenced:
                raise PermanentEntity(f"context {context_id!r} is referenced by stored runs")
            conn.execute("DELETE FROM contexts WHERE context_id=?", (context_id,))

    # -- audit ---------------------------------------------------------------

    def audit(self) -> list[str]:
        """Full-store integrity check; returns human-readable violations."""
        problems = []
        with self._lock:
            comp_rows = self._conn.execute(
                "SELECT name, version, payload_hash, visibility, permanent FROM components"
            ).fetchall()
            run_rows = self._conn.execute(
                "SELECT run_id, visibility, permanent FROM runs"
            ).fetchall()
        for row in comp_rows:
            subject = f"{row['name']}@{row['version']}"
            blob = self.blob_dir / row["payload_hash"]
            if not blob.exists():
                problems.append(f"{subject}: payload blob missing")
            elif hashlib.sha256(blob.read_bytes()).hexdigest() != row["payload_hash"]:
                problems.append(f"{subject}: payload hash mismatch")
            if row["permanent"] and row["visibility"] != Visibility.PUBLIC.value:
                problems.append(f"{subject}: permanent but not public")
        for row in run_rows:
            if row["permanent"] and row["visibility"] != Visibility.PUBLIC.value:
                problems.append(f"run {row['run_id']}: permanent but not public")
        return problems
