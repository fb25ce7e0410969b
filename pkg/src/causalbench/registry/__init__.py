"""Content-addressed component, context, and run registry."""

from .archive import (
    MANIFEST_NAME,
    pack_component,
    pack_members,
    read_archive,
    read_manifest,
    unpack_archive,
    verify_archive,
)
from .errors import (
    CorruptArchive,
    Forbidden,
    IntegrityFailure,
    InvalidRun,
    NameTaken,
    NotOwner,
    PermanentEntity,
    RegistrarUnavailable,
    RegistryError,
    UnknownComponent,
    UnknownSubject,
)
from .records import ComponentRecord, PublicationRecord
from .registrar import LocalSimRegistrar, Registrar, ZenodoSandboxRegistrar, make_registrar
from .store import RegistryStore, context_content_id

__all__ = [
    "MANIFEST_NAME",
    "pack_component",
    "pack_members",
    "read_archive",
    "read_manifest",
    "unpack_archive",
    "verify_archive",
    "CorruptArchive",
    "Forbidden",
    "IntegrityFailure",
    "InvalidRun",
    "NameTaken",
    "NotOwner",
    "PermanentEntity",
    "RegistrarUnavailable",
    "RegistryError",
    "UnknownComponent",
    "UnknownSubject",
    "ComponentRecord",
    "PublicationRecord",
    "LocalSimRegistrar",
    "Registrar",
    "ZenodoSandboxRegistrar",
    "make_registrar",
    "RegistryStore",
    "context_content_id",
]
