"""Registry error hierarchy.

Each error carries a stable machine-readable ``code`` so service layers can
map failures onto HTTP statuses without string matching.
"""

from __future__ import annotations


class RegistryError(Exception):
    code = "registry_error"

    def __init__(self, detail: str = ""):
        super().__init__(detail or self.__class__.__name__)
        self.detail = detail or self.__class__.__name__


class NameTaken(RegistryError):
    code = "name_taken"


class NotOwner(RegistryError):
    code = "not_owner"


class UnknownComponent(RegistryError):
    code = "unknown_component"


class UnknownSubject(RegistryError):
    code = "unknown_subject"


class PermanentEntity(RegistryError):
    code = "permanent_entity"


class CorruptArchive(RegistryError):
    code = "corrupt_archive"


class Forbidden(RegistryError):
    code = "forbidden"


class IntegrityFailure(RegistryError):
    code = "integrity_failure"


class RegistrarUnavailable(RegistryError):
    code = "registrar_unavailable"


class InvalidRun(RegistryError):
    code = "invalid_run"

    def __init__(self, detail: str = "", violations=()):
        super().__init__(detail)
        self.violations = list(violations)
