"""Record types stored in the registry metadata database."""

from __future__ import annotations

from dataclasses import dataclass, field

from causalbench.core.types import ComponentKind, Visibility, descriptor_from_obj


@dataclass(frozen=True)
class ComponentRecord:
    """A stored component version plus its payload pointer and access state.

    permanent implies public: inclusion in a published run freezes the
    version forever, and frozen versions must stay downloadable by everyone.
    """

    kind: ComponentKind
    descriptor: object
    payload_hash: str
    metadata: dict = field(default_factory=dict)
    visibility: Visibility = Visibility.PRIVATE
    permanent: bool = False

    def __post_init__(self):
        object.__setattr__(self, "kind", ComponentKind(self.kind))
        object.__setattr__(self, "visibility", Visibility(self.visibility))
        if self.permanent and self.visibility is not Visibility.PUBLIC:
            raise ValueError("permanent component records must be public")

    @property
    def owner(self) -> str:
        return self.metadata.get("owner", "")

    def to_obj(self) -> dict:
        return {
            "kind": self.kind.value,
            "descriptor": self.descriptor.to_obj(),
            "payload_hash": self.payload_hash,
            "metadata": dict(self.metadata),
            "visibility": self.visibility.value,
            "permanent": self.permanent,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "ComponentRecord":
        kind = ComponentKind(obj["kind"])
        return cls(
            kind=kind,
            descriptor=descriptor_from_obj(kind, obj["descriptor"]),
            payload_hash=obj["payload_hash"],
            metadata=dict(obj.get("metadata", {})),
            visibility=Visibility(obj.get("visibility", "private")),
            permanent=bool(obj.get("permanent", False)),
        )


@dataclass(frozen=True)
class PublicationRecord:
    """A minted identifier tied to a published subject (component or run)."""

    subject: str
    identifier: str
    registrar: str
    minted_at: str

    def to_obj(self) -> dict:
        return {
            "subject": self.subject,
            "identifier": self.identifier,
            "registrar": self.registrar,
            "minted_at": self.minted_at,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "PublicationRecord":
        return cls(
            subject=obj["subject"],
            identifier=obj["identifier"],
            registrar=obj["registrar"],
            minted_at=obj["minted_at"],
        )
