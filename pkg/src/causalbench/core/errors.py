"""Typed errors raised by the pure core operations."""


class CoreError(Exception):
    """Base class for core data-model errors."""

    code = "core_error"


class EmptyFamily(CoreError):
    """A context names an empty dataset, model, or metric family."""

    code = "empty_family"


class ShapeMismatch(CoreError):
    """Adjacency matrices disagree in shape or carry a nonzero diagonal."""

    code = "shape_mismatch"


class SchemaViolation(CoreError):
    """A document does not satisfy its type's invariants."""

    code = "schema_violation"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))
