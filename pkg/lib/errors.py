"""
Exceptions raised by the engine.

Every error a caller can act on derives from NecklaceError so the CLI can
report it with a single except clause and a nonzero exit code.
"""


class NecklaceError(Exception):
    """Base class for all engine errors."""


class GradingError(NecklaceError):
    """Length or index mismatch in a sign computation."""


class QuiverError(NecklaceError):
    """Malformed quiver, unknown basis vector or object map outside the target."""


class CarrierMismatch(NecklaceError):
    """Two operands do not live over the same quiver, ambient space or d."""


class SignatureMismatch(NecklaceError):
    """Inputs do not fit the requested signature."""


class DegreeMismatch(NecklaceError):
    """A stored entry violates degree consistency."""


class AmbientError(NecklaceError):
    """Operation not defined on this ambient space."""


class AdmissibilityError(NecklaceError):
    """Diagram fails admissibility or type matching."""


class DiagramSyntaxError(NecklaceError):
    """Diagram text could not be parsed."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(f"{message}{where}")


class NotAMorphism(NecklaceError):
    """A construction that needs a pre-CY morphism was handed something else."""


class DegenerateForm(NecklaceError):
    """A bilinear form that must be nondegenerate is not."""


class WorkspaceError(NecklaceError):
    """Workspace file violates the schema or a module invariant."""


class NotInvariant(NecklaceError):
    """Element required to be fixed by the cyclic action is not."""
