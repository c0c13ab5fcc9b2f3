"""Exception types raised across the package."""


class MorsefiberError(Exception):
    """Base class for all package-specific errors."""


class FiltrationError(MorsefiberError):
    """Invalid filtration input or data model violation."""


class OcfParseError(FiltrationError):
    """Syntax error in an .ocf or .dgvf file; carries the 1-based line number."""

    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class FaceClosureError(FiltrationError):
    """A simplex is present without one of its facets."""


class MonotonicityError(FiltrationError):
    """A simplex enters the filtration before one of its faces."""


class DuplicateSimplexError(FiltrationError):
    """The same simplex is declared more than once."""


class GradeDimensionError(MorsefiberError):
    """Grades (or line vectors) of different parameter counts were combined."""


class VectorFieldError(MorsefiberError):
    """A vector field references unknown simplices or is otherwise unusable."""


class CollapseStuckError(MorsefiberError):
    """No free pair available before the target complex was reached.

    Signals a violated hypothesis: the field is not consistent with the
    filtration, or is not a gradient field.
    """


class EmptyCriticalSetError(MorsefiberError):
    """A nonempty complex produced no critical values (invalid field)."""


class ClosureCapError(MorsefiberError):
    """The lub-closure exceeded the configured size cap."""


class NonPositiveSlopeError(MorsefiberError):
    """A line direction has a non-positive coordinate."""


class LineEquivalenceError(MorsefiberError):
    """Diagram transfer was requested between inequivalent lines."""


class SnapshotError(MorsefiberError):
    """A cache snapshot does not match the loaded dataset."""
