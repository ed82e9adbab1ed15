"""Exception types shared by the whole package.

Every domain error carries a stable ``kind`` string so the CLI and the
HTTP service can map failures to exit codes and response bodies without
matching on messages.
"""


class RegasysError(Exception):
    """Base class for all domain errors raised by this package."""

    kind = "error"


class FormatError(RegasysError, ValueError):
    """A document, literal, or table does not match the expected shape."""

    kind = "format"


class DimensionError(RegasysError, ValueError):
    """Two objects that must agree on width do not."""

    kind = "dimension"


class OrderingError(RegasysError, ValueError):
    """Times or offsets that must be strictly increasing are not."""

    kind = "ordering"


class ValidationError(RegasysError, ValueError):
    """An object violates a structural invariant other than width or order."""

    kind = "validation"


class NotProgressiveError(RegasysError, ValueError):
    """A schedule's periodic part never fires some coordinate."""

    kind = "not-progressive"

    def __init__(self, coordinate: int, message: str):
        super().__init__(message)
        self.coordinate = coordinate


class ContainmentError(RegasysError, ValueError):
    """A tick set that must contain another one misses a point."""

    kind = "containment"


class UnknownInputError(RegasysError, LookupError):
    """A signal was looked up in a system that does not admit it."""

    kind = "unknown-input"


class CompositionError(RegasysError, ValueError):
    """Two systems cannot be connected serially."""

    kind = "composition"
