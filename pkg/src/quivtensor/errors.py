"""Exception types shared across the package."""


class QuivTensorError(Exception):
    """Base class for package errors."""


class ParseError(QuivTensorError, ValueError):
    """Malformed quiver, representation, partition or decomposition input."""


class UnsupportedShapeError(QuivTensorError, ValueError):
    """The operation needs a type A or type D quiver."""


class InconsistentDecompositionError(QuivTensorError, RuntimeError):
    """Multiplicity extraction produced an impossible answer."""


class BoundExceededError(QuivTensorError, ValueError):
    """A configured size bound would be exceeded."""
