class ParameterError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class DegenerateError(ValueError):
    """Coincident points where a direction or a segment is required."""


class VerificationError(RuntimeError):
    """A built graph failed its stretch check."""
