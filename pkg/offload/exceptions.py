class ConfigParseError(ValueError):
    """Raised when a configuration source or override cannot be parsed."""


class UnreachableLinkError(ValueError):
    """Raised when a link has no usable capacity."""


class QueuePreconditionError(ValueError):
    """Raised when a queue routine is called outside its stable domain."""


class SweepError(ValueError):
    """Raised for malformed sweep or figure requests."""
