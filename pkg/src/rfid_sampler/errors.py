"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid scenario / population configuration."""


class ProtocolError(RuntimeError):
    """A protocol run could not complete (seed pool exhausted, cap hit)."""
