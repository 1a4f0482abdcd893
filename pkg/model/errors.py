"""Exception roots shared by every package."""


class DuetError(Exception):
    """Base class for all errors raised by the agent framework."""


class ParseError(DuetError, ValueError):
    """Raised when text does not match an expected grammar."""


class ConfigError(DuetError, ValueError):
    """Raised when a run configuration, manifest or fixture is invalid."""
