"""Exception types shared across the pipeline."""


class FecForgeError(Exception):
    """Base class for all pipeline errors."""


class CorpusError(FecForgeError):
    """Invalid corpus file or record (message names the offending line)."""


class ConfigError(FecForgeError):
    """Invalid configuration file or value (message names the offending key)."""


class BackendError(FecForgeError):
    """A model backend could not be reached or kept failing after retries."""


class ProtocolError(BackendError):
    """A backend answered, but the response violates the wire protocol."""
