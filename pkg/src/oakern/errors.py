"""Exception taxonomy shared by all modules.

The CLI maps these onto its exit codes, so every raise site should pick
the class that matches how a caller must react, not where the code lives.
"""


class OakernError(Exception):
    """Base class for all package errors."""


class InputError(OakernError, ValueError):
    """Malformed or out-of-domain input data (bad matrix, unknown label, ...)."""


class ConfigError(OakernError, ValueError):
    """Invalid configuration value, e.g. a non-positive RBF width."""


class NumericError(OakernError, RuntimeError):
    """A numerical routine failed to converge within its budget."""


class ConsistencyError(OakernError, RuntimeError):
    """Two routes to the same quantity disagree beyond tolerance (bug signal)."""
