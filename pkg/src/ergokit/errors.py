"""Exception types shared across the package."""


class ErgokitError(Exception):
    """Base class for all ergokit errors."""


class SpaceMismatchError(ErgokitError):
    """Operands live in incompatible spaces (kind, exponent or dimension)."""


class SupportOverflowError(ErgokitError):
    """A forward shift would push nonzero coordinates past the truncation.

    Raised instead of silently truncating, because truncation would break
    exactness of norms; the usual remedy is to raise the dimension.
    """


class ConfigError(ErgokitError):
    """Invalid experiment configuration (CLI exit code 2)."""
