"""Exception hierarchy shared across the package.

The CLI maps these onto process exit codes (see ``convpam.cli``):
configuration/model problems exit 2, numerical failures exit 3 and
I/O problems (plain ``OSError``) exit 4.
"""


class ConvPamError(Exception):
    """Base class for all package-specific errors."""


class ConfigurationError(ConvPamError):
    """Invalid geometry, acquisition or solver configuration."""


class ModelError(ConvPamError):
    """Operator used outside its validity domain (e.g. pitch mismatch)."""


class NumericalError(ConvPamError):
    """Non-finite values or divergence inside an iterative method."""
