"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes, so commands can let them propagate.
"""


class PseudobosonError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(PseudobosonError, ValueError):
    """Invalid model parameters or configuration values."""


class RegimeError(PseudobosonError):
    """Operation requires a real simple spectrum but the regime is not RealSimple."""


class PairingError(PseudobosonError):
    """Eigenvector pairing or symplectic normalization is numerically ambiguous."""


class TruncationError(PseudobosonError):
    """The Fock-space cutoff is too small for the requested accuracy."""


class DivergenceError(PseudobosonError):
    """Grand-canonical series diverges for the requested (beta, zeta)."""


class DegenerateFamilyError(PseudobosonError):
    """Biorthogonal family gram matrix is singular or not usable as given."""


class ConfigError(PseudobosonError):
    """Malformed run configuration (bad JSON, unknown or missing keys)."""
