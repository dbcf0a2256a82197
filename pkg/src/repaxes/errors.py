"""Exception types shared across the package."""


class RepaxesError(Exception):
    """Base class for all errors raised by this package."""


class ConfigurationError(RepaxesError, ValueError):
    """A spec, config, or job is internally inconsistent or incomplete."""


class ShapeError(RepaxesError, ValueError):
    """Array dimensions do not chain or match."""


class ValidationError(RepaxesError, ValueError):
    """An input value is outside its documented domain."""


class ParameterError(ValidationError):
    """A transformation parameter is outside its declared range."""


class DegenerateInputError(RepaxesError, ValueError):
    """Input is structurally valid but degenerate (zero vector, silent clip)."""


class NumericDivergenceError(RepaxesError, ArithmeticError):
    """Training produced a non-finite loss."""


class TransformError(RepaxesError):
    """A media transformation failed.

    ``sample_id`` carries the offending sample when known.
    """

    def __init__(self, message: str, sample_id: str | None = None):
        super().__init__(message if sample_id is None else f"{message} (sample {sample_id!r})")
        self.sample_id = sample_id


class ManifestError(RepaxesError, ValueError):
    """A dataset manifest failed to parse or validate."""


class FormatError(RepaxesError, ValueError):
    """An embedding container (or other binary payload) is malformed."""


class AlignmentError(RepaxesError, ValueError):
    """Stores, manifests, and parameter logs do not agree on sample ids."""


class SchemaVersionError(RepaxesError, ValueError):
    """Report files carry an unsupported or mixed schema version."""
