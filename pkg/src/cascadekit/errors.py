"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument falls outside its valid domain."""


class DegenerateSampleError(ValueError):
    """A sample cannot support the requested fit or test."""


class SupercriticalError(ValueError):
    """A branching ratio >= 1 makes the expected cascade size diverge."""


class UndefinedMetricError(ValueError):
    """A tree metric has no defined value (e.g. empty tree, no eligible edges)."""


class TreeValidationError(ValueError):
    """Base class for sharing-tree schema violations."""


class TreeSchemaError(TreeValidationError):
    """Malformed document structure or field of the wrong kind."""


class TreeCycleError(TreeValidationError):
    """Parent links contain a cycle."""


class OrphanParentError(TreeValidationError):
    """A node references a parent id that does not exist."""


class SigmaRangeError(TreeValidationError):
    """A node polarization lies outside [-1, 1]."""


class TimestampOrderError(TreeValidationError):
    """A child carries an earlier timestamp than its parent."""
