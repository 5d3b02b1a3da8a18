"""Exception hierarchy used across the package."""


class JacobiScatterError(Exception):
    """Base class for all errors raised by jacobi_scatter."""


class DimensionError(JacobiScatterError, ValueError):
    pass


class SingularMatrixError(JacobiScatterError, ArithmeticError):
    pass


class NotHermitianError(JacobiScatterError, ValueError):
    pass


class NotPositiveError(JacobiScatterError, ValueError):
    pass


class DomainError(JacobiScatterError, ValueError):
    """Spectral parameter outside the admissible set."""


class EmptyGridError(JacobiScatterError, ValueError):
    pass


class ProfileError(JacobiScatterError, ValueError):
    """Malformed coefficient profile or profile config."""


class InvalidPartitionError(JacobiScatterError, ValueError):
    pass


class NotPointDefectError(JacobiScatterError, ValueError):
    pass


class DegenerateFitError(JacobiScatterError, ArithmeticError):
    pass
