"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of a special function."""


class ParameterError(ValueError):
    """Invalid physical or discretization parameter."""


class SingularityError(ValueError):
    """Kernel evaluated on its diagonal (coincident points)."""


class InteriorEigenvalueError(RuntimeError):
    """Single-layer system is numerically singular; the squared frequency is
    (close to) a Dirichlet eigenvalue of the obstacle."""


class DataFormatError(ValueError):
    """Malformed data file (.ffd / config / CSV)."""


class NumericalError(RuntimeError):
    """A numerical subproblem (factorization, eigenpencil) broke down."""
