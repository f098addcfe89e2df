"""Exception hierarchy shared by the library and the command line."""


class SupervermaError(Exception):
    """Base class; ``exit_code`` is what the CLI returns for it."""

    exit_code = 1


class SpecError(SupervermaError, ValueError):
    exit_code = 2


class DomainError(SupervermaError, ValueError):
    exit_code = 3


class IsotropyError(DomainError):
    pass


class DimensionError(SupervermaError, ValueError):
    exit_code = 3


class SingularMatrixError(SupervermaError, ArithmeticError):
    exit_code = 3


class ResourceError(SupervermaError, RuntimeError):
    exit_code = 4


class DepthError(ResourceError):
    pass


class SamplingError(SupervermaError, RuntimeError):
    exit_code = 6


class ConsistencyError(SupervermaError, RuntimeError):
    """An internal cross-check failed; always a bug or a counterexample."""

    exit_code = 5
