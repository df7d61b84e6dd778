"""Exception hierarchy shared by all modules."""


class MosmaxError(Exception):
    """Base class for library errors."""


class DomainError(MosmaxError, ValueError):
    """A point lies outside the domain on which a Phi-function is defined."""


class ArgumentError(MosmaxError, ValueError):
    pass


class NumericalError(MosmaxError, ArithmeticError):
    """An iterative procedure exhausted its budget.

    ``diagnostics`` carries whatever state was available when it gave up.
    """

    def __init__(self, message, **diagnostics):
        super().__init__(message)
        self.diagnostics = diagnostics


class UnboundedConjugateError(NumericalError):
    pass


class EmptyBallError(MosmaxError, ValueError):
    pass


class FieldFormatError(MosmaxError, ValueError):
    pass


class UndefinedBoundError(MosmaxError, ValueError):
    pass


class PreconditionError(MosmaxError, ValueError):
    pass


class NonConvergentFamilyError(MosmaxError, ValueError):
    def __init__(self, message, gaps=None):
        super().__init__(message)
        self.gaps = gaps


class ConfigError(MosmaxError, ValueError):
    """Raised with every validation problem found, not just the first."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{path}: {msg}" for path, msg in self.errors))
