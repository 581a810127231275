"""Exception types raised across the package."""


class ChenFormsError(Exception):
    pass


class DeterminantError(ChenFormsError, ValueError):
    pass


class ReductionError(ChenFormsError, ArithmeticError):
    pass


class PrecisionError(ChenFormsError, ArithmeticError):
    pass


class DomainError(ChenFormsError, ValueError):
    pass


class EndpointMismatch(ChenFormsError, ValueError):
    pass


class MixedWordError(ChenFormsError, ValueError):
    pass


class SingularPeriodMatrix(ChenFormsError, ArithmeticError):
    pass


class GradingError(ChenFormsError, ValueError):
    pass


class CertificateFailure(ChenFormsError, AssertionError):
    """Raised by order certification; ``failures`` lists (tuple, z, residual)."""

    def __init__(self, message, failures=()):
        super().__init__(message)
        self.failures = list(failures)
