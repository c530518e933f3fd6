"""Exception types raised across the package."""


class KuramotoError(Exception):
    """Base class for all errors raised by kuramoto_eq."""


class DomainError(KuramotoError, ValueError):
    """Evaluation point lies below the real domain of f_sigma."""


class EmptyDomainError(DomainError):
    """An interval lies entirely below the real domain of f_sigma."""


class SizeLimitError(KuramotoError, ValueError):
    pass


class ParityError(KuramotoError, ValueError):
    pass


class RangeError(KuramotoError, ValueError):
    pass


class ZeroOrderParameterError(KuramotoError, ValueError):
    """sum_mu k_mu exp(i theta_mu) vanishes, so no phase shift normalizes it."""


class SineOverflowError(KuramotoError, ArithmeticError):
    """|omega / (k sqrt(R))| exceeds 1 beyond rounding slack."""


class InvalidSkipError(KuramotoError, ValueError):
    """The sequential skip rule was requested for a model without IC4."""


class ValidationError(KuramotoError, ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__(str(report))
