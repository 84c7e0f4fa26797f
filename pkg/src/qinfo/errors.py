"""Exception hierarchy shared by all qinfo modules."""


class QInfoError(ValueError):
    """Base class for every error raised by qinfo."""


class DimensionError(QInfoError):
    """Operand shapes or subsystem dimensions are inconsistent."""


class NotHermitianError(QInfoError):
    """A matrix that must be Hermitian is not, within tolerance."""


class NegativeEigenvalueError(QInfoError):
    """A matrix that must be positive semi-definite has a negative eigenvalue."""


class DomainError(QInfoError):
    """A scalar argument lies outside its allowed range."""


class ValidationError(QInfoError):
    """One or more named conditions failed.

    ``violations`` lists every failed condition, not just the first.
    """

    def __init__(self, what: str, violations: list[str]):
        self.what = what
        self.violations = list(violations)
        super().__init__(f"invalid {what}: " + "; ".join(self.violations))
