"""Exception hierarchy shared by all modules."""


class HeightZetaError(Exception):
    pass


class DomainError(HeightZetaError, ValueError):
    pass


class UnsupportedFieldError(HeightZetaError, ValueError):
    pass


class PoleError(HeightZetaError, ValueError):
    pass


class DivergenceError(HeightZetaError, ValueError):
    pass


class IllConditionedError(HeightZetaError, ArithmeticError):
    pass


class InvalidMetricError(HeightZetaError, ValueError):
    pass


class NotPrimitiveError(HeightZetaError, ValueError):
    pass


class InsufficientTruncationError(HeightZetaError, ValueError):
    pass


class UnsupportedCaseError(HeightZetaError, ValueError):
    pass


class BudgetExceededError(HeightZetaError, ValueError):
    pass
