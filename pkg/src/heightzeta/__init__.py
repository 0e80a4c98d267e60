"""Height zeta functions of projective bundles and Hirzebruch surfaces:
exact point counts, analytic continuation over Q, and the motivic theory
over the projective line."""
from .errors import (BudgetExceededError, DivergenceError, DomainError, HeightZetaError,
                     IllConditionedError, InsufficientTruncationError, InvalidMetricError,
                     NotPrimitiveError, PoleError, UnsupportedCaseError, UnsupportedFieldError)

__all__ = [
    "BudgetExceededError", "DivergenceError", "DomainError", "HeightZetaError",
    "IllConditionedError", "InsufficientTruncationError", "InvalidMetricError",
    "NotPrimitiveError", "PoleError", "UnsupportedCaseError", "UnsupportedFieldError",
]
__version__ = "0.1.0"
