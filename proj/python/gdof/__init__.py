from ._gdof import (
    BoundaryError,
    DomainError,
    GdofResult,
    NumericalError,
    achievable_rate,
    det_capacity,
    gdof,
    outer_bound,
    predicted_prelog,
    sweep,
)

__all__ = [
    "BoundaryError",
    "DomainError",
    "GdofResult",
    "NumericalError",
    "achievable_rate",
    "det_capacity",
    "gdof",
    "outer_bound",
    "predicted_prelog",
    "sweep",
]
