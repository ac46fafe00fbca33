from .base import (
    AccuracyError,
    CheckRow,
    ContractError,
    DomainError,
    DunklLabError,
    Estimate,
    NotARootSystemError,
    QuadratureRule,
    QuadratureSettings,
    RegularPointError,
    ScalarField,
    SingularPointError,
    ToleranceSettings,
    UnsupportedDimensionError,
    UnsupportedGroupError,
    WeightContext,
)
from .lab import DunklLab

__version__ = "0.1.0"

__all__ = [
    "DunklLab",
    "Estimate",
    "QuadratureRule",
    "QuadratureSettings",
    "ScalarField",
    "ToleranceSettings",
    "WeightContext",
    "CheckRow",
    "DunklLabError",
    "DomainError",
    "UnsupportedDimensionError",
    "UnsupportedGroupError",
    "NotARootSystemError",
    "RegularPointError",
    "SingularPointError",
    "ContractError",
    "AccuracyError",
]
