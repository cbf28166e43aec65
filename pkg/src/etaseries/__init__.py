"""Certified arbitrary-precision evaluation of eta, eta_b and zeta by block series."""

from .bounds import BoundProfile, TruncationPlan, auto_plan, p_bound, plan_truncation
from .coefficients import CoefficientTable, PochhammerRatio, coefficient_table
from .exceptions import (
    BaseExhausted,
    EtaSeriesError,
    MaxTermsExceeded,
    NearPole,
    PlanFailure,
    PoleAtOne,
)
from .numerics import PrecisionContext
from .series import EvaluationResult, SeriesConfig, eta, eta_b, partial_sum, zeta

__version__ = "0.1.0"

__all__ = [
    "BaseExhausted",
    "BoundProfile",
    "CoefficientTable",
    "EtaSeriesError",
    "EvaluationResult",
    "MaxTermsExceeded",
    "NearPole",
    "PlanFailure",
    "PochhammerRatio",
    "PoleAtOne",
    "PrecisionContext",
    "SeriesConfig",
    "TruncationPlan",
    "auto_plan",
    "coefficient_table",
    "eta",
    "eta_b",
    "p_bound",
    "partial_sum",
    "plan_truncation",
    "zeta",
]
