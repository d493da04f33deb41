"""Curvature, Cotton tensor and ECS classification toolkit.

Exact mode returns ``fractions.Fraction`` values; float mode returns floats.
Tensors are nested lists indexed like their components, with the derivative
index first for covariant derivatives.
"""

from ._core import (
    CottonError,
    InputError,
    Metric,
    PreconditionError,
    classify,
    curvature,
    decompose,
    run_cli,
    selftest,
    verify_model,
)

__all__ = [
    "CottonError",
    "InputError",
    "Metric",
    "PreconditionError",
    "classify",
    "curvature",
    "decompose",
    "run_cli",
    "selftest",
    "verify_model",
]
