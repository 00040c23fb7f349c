"""Threshold, compressed and restricted pivoting for dense supernodes."""

from fractions import Fraction

from . import _core
from ._core import (
    DimensionError,
    Error,
    NumericalError,
    SolveReport,
    backward_error,
    build_compressed,
    factor,
    generate,
    report_json,
    report_schema_id,
    simulate,
    solve,
)

__all__ = [
    "DimensionError",
    "Error",
    "NumericalError",
    "SolveReport",
    "backward_error",
    "build_compressed",
    "factor",
    "generate",
    "report_json",
    "report_schema_id",
    "scheme_costs",
    "simulate",
    "solve",
    "tpp_ops",
]


def scheme_costs(scheme, n, p, P):
    """Closed-form ops, msgs and bw of a parallel scheme as exact fractions."""
    return {k: Fraction(*v) for k, v in _core.scheme_costs(scheme, n, p, P).items()}


def tpp_ops(n, p):
    """Operation count of threshold partial pivoting on an n x p supernode."""
    return Fraction(*_core.tpp_ops(n, p))
