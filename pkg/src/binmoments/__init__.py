"""Exact formulas for raw, factorial and central moments of the binomial distribution."""

from __future__ import annotations

__version__ = "0.1.0"

from ._kernels import BACKEND
from .moments import (
    FormulaDoc,
    MomentQuery,
    central_moment_fast,
    central_moment_from_raw,
    central_moment_stable,
    central_moment_variance_form,
    density,
    derive,
    factorial_moment,
    raw_moment_via_counting,
    raw_moment_via_factorial,
)
from .oracle import evaluate_formula, oracle_moment
from .poly import Poly, Var
from .render import render

__all__ = [
    "BACKEND",
    "FormulaDoc",
    "MomentQuery",
    "Poly",
    "Var",
    "central_moment_fast",
    "central_moment_from_raw",
    "central_moment_stable",
    "central_moment_variance_form",
    "density",
    "derive",
    "evaluate_formula",
    "factorial_moment",
    "oracle_moment",
    "raw_moment_via_counting",
    "raw_moment_via_factorial",
    "render",
]
