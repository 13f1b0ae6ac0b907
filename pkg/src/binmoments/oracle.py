"""Ground truth: moments by direct summation over the binomial density.

Nothing here touches the formula derivations; only ``math.comb`` and exact
integer/rational arithmetic are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .moments import KINDS, DomainError, FormulaDoc, as_probability


@dataclass(frozen=True)
class OracleResult:
    n: int
    p: Fraction
    d: int
    kind: str
    value: Fraction


def _weights(n: int, a: int, b: int) -> list[int]:
    # b^n * P[S = k]
    return [comb(n, k) * a**k * (b - a) ** (n - k) for k in range(n + 1)]


def oracle_moment(n: int, p, d: int, kind: str = "central") -> Fraction:
    """Exact ``E[g(S)]`` for S ~ Binom(n, p), g given by ``kind`` and order d."""
    if kind not in KINDS:
        raise DomainError(f"unknown kind {kind!r}")
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    if isinstance(d, bool) or not isinstance(d, int) or d < 0:
        raise DomainError(f"d must be a non-negative integer, got {d!r}")
    p = as_probability(p)
    a, b = p.numerator, p.denominator
    w = _weights(n, a, b)
    if kind == "central":
        # (k - n a/b)^d = (k b - n a)^d / b^d
        total = sum(wk * (k * b - n * a) ** d for k, wk in enumerate(w))
        return Fraction(total, b ** (n + d))
    if kind == "raw":
        total = sum(wk * k**d for k, wk in enumerate(w))
    else:
        total = 0
        for k, wk in enumerate(w):
            ff = 1
            for i in range(d):
                ff *= k - i
            total += wk * ff
    return Fraction(total, b**n)


def oracle(n: int, p, d: int, kind: str = "central") -> OracleResult:
    return OracleResult(n, as_probability(p), d, kind, oracle_moment(n, p, d, kind))


def evaluate_formula(f: FormulaDoc, n: int, p) -> Fraction:
    """Exact value of a formula at (n, p), with q = 1 - p and s = p(1 - p)."""
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n!r}")
    return f.evaluate(n, as_probability(p))
