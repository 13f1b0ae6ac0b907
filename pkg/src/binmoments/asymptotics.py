"""Growth envelope for even central moments and the exact inequalities behind it.

Pass/fail decisions are made on exact rationals only. Floating point (via
mpmath at 40 significant digits) is used for the envelope and for the
reported ratio ``moment**(1/d) / envelope``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable

import mpmath

from .combinatorics import multinomial
from .moments import DomainError, as_probability
from .oracle import oracle_moment

_DPS = 40


def _require_even(d: int, minimum: int = 2) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < minimum or d % 2:
        raise DomainError(f"d must be an even integer >= {minimum}, got {d!r}")


def _mpf(x) -> mpmath.mpf:
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def envelope_terms(n: int, sigma2, d: int) -> dict[int, mpmath.mpf]:
    """``k^(1 - k/d) (n sigma2)^(k/d)`` for k = 2..d/2 (only k = 1 when d = 2)."""
    _require_even(d)
    if n < 1:
        raise DomainError("n must be at least 1")
    sigma2 = Fraction(sigma2)
    if sigma2 < 0:
        raise DomainError("sigma2 must be non-negative")
    ks = range(1, 2) if d == 2 else range(2, d // 2 + 1)
    with mpmath.workdps(_DPS):
        scale = _mpf(n * sigma2)
        return {k: mpmath.mpf(k) ** (1 - mpmath.mpf(k) / d) * scale ** (mpmath.mpf(k) / d) for k in ks}


def envelope(n: int, sigma2, d: int) -> float:
    """Max over k of ``k^(1 - k/d) (n sigma2)^(k/d)``."""
    terms = envelope_terms(n, sigma2, d)
    with mpmath.workdps(_DPS):
        return float(max(terms.values()))


def envelope_argmax(n: int, sigma2, d: int) -> int:
    terms = envelope_terms(n, sigma2, d)
    return max(terms, key=lambda k: (terms[k], -k))


@dataclass(frozen=True)
class UpperCheck:
    holds: bool
    moment: Fraction
    bound: Fraction


def upper_bound_rhs(n: int, p, d: int) -> Fraction:
    """``sum_{k=1}^{d/2} binom(n, k) (pq)^k k^d``."""
    p = as_probability(p)
    s = p * (1 - p)
    return sum((comb(n, k) * s**k * k**d for k in range(1, d // 2 + 1)), Fraction(0))


def check_upper_inequality(n: int, p, d: int, moment: Fraction | None = None) -> UpperCheck:
    """Exact check of ``E[(S - ES)^d] <= sum_k binom(n, k) (pq)^k k^d`` for p <= 1/2."""
    _require_even(d)
    p = as_probability(p)
    if p > Fraction(1, 2):
        raise DomainError("the upper inequality is stated for p <= 1/2")
    m = oracle_moment(n, p, d, "central") if moment is None else moment
    rhs = upper_bound_rhs(n, p, d)
    return UpperCheck(m <= rhs, m, rhs)


def balanced_even_composition(d: int, k: int) -> tuple[int, ...]:
    """Even parts >= 2 summing to d, all equal to r or r + 2.

    Write ``d = k*r + l`` with ``0 <= l < k``; if r is odd use ``r - 1`` and
    ``l + k`` instead. Then the first ``l/2`` parts are ``r + 2``, the rest ``r``.
    """
    _require_even(d)
    if not 1 <= k <= d // 2:
        raise DomainError(f"need 1 <= k <= d/2, got k={k}, d={d}")
    r, ell = divmod(d, k)
    if r % 2:
        r, ell = r - 1, ell + k
    parts = (r + 2,) * (ell // 2) + (r,) * (k - ell // 2)
    if ell % 2 or r < 2 or len(parts) != k or sum(parts) != d:
        raise AssertionError(f"no balanced even composition for d={d}, k={k}")
    return parts


@dataclass(frozen=True)
class LowerWitness:
    holds: bool
    k: int
    composition: tuple[int, ...]
    moment: Fraction
    bound: Fraction


def lower_witness_bound(n: int, p, d: int, k: int) -> tuple[tuple[int, ...], Fraction]:
    p = as_probability(p)
    parts = balanced_even_composition(d, k)
    s = p * (1 - p)
    return parts, comb(n, k) * s**k * multinomial(d, parts) * Fraction(2) ** (2 * k - d)


def check_lower_witness(n: int, p, d: int, k: int, moment: Fraction | None = None) -> LowerWitness:
    """Exact check of ``E[(S - ES)^d] >= binom(n,k) (pq)^k multinomial(d; parts) 2^(2k - d)``."""
    _require_even(d)
    p = as_probability(p)
    if not 0 < p < 1:
        raise DomainError("the lower witness needs 0 < p < 1")
    parts, bound = lower_witness_bound(n, p, d, k)
    m = oracle_moment(n, p, d, "central") if moment is None else moment
    return LowerWitness(m >= bound, k, parts, m, bound)


@dataclass(frozen=True)
class EnvelopeReport:
    n: int
    p: Fraction
    d: int
    moment: Fraction
    upper_rhs: Fraction
    upper_holds: bool
    lower: tuple[LowerWitness, ...]
    moment_root: float | None
    envelope: float | None
    ratio: float | None
    k1_term: float | None = None

    @property
    def lower_holds(self) -> bool:
        return all(w.holds for w in self.lower)

    @property
    def ok(self) -> bool:
        return self.upper_holds and self.lower_holds


def envelope_report(n: int, p, d: int) -> EnvelopeReport:
    _require_even(d)
    p = as_probability(p)
    m = oracle_moment(n, p, d, "central")
    up = check_upper_inequality(n, p, d, moment=m) if p <= Fraction(1, 2) else None
    if up is None:
        # reflect: the even central moment is unchanged under p -> 1 - p
        up = check_upper_inequality(n, 1 - p, d, moment=m)
    lower = tuple(check_lower_witness(n, p, d, k, moment=m) for k in range(1, d // 2 + 1)) if 0 < p < 1 else ()
    s = p * (1 - p)
    root = env = ratio = k1 = None
    if n >= 1 and s > 0:
        with mpmath.workdps(_DPS):
            root_mp = mpmath.root(_mpf(m), d)
            env_mp = max(envelope_terms(n, s, d).values())
            root, env, ratio = float(root_mp), float(env_mp), float(root_mp / env_mp)
            k1 = float(_mpf(n * s) ** (mpmath.mpf(1) / d))
    return EnvelopeReport(n, p, d, m, up.bound, up.holds, lower, root, env, ratio, k1)


@dataclass
class BoundsSummary:
    reports: list[EnvelopeReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.reports)

    @property
    def failures(self) -> list[EnvelopeReport]:
        return [r for r in self.reports if not r.ok]

    def ratio_band(self) -> tuple[float, float] | None:
        ratios = [r.ratio for r in self.reports if r.ratio is not None and r.d >= 4]
        if not ratios:
            return None
        return min(ratios), max(ratios)


def bounds_grid(dmax: int, nmax: int, ps: Iterable = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2))) -> BoundsSummary:
    """Reports for every even d in [2, dmax], n in [0, nmax] and p in ``ps``."""
    summary = BoundsSummary()
    for p in ps:
        for d in range(2, dmax + 1, 2):
            for n in range(nmax + 1):
                summary.reports.append(envelope_report(n, p, d))
    return summary


_CSV_FIELDS = ("n", "p", "d", "moment", "upper_rhs", "upper_holds", "lower_holds", "lower_witnesses", "moment_root", "envelope", "ratio")


def _row(r: EnvelopeReport) -> dict:
    return {
        "n": r.n,
        "p": str(r.p),
        "d": r.d,
        "moment": str(r.moment),
        "upper_rhs": str(r.upper_rhs),
        "upper_holds": r.upper_holds,
        "lower_holds": r.lower_holds,
        "lower_witnesses": ";".join(f"{w.k}:{str(w.bound)}" for w in r.lower),
        "moment_root": "" if r.moment_root is None else f"{r.moment_root:.15g}",
        "envelope": "" if r.envelope is None else f"{r.envelope:.15g}",
        "ratio": "" if r.ratio is None else f"{r.ratio:.15g}",
    }


def report_csv(reports: Iterable[EnvelopeReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(_row(r))
    return buf.getvalue()


def report_json(summary: BoundsSummary) -> str:
    band = summary.ratio_band()
    obj = {
        "ok": summary.ok,
        "cases": len(summary.reports),
        "ratio_band": None if band is None else {"min": band[0], "max": band[1]},
        "failures": [_row(r) for r in summary.failures],
    }
    return json.dumps(obj, indent=2)


__all__ = [
    "BoundsSummary",
    "EnvelopeReport",
    "LowerWitness",
    "UpperCheck",
    "balanced_even_composition",
    "bounds_grid",
    "check_lower_witness",
    "check_upper_inequality",
    "envelope",
    "envelope_argmax",
    "envelope_report",
    "envelope_terms",
    "report_csv",
    "report_json",
]
