"""Closed-form binomial moments as exact polynomials.

Every route returns a :class:`FormulaDoc`. Polynomials use ``n`` for the
number of trials, ``p``/``q`` for the success/failure probabilities and
``s`` for the variance ``p*q``. Independent routes exist for the same
quantity so they can be checked against each other:

raw moments
    ``raw_moment_via_factorial`` (Stirling base change of factorial moments)
    and ``raw_moment_via_counting`` (sum over compositions of d).
central moments, p basis
    ``central_moment_stable`` (positive-term composition sum),
    ``central_moment_fast`` (associated-Stirling regrouping) and
    ``central_moment_from_raw`` (binomial expansion of raw moments).
central moments, variance basis
    ``central_moment_variance_form`` with ``method="alg1"`` (symmetrization)
    or ``method="alg2"`` (reduction modulo ``p**2 - p + s``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterator

from .combinatorics import (
    Composition,
    assoc_stirling2,
    binom,
    compositions,
    compositions_min2,
    falling_power,
    multinomial,
    stirling2,
)
from .poly import (
    N,
    ONE,
    P,
    Q,
    ZERO,
    Poly,
    RationalFn,
    Var,
    _p_power_normal_form,
    exact_div,
    pq_to_p,
    reduce_mod_variance,
    symmetrize_pq,
)

KINDS = ("raw", "central", "factorial")
BASES = ("p", "variance")
METHODS = ("direct", "fast", "alg1", "alg2")

ODD_FACTOR = 1 - 2 * P


class QueryError(ValueError):
    """An invalid combination of kind, basis, method or order."""


class ConsistencyError(RuntimeError):
    """An internal post-condition failed; indicates a bug, not bad input."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class MomentQuery:
    kind: str
    d: int
    basis: str = "p"
    method: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise QueryError(f"unknown kind {self.kind!r}")
        if self.basis not in BASES:
            raise QueryError(f"unknown basis {self.basis!r}")
        if self.method is not None and self.method not in METHODS:
            raise QueryError(f"unknown method {self.method!r}")
        if isinstance(self.d, bool) or not isinstance(self.d, int) or self.d < 0:
            raise QueryError(f"order must be a non-negative integer, got {self.d!r}")
        if self.basis == "variance" and self.kind != "central":
            raise QueryError("the variance basis applies to central moments only")
        allowed = {"variance": {"alg1", "alg2"}, "p": {"direct", "fast"}}[self.basis]
        if self.method is not None and self.method not in allowed:
            raise QueryError(f"method {self.method!r} is not available for the {self.basis} basis")
        if self.kind == "factorial" and self.method == "fast":
            raise QueryError("factorial moments have a single derivation")


@dataclass(frozen=True)
class FormulaDoc:
    """A derived moment formula.

    When ``odd_factor`` is set the moment equals ``(1 - 2p) * body``; the
    factor is kept out of ``body`` so variance-basis bodies stay in Z[n, s].
    """

    query: MomentQuery
    body: Poly
    odd_factor: bool = False
    provenance: str = field(default="", compare=False)

    def expanded(self) -> Poly:
        return self.body * ODD_FACTOR if self.odd_factor else self.body

    def in_np(self) -> Poly:
        """The moment as a polynomial in n and p alone."""
        return pq_to_p(self.expanded())

    def evaluate(self, n: int, p) -> Fraction:
        value = self.body.evaluate(n, p)
        if self.odd_factor:
            value *= 1 - 2 * Fraction(p)
        return value


def _check_order(d: int, minimum: int = 0) -> None:
    if isinstance(d, bool) or not isinstance(d, int) or d < minimum:
        raise QueryError(f"order must be an integer >= {minimum}, got {d!r}")


# -- factorial and raw moments ---------------------------------------------


@lru_cache(maxsize=None)
def factorial_moment(d: int) -> FormulaDoc:
    """E[S^(d falling)] = n^(d falling) * p^d."""
    _check_order(d)
    return FormulaDoc(MomentQuery("factorial", d), falling_power(N, d) * P**d, provenance="falling power")


@lru_cache(maxsize=None)
def raw_moment_via_factorial(d: int) -> FormulaDoc:
    """Expand S^d in falling powers (Stirling numbers), then take expectations."""
    _check_order(d)
    body = ZERO
    for k in range(d + 1):
        c = stirling2(d, k)
        if c:
            body = body + factorial_moment(k).body.scale(c)
    return FormulaDoc(MomentQuery("raw", d, method="fast"), body, provenance="stirling base change")


@lru_cache(maxsize=None)
def raw_moment_via_counting(d: int) -> FormulaDoc:
    """Count, for each k, the multinomial weight of exponent patterns with k active trials."""
    _check_order(d)
    body = ONE if d == 0 else ZERO
    for k in range(1, d + 1):
        weight = sum(multinomial(d, c.parts) for c in compositions(d, k, min_part=1))
        body = body + binom(N, k) * P**k * weight
    return FormulaDoc(MomentQuery("raw", d, method="direct"), body, provenance="composition counting")


# -- central moments in p, q -------------------------------------------------


@dataclass(frozen=True)
class BernoulliCentralFactor:
    """``q^(d_i - 1) - (-p)^(d_i - 1)``; times ``p*q`` it is E[(X - p)^d_i] for X ~ Bern(p)."""

    d_i: int

    @property
    def value(self) -> Poly:
        return _bernoulli_factor(self.d_i)

    def evaluate(self, p) -> Fraction:
        p = Fraction(p)
        return (1 - p) ** (self.d_i - 1) - (-p) ** (self.d_i - 1)


@lru_cache(maxsize=None)
def _bernoulli_factor(d_i: int) -> Poly:
    return Q ** (d_i - 1) - (-P) ** (d_i - 1)


@dataclass(frozen=True)
class StableTerm:
    """One additive term ``binom(n, k) (pq)^k multinomial(d; parts) prod(factors)``."""

    k: int
    composition: Composition
    multinomial: int
    factors: tuple[BernoulliCentralFactor, ...]

    def poly(self) -> Poly:
        out = binom(N, self.k) * (P * Q) ** self.k * self.multinomial
        for f in self.factors:
            out = out * f.value
        return out

    def evaluate(self, n: int, p) -> Fraction:
        p = Fraction(p)
        out = Fraction(comb(n, self.k)) * (p * (1 - p)) ** self.k * self.multinomial
        for f in self.factors:
            out *= f.evaluate(p)
        return out


def stable_terms(d: int) -> Iterator[StableTerm]:
    """Enumerate the unexpanded terms of the positive central-moment sum."""
    _check_order(d)
    for k in range(1, d // 2 + 1):
        for c in compositions_min2(d, k):
            yield StableTerm(k, c, multinomial(d, c.parts), tuple(BernoulliCentralFactor(x) for x in c.parts))


def _central_trivial(d: int) -> Poly | None:
    if d == 0:
        return ONE
    if d == 1:
        return ZERO
    return None


def _divide_by_factorial(inner: Poly, k: int) -> Poly:
    f = factorial(k)
    if any(not isinstance(c, int) or c % f for _, c in inner.items()):
        raise ConsistencyError(f"composition sum for k={k} is not divisible by {k}!")
    return inner.map_coeffs(lambda c: c // f)


@lru_cache(maxsize=None)
def central_moment_stable(d: int) -> FormulaDoc:
    """Positive-term composition sum, expanded to a polynomial in n, p, q."""
    _check_order(d)
    query = MomentQuery("central", d, method="direct")
    trivial = _central_trivial(d)
    if trivial is not None:
        return FormulaDoc(query, trivial, provenance="stable composition sum")
    products: dict[tuple[int, ...], Poly] = {}
    body = ZERO
    for k in range(1, d // 2 + 1):
        inner = ZERO
        for c in compositions_min2(d, k):
            key = tuple(sorted(c.parts))
            prod_ = products.get(key)
            if prod_ is None:
                prod_ = ONE
                for x in key:
                    prod_ = prod_ * _bernoulli_factor(x)
                products[key] = prod_
            inner = inner + prod_.scale(multinomial(d, c.parts))
        # binom(n, k) * inner == n^(k falling) * (inner / k!)
        body = body + falling_power(N, k) * (P * Q) ** k * _divide_by_factorial(inner, k)
    return FormulaDoc(query, body, provenance="stable composition sum")


def fast_x_coefficients(d: int, k: int) -> tuple[dict[int, int], int]:
    """Coefficients of ``U_k / k!`` as a polynomial in ``x = -p/q``.

    ``U_k / k! = sum_l C(d, l) sum_j S2(l, j) S2(d - l, k - j) (-1)^j x^(l - j)``
    with S2 the associated Stirling numbers. Also returns the number of
    nonzero ``(l, j)`` contributions, which is at most ``(d + 1)(k + 1)``.
    """
    coeffs: dict[int, int] = {}
    used = 0
    for ell in range(d + 1):
        bl = comb(d, ell)
        for j in range(k + 1):
            a = assoc_stirling2(ell, j)
            if not a:
                continue
            b = assoc_stirling2(d - ell, k - j)
            if not b:
                continue
            used += 1
            m = ell - j
            coeffs[m] = coeffs.get(m, 0) + (-1) ** j * bl * a * b
    return {m: c for m, c in coeffs.items() if c}, used


@lru_cache(maxsize=None)
def central_moment_fast(d: int) -> FormulaDoc:
    """Associated-Stirling form: ``q^d sum_k binom(n,k) p^k U_k(x)`` with ``x = -p/q``."""
    _check_order(d)
    query = MomentQuery("central", d, method="fast")
    trivial = _central_trivial(d)
    if trivial is not None:
        return FormulaDoc(query, trivial, provenance="associated stirling")
    body = ZERO
    for k in range(1, d // 2 + 1):
        xs, _ = fast_x_coefficients(d, k)
        if not xs:
            continue
        top = max(xs)
        # x^m = (-p)^m / q^m; put everything over q^top
        num = ZERO
        for m, c in xs.items():
            num = num + (-P) ** m * Q ** (top - m) * c
        u_k = RationalFn(num, Q**top) * Q**d
        try:
            cleared = u_k.to_poly()
        except ArithmeticError as exc:
            raise ConsistencyError(f"denominator q^{top} did not clear for k={k}") from exc
        body = body + falling_power(N, k) * P**k * cleared
    return FormulaDoc(query, body, provenance="associated stirling")


@lru_cache(maxsize=None)
def central_moment_from_raw(d: int) -> FormulaDoc:
    """Binomial expansion of ``E[(S - np)^d]`` over raw moments."""
    _check_order(d)
    body = ZERO
    shift = -(N * P)
    for j in range(d + 1):
        raw = raw_moment_via_factorial(j).body
        body = body + shift ** (d - j) * raw * comb(d, j)
    return FormulaDoc(MomentQuery("central", d), body, provenance="raw expansion")


# -- variance basis ------------------------------------------------------------


_SOURCES = {"fast": central_moment_fast, "direct": central_moment_stable}


@lru_cache(maxsize=None)
def central_moment_variance_form(d: int, method: str = "alg1", source: str = "fast") -> FormulaDoc:
    """Central moment as a polynomial in n and s (times ``1 - 2p`` for odd d).

    ``alg1`` symmetrizes the p/q form in ``e1 = p + q``, ``e2 = pq`` and sets
    ``e1 = 1``. ``alg2`` substitutes ``q = 1 - p`` and reduces modulo
    ``p^2 - p + s``. ``source`` picks the p/q-form input route.
    """
    _check_order(d)
    if method not in ("alg1", "alg2"):
        raise QueryError(f"unknown variance-basis method {method!r}")
    if source not in _SOURCES:
        raise QueryError(f"unknown source route {source!r}")
    query = MomentQuery("central", d, basis="variance", method=method)
    odd = d % 2 == 1
    u = _SOURCES[source](d).body
    if method == "alg1":
        if odd:
            u = exact_div(u, Q - P)
        body = symmetrize_pq(u).at_unit_sum()
    else:
        u = pq_to_p(u)
        if odd:
            u = exact_div(u, ODD_FACTOR)
        body = reduce_mod_variance(u)
    if not body.variables() <= {Var.N, Var.S}:
        raise ConsistencyError(f"variance-basis body for d={d} still depends on p or q")
    if not body.is_integral():
        raise ConsistencyError(f"variance-basis body for d={d} has non-integer coefficients")
    return FormulaDoc(query, body, odd_factor=odd, provenance="symmetrization" if method == "alg1" else "variance reduction")


# -- dispatch ------------------------------------------------------------------


def derive(query: MomentQuery) -> FormulaDoc:
    """Derive the formula a query asks for; result carries the query as given."""
    d = query.d
    if query.kind == "factorial":
        doc = factorial_moment(d)
    elif query.kind == "raw":
        doc = raw_moment_via_counting(d) if query.method == "direct" else raw_moment_via_factorial(d)
    elif query.basis == "variance":
        doc = central_moment_variance_form(d, query.method or "alg1")
    else:
        doc = central_moment_stable(d) if query.method == "direct" else central_moment_fast(d)
    return FormulaDoc(query, doc.body, doc.odd_factor, doc.provenance)


def central_routes(d: int) -> dict[str, FormulaDoc]:
    """Every central-moment route for order d, keyed by name."""
    return {
        "stable": central_moment_stable(d),
        "fast": central_moment_fast(d),
        "raw-expansion": central_moment_from_raw(d),
        "alg1": central_moment_variance_form(d, "alg1"),
        "alg2": central_moment_variance_form(d, "alg2"),
    }


def raw_routes(d: int) -> dict[str, FormulaDoc]:
    return {"factorial": raw_moment_via_factorial(d), "counting": raw_moment_via_counting(d)}


def clear_caches() -> None:
    """Forget memoized derivations (for cold-start timings)."""
    for fn in (factorial_moment, raw_moment_via_factorial, raw_moment_via_counting, _bernoulli_factor,
               central_moment_stable, central_moment_fast, central_moment_from_raw, central_moment_variance_form):
        fn.cache_clear()
    _p_power_normal_form.cache_clear()


# -- density -------------------------------------------------------------------


def as_probability(p) -> Fraction:
    """Validate an exact probability; floats are rejected."""
    if isinstance(p, float):
        raise DomainError("p must be an exact rational (int, Fraction or 'a/b' string), not a float")
    if isinstance(p, str):
        p = Fraction(p)
    if isinstance(p, bool) or not isinstance(p, (int, Fraction)):
        raise DomainError(f"unsupported probability type {type(p).__name__}")
    p = Fraction(p)
    if not 0 <= p <= 1:
        raise DomainError(f"p must lie in [0, 1], got {p}")
    return p


def density(n: int, p, k: int) -> Fraction:
    """P[S = k] = binom(n, k) p^k (1 - p)^(n - k)."""
    p = as_probability(p)
    if n < 0 or not 0 <= k <= n:
        raise DomainError(f"need 0 <= k <= n, got n={n}, k={k}")
    return comb(n, k) * p**k * (1 - p) ** (n - k)
