"""Exact sparse polynomials in the four variables n, s, p, q.

``s`` stands for the variance ``p*q``. Coefficients are Python ints, or
``Fraction`` where a transient rational is unavoidable (e.g. the symbolic
``binom(n, k)``); a Fraction with denominator 1 is always stored as int.

Besides ring arithmetic the module provides the two rewriting engines used
to move a central moment into the variance basis:

* :func:`symmetrize_pq` rewrites a p/q-symmetric polynomial in the
  elementary symmetric functions ``e1 = p + q`` and ``e2 = p*q``;
* :func:`reduce_mod_variance` computes normal forms modulo
  ``p**2 - p + s`` (the lex-order reduction rule ``p**2 -> p - s``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from typing import Iterable, Iterator, Mapping, Union

from . import _kernels
from ._pykernels import FIELD_BITS, FIELD_MASK

Scalar = Union[int, Fraction]
Monomial = tuple[int, int, int, int]
"""Exponent vector ordered ``(n, s, p, q)``."""


class Var(enum.IntEnum):
    """The four variables, numbered in canonical print order n > s > p > q."""

    N = 0
    S = 1
    P = 2
    Q = 3

    @property
    def shift(self) -> int:
        return FIELD_BITS * (3 - self.value)


VAR_NAMES = ("n", "s", "p", "q")
_MAX_EXP = FIELD_MASK


class PolyError(ArithmeticError):
    pass


class DivisibilityError(PolyError):
    """Raised by :func:`exact_div` when the divisor leaves a remainder."""


class AsymmetryError(PolyError, ValueError):
    """Raised by :func:`symmetrize_pq` on input that is not p/q-symmetric."""


def pack(exps: Iterable[int]) -> int:
    e = tuple(exps)
    if len(e) != 4:
        raise ValueError(f"exponent vector must have 4 entries, got {e!r}")
    key = 0
    for x in e:
        if not 0 <= x <= _MAX_EXP:
            raise ValueError(f"exponent {x} out of range")
        key = (key << FIELD_BITS) | x
    return key


def unpack(key: int) -> Monomial:
    return (
        key >> 3 * FIELD_BITS,
        (key >> 2 * FIELD_BITS) & FIELD_MASK,
        (key >> FIELD_BITS) & FIELD_MASK,
        key & FIELD_MASK,
    )


def _exp(key: int, var: Var) -> int:
    return (key >> var.shift) & FIELD_MASK


def _norm(c: Scalar) -> Scalar:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _check_scalar(c) -> Scalar:
    if isinstance(c, bool) or not isinstance(c, (int, Fraction)):
        raise TypeError(f"polynomial coefficients must be int or Fraction, got {type(c).__name__}")
    return _norm(c)


class Poly:
    """Immutable sparse polynomial; no stored coefficient is ever zero."""

    __slots__ = ("_terms", "_hash", "_deg")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        packed: dict[int, Scalar] = {}
        for mono, c in (terms or {}).items():
            c = _check_scalar(c)
            if c:
                k = pack(mono)
                packed[k] = _norm(packed.get(k, 0) + c)
        self._terms = {k: c for k, c in packed.items() if c}
        self._hash = None
        self._deg = None

    @classmethod
    def _raw(cls, terms: dict[int, Scalar]) -> Poly:
        # trusts caller: keys packed, coefficients nonzero and normalized
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        obj._deg = None
        return obj

    @classmethod
    def const(cls, c: Scalar) -> Poly:
        c = _check_scalar(c)
        return cls._raw({0: c} if c else {})

    @classmethod
    def var(cls, v: Var, power: int = 1) -> Poly:
        e = [0, 0, 0, 0]
        e[Var(v)] = power
        return cls._raw({pack(e): 1})

    @classmethod
    def monomial(cls, c: Scalar, n: int = 0, s: int = 0, p: int = 0, q: int = 0) -> Poly:
        return cls({(n, s, p, q): c})

    # -- inspection -------------------------------------------------------

    def terms(self) -> dict[Monomial, Scalar]:
        return {unpack(k): c for k, c in self._terms.items()}

    def items(self) -> Iterator[tuple[Monomial, Scalar]]:
        for k in sorted(self._terms, reverse=True):
            yield unpack(k), self._terms[k]

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._deg is None:
            self._deg = max((sum(unpack(k)) for k in self._terms), default=-1)
        return self._deg

    def degree_in(self, var: Var) -> int:
        return max((_exp(k, var) for k in self._terms), default=-1)

    def variables(self) -> frozenset[Var]:
        used = set()
        for k in self._terms:
            for v in Var:
                if _exp(k, v):
                    used.add(v)
        return frozenset(used)

    def coeff(self, mono: Monomial) -> Scalar:
        return self._terms.get(pack(mono), 0)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self._terms.values())

    def constant_value(self) -> Scalar:
        if any(k for k in self._terms):
            raise ValueError("polynomial is not constant")
        return self._terms.get(0, 0)

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.const(other)
        return None

    def __add__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_add(self, o)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_add(self, -o)

    def __rsub__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_add(o, -self)

    def __mul__(self, other) -> Poly:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return poly_mul(self, o)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> Poly:
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c: Scalar) -> Poly:
        c = _check_scalar(c)
        if not c:
            return Poly()
        return Poly._raw({k: _norm(v * c) for k, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        from .render import poly_text

        return f"Poly({poly_text(self)!r})"

    # -- transformations ----------------------------------------------------

    def swap_pq(self) -> Poly:
        out = {}
        for k, c in self._terms.items():
            ep = _exp(k, Var.P)
            eq = _exp(k, Var.Q)
            nk = k - (ep << Var.P.shift) - eq + (eq << Var.P.shift) + ep
            out[nk] = c
        return Poly._raw(out)

    def map_coeffs(self, fn) -> Poly:
        out = {}
        for k, c in self._terms.items():
            v = _norm(_check_scalar(fn(c)))
            if v:
                out[k] = v
        return Poly._raw(out)

    def split_by(self, var: Var) -> dict[int, Poly]:
        """Group terms by the exponent of ``var``; values have ``var`` removed."""
        groups: dict[int, dict[int, Scalar]] = {}
        shift = var.shift
        for k, c in self._terms.items():
            e = (k >> shift) & FIELD_MASK
            groups.setdefault(e, {})[k - (e << shift)] = c
        return {e: Poly._raw(t) for e, t in groups.items()}

    def evaluate(self, n: int, p: Scalar) -> Fraction:
        """Exact value at ``(n, p)`` with ``q = 1 - p`` and ``s = p*q``."""
        p = Fraction(p)
        a, b = p.numerator, p.denominator
        if self.is_integral():
            num, den = _kernels.eval_terms(self._terms, n, a, b)
            return Fraction(num, den)
        scale = lcm(*(c.denominator for c in self._terms.values() if isinstance(c, Fraction)))
        scaled = {k: int(c * scale) for k, c in self._terms.items()}
        num, den = _kernels.eval_terms(scaled, n, a, b)
        return Fraction(num, den * scale)

    def evaluate_at(self, values: Mapping[Var, Scalar]) -> Scalar:
        """Exact value with every variable in the support given explicitly."""
        total: Scalar = 0
        for mono, c in self.items():
            term = Fraction(c)
            for v, e in zip(Var, mono):
                if e:
                    if v not in values:
                        raise KeyError(f"no value for variable {VAR_NAMES[v]}")
                    term *= Fraction(values[v]) ** e
            total += term
        return _norm(Fraction(total))


N = Poly.var(Var.N)
S = Poly.var(Var.S)
P = Poly.var(Var.P)
Q = Poly.var(Var.Q)
ONE = Poly.const(1)
ZERO = Poly()


def poly_add(a: Poly, b: Poly) -> Poly:
    if len(a._terms) < len(b._terms):
        a, b = b, a
    out = dict(a._terms)
    for k, c in b._terms.items():
        v = _norm(out.get(k, 0) + c)
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return Poly._raw(out)


def _check_headroom(a: Poly, b: Poly) -> None:
    if a.degree() + b.degree() <= _MAX_EXP:
        return
    for v in Var:
        if a.degree_in(v) + b.degree_in(v) > _MAX_EXP:
            raise OverflowError(f"exponent of {VAR_NAMES[v]} exceeds {_MAX_EXP}")


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a._terms or not b._terms:
        return ZERO
    _check_headroom(a, b)
    out = _kernels.mul_terms(a._terms, b._terms)
    if not (a.is_integral() and b.is_integral()):
        out = {k: _norm(c) for k, c in out.items()}
    return Poly._raw(out)


def substitute(a: Poly, var: Var, value: Poly | Scalar) -> Poly:
    """Replace every occurrence of ``var`` in ``a`` by ``value``."""
    if not isinstance(value, Poly):
        value = Poly.const(value)
    groups = a.split_by(var)
    if set(groups) <= {0}:
        return a
    result = ZERO
    power = ONE
    for e in range(max(groups) + 1):
        if e in groups:
            result = result + groups[e] * power
        if e < max(groups):
            power = power * value
    return result


def exact_div(a: Poly, b: Poly) -> Poly:
    """Quotient ``c`` with ``a == b*c``; raises :class:`DivisibilityError` otherwise.

    Leading-term division in lex order n > s > p > q. Coefficient division is
    over the rationals, so only monomial non-divisibility or a nonzero
    remainder can fail.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    lead_b = max(b._terms)
    lb = unpack(lead_b)
    cb = b._terms[lead_b]
    rem = dict(a._terms)
    quot: dict[int, Scalar] = {}
    while rem:
        lead_r = max(rem)
        lr = unpack(lead_r)
        if any(x < y for x, y in zip(lr, lb)):
            raise DivisibilityError("divisor does not divide dividend exactly")
        cr = rem[lead_r]
        if isinstance(cr, int) and isinstance(cb, int) and cr % cb == 0:
            c = cr // cb
        else:
            c = _norm(Fraction(cr) / cb)
        shift = lead_r - lead_b
        quot[shift] = c
        for kb, vb in b._terms.items():
            k = kb + shift
            v = _norm(rem.get(k, 0) - c * vb)
            if v:
                rem[k] = v
            else:
                rem.pop(k, None)
    return Poly._raw(quot)


@dataclass(frozen=True)
class RationalFn:
    """Numerator/denominator pair, used only until an exact division clears it."""

    numerator: Poly
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ZeroDivisionError("RationalFn with zero denominator")

    def __mul__(self, other: Poly) -> RationalFn:
        return RationalFn(self.numerator * other, self.denominator)

    def to_poly(self) -> Poly:
        return exact_div(self.numerator, self.denominator)


def is_symmetric_pq(a: Poly) -> bool:
    return a.swap_pq() == a


def is_antisymmetric_pq(a: Poly) -> bool:
    return a.swap_pq() == -a


@dataclass(frozen=True)
class ElementaryForm:
    """A p/q-symmetric polynomial written in ``e1 = p + q`` and ``e2 = p*q``.

    ``coeffs[m]`` is the coefficient of ``e1**m``; it is a polynomial in n
    and s, where s plays the role of e2.
    """

    coeffs: Mapping[int, Poly]

    def at_unit_sum(self) -> Poly:
        """Substitute ``e1 -> 1``, leaving a polynomial in n and s."""
        result = ZERO
        for c in self.coeffs.values():
            result = result + c
        return result

    def expand(self) -> Poly:
        """Substitute back ``e1 -> p + q`` and ``e2 -> p*q``."""
        e1 = P + Q
        result = ZERO
        for m, c in self.coeffs.items():
            result = result + substitute(c, Var.S, P * Q) * e1**m
        return result


def symmetrize_pq(a: Poly) -> ElementaryForm:
    """Rewrite a p/q-symmetric polynomial in the elementary symmetric functions.

    The n/s part of each monomial is treated as a coefficient. For each
    coefficient class the lex-leading ``p**i q**j`` (necessarily ``i >= j``)
    is cancelled by subtracting ``c * e1**(i-j) * e2**j`` until nothing is left.
    """
    if not is_symmetric_pq(a):
        raise AsymmetryError("polynomial is not symmetric under p <-> q")
    pq_mask = (FIELD_MASK << Var.P.shift) | FIELD_MASK
    groups: dict[int, dict[tuple[int, int], Scalar]] = {}
    for k, c in a._terms.items():
        groups.setdefault(k & ~pq_mask, {})[(_exp(k, Var.P), _exp(k, Var.Q))] = c

    out: dict[int, dict[int, Scalar]] = {}
    for rest, biv in groups.items():
        while biv:
            i, j = max(biv)
            c = biv[(i, j)]
            if i < j:
                raise AsymmetryError("leading monomial has p-degree below q-degree")
            m = i - j
            for t in range(m + 1):
                mono = (t + j, m - t + j)
                v = _norm(biv.get(mono, 0) - c * comb(m, t))
                if v:
                    biv[mono] = v
                else:
                    biv.pop(mono, None)
            key = rest + (j << Var.S.shift)
            bucket = out.setdefault(m, {})
            v = _norm(bucket.get(key, 0) + c)
            if v:
                bucket[key] = v
            else:
                bucket.pop(key, None)
    return ElementaryForm({m: Poly._raw(t) for m, t in sorted(out.items()) if t})


@lru_cache(maxsize=None)
def _p_power_normal_form(e: int) -> tuple[Poly, Poly]:
    """``(A, B)`` in Z[s] with ``p**e == A*p + B`` modulo ``p**2 - p + s``."""
    if e == 0:
        return ZERO, ONE
    if e == 1:
        return ONE, ZERO
    a, b = _p_power_normal_form(e - 1)
    # p * (A p + B) = A (p - s) + B p
    return a + b, -(a * S)


def reduce_mod_variance(a: Poly) -> Poly:
    """Normal form of ``a`` modulo ``p**2 - p + s``: no p-exponent above 1."""
    groups = a.split_by(Var.P)
    if max(groups, default=0) < 2:
        return a
    result = ZERO
    for e, rest in groups.items():
        if e < 2:
            result = result + rest * P**e
        else:
            ca, cb = _p_power_normal_form(e)
            result = result + rest * (ca * P + cb)
    return result


def pq_to_p(a: Poly) -> Poly:
    """Eliminate q and s using ``q = 1 - p`` and ``s = p - p**2``."""
    return substitute(substitute(a, Var.Q, 1 - P), Var.S, P - P * P)
