"""Text, LaTeX and JSON renderings of polynomials and formulas.

Canonical layout: terms are collected as a polynomial in n (highest power
first) whose coefficients are polynomials in s, p, q listed in graded lex
order, e.g. ``15*n^3*s2^3 + n^2*(-130*s2^3 + 25*s2^2) + ...``. In text
``s`` prints as ``s2`` (sigma squared); in LaTeX ``s^k`` prints as
``\\sigma^{2k}``. Raw and factorial moments are shown in the falling-power
basis of n, the way tables of raw moments are usually printed.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .combinatorics import stirling2
from .moments import FormulaDoc, MomentQuery
from .poly import FIELD_MASK, N, P, DivisibilityError, Poly, Var, exact_div, pack

FORMATS = ("text", "latex", "json")

_ORDER_TEXT = ("n", "s2", "p", "q")
_ODD_TEXT = "(1-2*p)"
_ODD_LATEX = r"\left(- 2 p + 1\right)"


def _graded_key(mono):
    _, s, p, q = mono
    return (s + p + q, s, p, q)


def _sorted_inner(poly: Poly):
    return sorted(poly.items(), key=lambda t: _graded_key(t[0]), reverse=True)


# -- text ------------------------------------------------------------------------


def _text_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"({c})"
    return str(c)


def _text_monomial(c, mono) -> str:
    factors = []
    for name, e in zip(_ORDER_TEXT, mono):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    if not factors:
        return _text_coeff(c)
    if c == 1:
        return "*".join(factors)
    if c == -1:
        return "-" + "*".join(factors)
    return _text_coeff(c) + "*" + "*".join(factors)


def _join_signed(items: list[str], minus: str = " - ", plus: str = " + ", lead_minus: str = "-") -> str:
    out = ""
    for i, t in enumerate(items):
        neg = t.startswith("-")
        body = t[1:] if neg else t
        if i == 0:
            out = (lead_minus + body) if neg else body
        else:
            out += (minus if neg else plus) + body
    return out


def _collected(poly: Poly, mono_fn, group_fn, join_fn) -> str:
    if poly.is_zero():
        return "0"
    items: list[str] = []
    groups = poly.split_by(Var.N)
    for e in sorted(groups, reverse=True):
        inner = groups[e]
        terms = _sorted_inner(inner)
        if e == 0:
            items.extend(mono_fn(c, m) for m, c in terms)
        elif len(terms) == 1:
            (m, c), = terms
            items.append(mono_fn(c, (e,) + m[1:]))
        else:
            items.append(group_fn(e, join_fn([mono_fn(c, m) for m, c in terms])))
    return join_fn(items)


def poly_text(poly: Poly) -> str:
    def group(e, inner):
        return ("n" if e == 1 else f"n^{e}") + f"*({inner})"

    return _collected(poly, _text_monomial, group, _join_signed)


# -- latex -----------------------------------------------------------------------


def _latex_coeff(c) -> str:
    if isinstance(c, Fraction):
        return rf"\frac{{{abs(c.numerator)}}}{{{c.denominator}}}"
    return str(abs(c))


def _latex_monomial(c, mono) -> str:
    factors = []
    n, s, p, q = mono
    if n:
        factors.append("n" if n == 1 else f"n^{{{n}}}")
    if s:
        factors.append(rf"\sigma^{{{2 * s}}}")
    if p:
        factors.append("p" if p == 1 else f"p^{{{p}}}")
    if q:
        factors.append("q" if q == 1 else f"q^{{{q}}}")
    sign = "-" if c < 0 else ""
    if not factors:
        return sign + _latex_coeff(c)
    if abs(c) == 1:
        return sign + " ".join(factors)
    return sign + _latex_coeff(c) + " " + " ".join(factors)


def _latex_join(items: list[str]) -> str:
    return _join_signed(items, lead_minus="- ")


def poly_latex(poly: Poly) -> str:
    def group(e, inner):
        return ("n" if e == 1 else f"n^{{{e}}}") + rf" \left({inner}\right)"

    return _collected(poly, _latex_monomial, group, _latex_join)


# -- falling-power basis (raw / factorial moments) ---------------------------------


def falling_basis(poly: Poly) -> dict[int, dict[int, object]]:
    """``{k: {j: c}}`` with ``poly == sum c * n^(j falling) * p^k``; poly in n, p only."""
    if not poly.variables() <= {Var.N, Var.P}:
        raise ValueError("falling-power layout needs a polynomial in n and p only")
    out: dict[int, dict[int, object]] = {}
    for k, inner in poly.split_by(Var.P).items():
        row: dict[int, object] = {}
        for (m, _, _, _), c in inner.items():
            for j in range(m + 1):
                w = stirling2(m, j)
                if w:
                    row[j] = row.get(j, 0) + c * w
        row = {j: c for j, c in row.items() if c}
        if row:
            out[k] = row
    return out


def _falling_text(j: int) -> str:
    return "*".join(["n"] + [f"(n-{i})" for i in range(1, j)]) if j else ""


def falling_text(poly: Poly) -> str:
    fb = falling_basis(poly)
    if not fb:
        return "0"
    items = []
    for k in sorted(fb):
        row = fb[k]
        pk = "" if k == 0 else ("p" if k == 1 else f"p^{k}")
        parts = []
        for j in sorted(row, reverse=True):
            c = row[j]
            ff = _falling_text(j)
            if not ff:
                parts.append(_text_coeff(c))
            elif c == 1:
                parts.append(ff)
            elif c == -1:
                parts.append("-" + ff)
            else:
                parts.append(f"{_text_coeff(c)}*{ff}")
        if len(parts) == 1:
            single = parts[0]
            if not pk:
                items.append(single)
            elif single in ("1", "-1"):
                items.append(single[:-1] + pk)
            else:
                items.append(f"{single}*{pk}")
        else:
            inner = _join_signed(parts)
            items.append(f"({inner})*{pk}" if pk else inner)
    return _join_signed(items)


def falling_latex(poly: Poly) -> str:
    fb = falling_basis(poly)
    if not fb:
        return "0"
    items = []
    for k in sorted(fb, reverse=True):
        row = fb[k]
        pk = "" if k == 0 else ("p" if k == 1 else f"p^{{{k}}}")
        parts = []
        for j in sorted(row, reverse=True):
            c = row[j] * _factorial(j)
            b = rf"{{\binom{{n}}{{{j}}}}}" if j else ""
            parts.append((c, b))
        if len(parts) == 1:
            c, b = parts[0]
            sign = "-" if c < 0 else ""
            factors = [f for f in (pk, b) if f]
            if not factors:
                items.append(sign + _latex_coeff(c))
            elif abs(c) == 1:
                items.append(sign + " ".join(factors))
            else:
                items.append(sign + _latex_coeff(c) + " " + " ".join(factors))
        else:
            inner = _latex_join([("-" if c < 0 else "") + " ".join(x for x in (_latex_coeff(c), b) if x) for c, b in parts])
            items.append(rf"{pk} \left({inner}\right)" if pk else inner)
    return _latex_join(items)


def _factorial(j: int) -> int:
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


# -- formulas --------------------------------------------------------------------

_VARIANCE_CUT = N * P * (1 - P)


def _p_basis_parts(doc: FormulaDoc) -> tuple[Poly, Poly | None]:
    f = doc.in_np()
    if f.is_zero():
        return f, None
    try:
        return f, exact_div(f, _VARIANCE_CUT)
    except DivisibilityError:
        return f, None


def formula_text(doc: FormulaDoc) -> str:
    q = doc.query
    if q.kind in ("raw", "factorial"):
        return falling_text(doc.in_np())
    if q.basis == "p":
        f, cof = _p_basis_parts(doc)
        if cof is None:
            return poly_text(f)
        return "n*p*(1-p)" if cof == 1 else f"n*p*(1-p)*({poly_text(cof)})"
    body = poly_text(doc.body)
    if not doc.odd_factor:
        return body
    if doc.body.is_zero():
        return "0"
    if len(doc.body) == 1:
        return f"{body}*{_ODD_TEXT}"
    return f"{_ODD_TEXT}*({body})"


def formula_latex(doc: FormulaDoc) -> str:
    q = doc.query
    if q.kind in ("raw", "factorial"):
        return falling_latex(doc.in_np())
    if q.basis == "p":
        f, cof = _p_basis_parts(doc)
        if cof is None:
            return poly_latex(f)
        head = r"n p \left(1 - p\right)"
        return head if cof == 1 else rf"{head} \left({poly_latex(cof)}\right)"
    body = poly_latex(doc.body)
    if not doc.odd_factor:
        return body
    if doc.body.is_zero():
        return "0"
    if len(doc.body) == 1:
        return f"{body} {_ODD_LATEX}"
    return rf"{_ODD_LATEX} \left({body}\right)"


def _coeff_str(c) -> str:
    return str(c)


def _parse_coeff(s: str):
    v = Fraction(s)
    return v.numerator if v.denominator == 1 else v


def poly_to_obj(poly: Poly) -> list:
    return [[list(m), _coeff_str(c)] for m, c in poly.items()]


def poly_from_obj(obj: list) -> Poly:
    terms = {}
    for mono, c in obj:
        m = tuple(int(x) for x in mono)
        if m in terms:
            raise ValueError(f"duplicate monomial {m}")
        if any(not 0 <= x <= FIELD_MASK for x in m):
            raise ValueError(f"exponent out of range in {m}")
        pack(m)
        terms[m] = _parse_coeff(c)
    return Poly(terms)


def formula_obj(doc: FormulaDoc) -> dict:
    q = doc.query
    return {
        "kind": q.kind,
        "d": q.d,
        "basis": q.basis,
        "method": q.method,
        "odd_factor": doc.odd_factor,
        "provenance": doc.provenance,
        "vars": ["n", "s", "p", "q"],
        "terms": poly_to_obj(doc.body),
        "text": formula_text(doc),
    }


def formula_json(doc: FormulaDoc) -> str:
    return json.dumps(formula_obj(doc), ensure_ascii=True)


def formula_from_obj(obj: dict) -> FormulaDoc:
    if obj.get("vars", ["n", "s", "p", "q"]) != ["n", "s", "p", "q"]:
        raise ValueError(f"unsupported variable order {obj.get('vars')!r}")
    query = MomentQuery(obj["kind"], int(obj["d"]), obj.get("basis", "p"), obj.get("method"))
    return FormulaDoc(query, poly_from_obj(obj["terms"]), bool(obj.get("odd_factor", False)), obj.get("provenance", ""))


def formula_from_json(text: str) -> FormulaDoc:
    return formula_from_obj(json.loads(text))


def render(doc: FormulaDoc, fmt: str = "text") -> str:
    if fmt == "text":
        return formula_text(doc)
    if fmt == "latex":
        return formula_latex(doc)
    if fmt == "json":
        return formula_json(doc)
    raise ValueError(f"unknown format {fmt!r}")
