"""Moment tables and the (n, p, moment) grid for surface plots."""

from __future__ import annotations

import csv
import io
import json
from decimal import Context, Decimal
from fractions import Fraction
from typing import Iterable, Iterator

from .moments import FormulaDoc, MomentQuery, central_moment_variance_form, derive
from .render import formula_latex, formula_obj, formula_text

_DEC = Context(prec=15)


def decimal15(x: Fraction) -> str:
    """Correctly rounded decimal with 15 significant digits."""
    x = Fraction(x)
    if not x:
        return "0"
    return format(_DEC.divide(Decimal(x.numerator), Decimal(x.denominator)), ".15g")


def exact_p_text(p: Fraction) -> str:
    """Plain decimal when p terminates, otherwise ``a/b``."""
    den = p.denominator
    for f in (2, 5):
        while den % f == 0:
            den //= f
    if den != 1:
        return f"{p.numerator}/{p.denominator}"
    digits = 0
    while (p * 10**digits).denominator != 1:
        digits += 1
    value = Decimal(p.numerator) / Decimal(p.denominator)
    return format(value.quantize(Decimal(1).scaleb(-digits)), "f")


def table_docs(kind: str, d_from: int, d_to: int, basis: str | None = None, method: str | None = None) -> list[FormulaDoc]:
    if basis is None:
        basis = "variance" if kind == "central" and method not in ("direct", "fast") else "p"
    return [derive(MomentQuery(kind, d, basis, method)) for d in range(d_from, d_to + 1)]


def table_text(docs: list[FormulaDoc]) -> str:
    return "".join(f"{doc.query.d}: {formula_text(doc)}\n" for doc in docs)


def _table_header(kind: str) -> str:
    if kind == "central":
        return r"$\mathbb{E}[(S-\mathbb{E}[S])^d],\quad S\sim\mathrm{Binom}(n,p)$"
    if kind == "raw":
        return r"$\mathbb{E}[S^d],\quad S\sim\mathrm{Binom}(n,p)$"
    return r"$\mathbb{E}[S^{\underline{d}}],\quad S\sim\mathrm{Binom}(n,p)$"


def table_latex(docs: list[FormulaDoc]) -> str:
    kind = docs[0].query.kind if docs else "central"
    lines = [r"\begin{tabular}{ll}", r"\toprule", rf"$d$ & {_table_header(kind)} \\", r"\midrule"]
    lines += [rf"{doc.query.d} & ${formula_latex(doc)}$ \\" for doc in docs]
    lines += [r"\bottomrule", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def table_json(docs: list[FormulaDoc]) -> str:
    return json.dumps([formula_obj(doc) for doc in docs], ensure_ascii=True) + "\n"


def table_csv(docs: list[FormulaDoc]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["d", "formula", "latex"])
    for doc in docs:
        w.writerow([doc.query.d, formula_text(doc), formula_latex(doc)])
    return buf.getvalue()


TABLE_FORMATS = {"text": table_text, "latex": table_latex, "json": table_json, "csv": table_csv}


def p_grid(steps: int) -> list[Fraction]:
    if steps < 1:
        raise ValueError("need at least one grid step")
    return [Fraction(i, steps) for i in range(steps + 1)]


def figure_rows(d: int, ns: Iterable[int], ps: Iterable[Fraction]) -> Iterator[tuple[int, Fraction, Fraction]]:
    """``(n, p, E[(S - ES)^d])`` over the grid, n-major, evaluated exactly."""
    doc = central_moment_variance_form(d, "alg2")
    ps = list(ps)
    for n in ns:
        for p in ps:
            yield n, p, doc.evaluate(n, p)


def figure_csv(d: int, ns: Iterable[int], ps: Iterable[Fraction], exact: bool = False) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "p", "value"] + (["exact"] if exact else []))
    for n, p, v in figure_rows(d, ns, ps):
        w.writerow([n, exact_p_text(p), decimal15(v)] + ([str(v)] if exact else []))
    return buf.getvalue()
