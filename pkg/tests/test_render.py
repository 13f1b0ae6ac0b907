import json
from fractions import Fraction

import pytest

from binmoments.moments import MomentQuery, derive, factorial_moment
from binmoments.poly import N, P, Q, S, Poly
from binmoments.render import (
    falling_basis,
    falling_latex,
    falling_text,
    formula_from_json,
    formula_json,
    formula_latex,
    formula_text,
    poly_latex,
    poly_text,
    render,
)


def central(d, basis="variance", method=None):
    return derive(MomentQuery("central", d, basis, method))


def test_poly_text_layout():
    assert poly_text(Poly.const(0)) == "0"
    assert poly_text(3 * N**2 * S**2 + N * (-6 * S**2 + S)) == "3*n^2*s2^2 + n*(-6*s2^2 + s2)"
    assert poly_text(-N * P + 2) == "-n*p + 2"
    assert poly_text((N * P * Q).scale(Fraction(1, 2))) == "(1/2)*n*p*q"


def test_poly_latex_layout():
    assert poly_latex(3 * N**2 * S**2 + N * (S - 6 * S**2)) == r"3 n^{2} \sigma^{4} + n \left(- 6 \sigma^{4} + \sigma^{2}\right)"
    assert poly_latex(-P + 1) == "- p + 1"
    assert poly_latex(N**3 * S**3 * 15) == r"15 n^{3} \sigma^{6}"


def test_central_renderings():
    assert formula_text(central(2)) == "n*s2"
    assert formula_text(central(3)) == "n*s2*(1-2*p)"
    assert formula_text(central(5)) == "(1-2*p)*(10*n^2*s2^2 + n*(-12*s2^2 + s2))"
    assert formula_text(central(2, "p")) == "n*p*(1-p)"
    assert formula_text(central(3, "p", "fast")) == "n*p*(1-p)*(-2*p + 1)"
    assert formula_latex(central(3)) == r"n \sigma^{2} \left(- 2 p + 1\right)"
    assert formula_text(central(1, "p")) == "0"


def test_falling_basis():
    raw3 = derive(MomentQuery("raw", 3)).in_np()
    assert falling_basis(raw3) == {1: {1: 1}, 2: {2: 3}, 3: {3: 1}}
    assert falling_text(derive(MomentQuery("raw", 2)).in_np()) == "n*p + n*(n-1)*p^2"
    assert falling_latex(derive(MomentQuery("raw", 2)).in_np()) == r"2 p^{2} {\binom{n}{2}} + p {\binom{n}{1}}"
    assert formula_text(factorial_moment(3)) == "n*(n-1)*(n-2)*p^3"
    assert falling_text(Poly.const(0)) == "0"
    with pytest.raises(ValueError):
        falling_basis(N * S)


@pytest.mark.parametrize(
    "query",
    [
        MomentQuery("central", 7, "variance"),
        MomentQuery("central", 6, "variance", "alg2"),
        MomentQuery("central", 5, "p", "direct"),
        MomentQuery("raw", 6),
        MomentQuery("factorial", 4),
    ],
)
def test_json_round_trip(query):
    doc = derive(query)
    text = formula_json(doc)
    back = formula_from_json(text)
    assert back == doc
    assert formula_json(back) == text
    obj = json.loads(text)
    assert obj["vars"] == ["n", "s", "p", "q"] and obj["text"] == formula_text(doc)


def test_json_rejects_garbage():
    obj = json.loads(formula_json(central(4)))
    obj["terms"].append(obj["terms"][0])
    with pytest.raises(ValueError):
        formula_from_json(json.dumps(obj))
    obj = json.loads(formula_json(central(4)))
    obj["vars"] = ["n", "p"]
    with pytest.raises(ValueError):
        formula_from_json(json.dumps(obj))


def test_render_dispatch():
    doc = central(4)
    assert render(doc) == formula_text(doc)
    assert render(doc, "latex") == formula_latex(doc)
    with pytest.raises(ValueError):
        render(doc, "rtf")


@pytest.mark.parametrize("d", range(2, 11))
def test_table_goldens(golden, d):
    assert formula_latex(central(d)) == (golden / f"table2_central_d{d:02d}.tex").read_text().strip()
    assert formula_latex(derive(MomentQuery("raw", d))) == (golden / f"table1_raw_d{d:02d}.tex").read_text().strip()
