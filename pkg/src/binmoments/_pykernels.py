"""Pure-Python implementations of the hot kernels.

Polynomials reach these functions as ``{packed_key: coefficient}`` dicts.
A packed key stores four 16-bit exponent fields, ``n`` in the most
significant slot followed by ``s``, ``p`` and ``q``, so multiplying two
monomials is a single integer addition and comparing keys is lex order.
"""

from __future__ import annotations

from math import comb

FIELD_BITS = 16
FIELD_MASK = (1 << FIELD_BITS) - 1


def mul_terms(a: dict, b: dict) -> dict:
    if len(a) > len(b):
        a, b = b, a
    out: dict = {}
    get = out.get
    b_items = list(b.items())
    for ka, ca in a.items():
        for kb, cb in b_items:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def eval_terms(terms: dict, n: int, a: int, b: int) -> tuple[int, int]:
    """Evaluate integer-coefficient terms at ``p = a/b``, ``q = 1 - p``, ``s = p*q``.

    Returns ``(numerator, denominator)`` with denominator ``b**D`` where D
    is the largest weight ``deg_p + deg_q + 2*deg_s`` present.
    """
    if not terms:
        return 0, 1
    c_ = b - a
    s_ = a * c_
    weights = {}
    top = 0
    for key in terms:
        w = ((key >> FIELD_BITS) & FIELD_MASK) + (key & FIELD_MASK) + 2 * ((key >> 2 * FIELD_BITS) & FIELD_MASK)
        weights[key] = w
        if w > top:
            top = w
    total = 0
    for key, coeff in terms.items():
        en = key >> 3 * FIELD_BITS
        es = (key >> 2 * FIELD_BITS) & FIELD_MASK
        ep = (key >> FIELD_BITS) & FIELD_MASK
        eq = key & FIELD_MASK
        total += coeff * n**en * s_**es * a**ep * c_**eq * b ** (top - weights[key])
    return total, b**top


def stirling_table(m_max: int, min_block: int) -> list[list[int]]:
    """Rows 0..m_max of partition counts into blocks of size >= min_block.

    Uses ``T(m, j) = j*T(m-1, j) + C(m-1, r-1)*T(m-r, j-1)`` with ``r = min_block``.
    """
    r = min_block
    rows: list[list[int]] = []
    for m in range(m_max + 1):
        row = [0] * (m + 1)
        if m == 0:
            row[0] = 1
        else:
            prev = rows[m - 1]
            back = rows[m - r] if m >= r else None
            w = comb(m - 1, r - 1)
            for j in range(1, m + 1):
                v = j * prev[j] if j < len(prev) else 0
                if back is not None and j - 1 < len(back):
                    v += w * back[j - 1]
                row[j] = v
        rows.append(row)
    return rows
