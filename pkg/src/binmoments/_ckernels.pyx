# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_pykernels``; same contracts."""

import array
from math import comb

cdef enum:
    FIELD_BITS = 16
    FIELD_MASK = 0xFFFF


def mul_terms(dict a, dict b):
    cdef Py_ssize_t i, nb
    cdef unsigned long long ka_c, k_c
    cdef unsigned long long[::1] bkeys
    cdef list bcoeffs
    cdef dict out = {}
    cdef object ca, acc, k
    if len(a) > len(b):
        a, b = b, a
    nb = len(b)
    if nb == 0:
        return out
    bkeys = array.array("Q", b.keys())
    bcoeffs = list(b.values())
    for ka, ca in a.items():
        ka_c = ka
        for i in range(nb):
            k_c = ka_c + bkeys[i]
            k = k_c
            acc = out.get(k)
            if acc is None:
                out[k] = ca * bcoeffs[i]
            else:
                out[k] = acc + ca * bcoeffs[i]
    return {k: c for k, c in out.items() if c}


def eval_terms(dict terms, object n, object a, object b):
    cdef unsigned long long key
    cdef int en, es, ep, eq, w, top = 0
    cdef object total = 0, c_, s_
    cdef list npow, spow, apow, cpow, bpow
    if not terms:
        return 0, 1
    c_ = b - a
    s_ = a * c_
    cdef int mn = 0, ms = 0, mp = 0, mq = 0
    for k in terms:
        key = k
        en = key >> (3 * FIELD_BITS)
        es = (key >> (2 * FIELD_BITS)) & FIELD_MASK
        ep = (key >> FIELD_BITS) & FIELD_MASK
        eq = key & FIELD_MASK
        if en > mn: mn = en
        if es > ms: ms = es
        if ep > mp: mp = ep
        if eq > mq: mq = eq
        w = ep + eq + 2 * es
        if w > top: top = w
    npow = _powers(n, mn)
    spow = _powers(s_, ms)
    apow = _powers(a, mp)
    cpow = _powers(c_, mq)
    bpow = _powers(b, top)
    for k, coeff in terms.items():
        key = k
        en = key >> (3 * FIELD_BITS)
        es = (key >> (2 * FIELD_BITS)) & FIELD_MASK
        ep = (key >> FIELD_BITS) & FIELD_MASK
        eq = key & FIELD_MASK
        w = ep + eq + 2 * es
        total += coeff * npow[en] * spow[es] * apow[ep] * cpow[eq] * bpow[top - w]
    return total, bpow[top]


cdef list _powers(object x, int m):
    cdef list out = [1] * (m + 1)
    cdef int i
    for i in range(1, m + 1):
        out[i] = out[i - 1] * x
    return out


def stirling_table(int m_max, int min_block):
    cdef int r = min_block, m, j
    cdef list rows = [], row, prev, back
    cdef object v, w
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
                    v = v + w * back[j - 1]
                row[j] = v
        rows.append(row)
    return rows
