from fractions import Fraction
from itertools import product
from math import factorial

import pytest

from binmoments.combinatorics import (
    StirlingTable,
    assoc_stirling2,
    binom,
    compositions,
    compositions_min2,
    falling_power,
    multinomial,
    ordered_partition_count,
    stirling2,
)
from binmoments.poly import N, Poly


def set_partitions(items):
    """Every partition of ``items`` into blocks, by brute recursion."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def brute_partition_count(m, j, min_block=1):
    return sum(
        1
        for part in set_partitions(list(range(m)))
        if len(part) == j and all(len(b) >= min_block for b in part)
    )


def test_binom_examples():
    assert binom(5, 2) == 10
    assert binom(3, 5) == 0
    assert binom(N, 2) == Poly({(2, 0, 0, 0): Fraction(1, 2), (1, 0, 0, 0): Fraction(-1, 2)})
    with pytest.raises(ValueError):
        binom(4, -1)


def test_binom_poly_takes_integer_values():
    for k in range(6):
        b = binom(N, k)
        for n in range(10):
            assert b.evaluate(n, 0) == binom(n, k)


def test_multinomial_examples():
    assert multinomial(4, [2, 2]) == 6
    assert multinomial(4, [2, 1]) == 0
    assert multinomial(6, [2, 2, 2]) == factorial(6) // (factorial(2) ** 3) == 90
    assert multinomial(3, [4, -1]) == 0


def test_falling_power_examples():
    assert falling_power(5, 2) == 20
    assert falling_power(N, 0) == Poly.const(1)
    assert falling_power(3, 5) == 0
    assert falling_power(N, 3) == N * (N - 1) * (N - 2)


def test_stirling_examples():
    assert stirling2(4, 2) == brute_partition_count(4, 2) == 7
    assert stirling2(3, 3) == 1
    assert stirling2(5, 0) == 0
    assert stirling2(0, 0) == 1


def test_assoc_stirling_examples():
    assert assoc_stirling2(4, 2) == brute_partition_count(4, 2, 2) == 3
    assert assoc_stirling2(6, 3) == brute_partition_count(6, 3, 2) == 15
    assert assoc_stirling2(3, 2) == 0


@pytest.mark.parametrize("m", range(0, 11))
def test_stirling_tables_match_enumeration(m):
    for j in range(m + 1):
        assert stirling2(m, j) == brute_partition_count(m, j)
        assert assoc_stirling2(m, j) == brute_partition_count(m, j, 2)


def test_table_invariants():
    bell = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975, 678570, 4213597]
    for m in range(13):
        assert sum(stirling2(m, j) for j in range(m + 1)) == bell[m]
        for j in range(13):
            assert assoc_stirling2(m, j) <= stirling2(m, j)
            if j > m:
                assert stirling2(m, j) == 0
            if m < 2 * j:
                assert assoc_stirling2(m, j) == 0


def test_table_grows_on_demand():
    t = StirlingTable(1, initial=2)
    assert t(30, 3) == stirling2(30, 3)
    assert t.row(5) == [stirling2(5, j) for j in range(6)]


def test_compositions_examples():
    assert [c.parts for c in compositions_min2(4, 2)] == [(2, 2)]
    assert [c.parts for c in compositions_min2(6, 2)] == [(2, 4), (3, 3), (4, 2)]
    assert list(compositions_min2(5, 3)) == []


@pytest.mark.parametrize("min_part", [1, 2])
def test_compositions_match_brute_force(min_part):
    for d in range(0, 11):
        for k in range(0, 6):
            brute = sorted(t for t in product(range(min_part, d + 1), repeat=k) if sum(t) == d)
            got = [c.parts for c in compositions(d, k, min_part)]
            assert got == brute
            assert all(c.d == d and c.k == k for c in compositions(d, k, min_part))


def test_base_change_identity():
    for m in range(11):
        for x in range(13):
            assert sum(stirling2(m, j) * falling_power(x, j) for j in range(m + 1)) == x**m


def test_ordered_partition_counts():
    for d in range(1, 13):
        for k in range(1, d + 1):
            assert ordered_partition_count(d, k, 1) == factorial(k) * stirling2(d, k)
            assert ordered_partition_count(d, k, 2) == factorial(k) * assoc_stirling2(d, k)
