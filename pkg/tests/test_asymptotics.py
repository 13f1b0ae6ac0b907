import math
from fractions import Fraction

import pytest

from binmoments import asymptotics as asy
from binmoments.moments import DomainError
from binmoments.oracle import oracle_moment


def test_envelope_examples():
    assert asy.envelope(1, 1, 4) == pytest.approx(math.sqrt(2), rel=1e-15)
    # n sigma2 = 16
    candidates = {k: k ** (1 - k / 8) * 16 ** (k / 8) for k in (2, 3, 4)}
    assert max(candidates, key=candidates.get) == 4
    assert asy.envelope(16, 1, 8) == pytest.approx(8.0, rel=1e-15)
    assert asy.envelope_argmax(16, 1, 8) == 4
    assert asy.envelope(5, 0, 6) == 0


def test_envelope_d2_uses_first_term():
    assert asy.envelope_terms(3, Fraction(1, 4), 2).keys() == {1}
    assert asy.envelope(3, Fraction(1, 4), 2) == pytest.approx(math.sqrt(0.75))


@pytest.mark.parametrize("d", [4, 6, 8, 12, 16])
def test_envelope_monotone(d):
    values = [asy.envelope(n, Fraction(1, 4), d) for n in range(1, 200, 7)]
    assert values == sorted(values)


def test_envelope_domain():
    for bad in (3, 0, -2):
        with pytest.raises(DomainError):
            asy.envelope(3, Fraction(1, 4), bad)
    with pytest.raises(DomainError):
        asy.envelope(0, Fraction(1, 4), 4)


def test_balanced_compositions():
    assert asy.balanced_even_composition(4, 2) == (2, 2)
    assert asy.balanced_even_composition(6, 2) == (4, 2)
    assert asy.balanced_even_composition(6, 3) == (2, 2, 2)
    assert asy.balanced_even_composition(10, 3) == (4, 4, 2)
    for d in range(2, 21, 2):
        for k in range(1, d // 2 + 1):
            parts = asy.balanced_even_composition(d, k)
            assert sum(parts) == d and len(parts) == k
            assert all(x % 2 == 0 and x >= 2 for x in parts)
            assert max(parts) - min(parts) <= 2
    with pytest.raises(DomainError):
        asy.balanced_even_composition(6, 4)


def test_upper_examples():
    r = asy.check_upper_inequality(2, Fraction(1, 2), 4)
    assert r.holds and r.moment == Fraction(1, 2) and r.bound == Fraction(3, 2)
    for p in (Fraction(1, 10), Fraction(1, 3), Fraction(1, 2)):
        s = p * (1 - p)
        r = asy.check_upper_inequality(1, p, 4)
        assert r.moment == s - 3 * s**2 and r.bound == s and r.holds
    r = asy.check_upper_inequality(10, Fraction(1, 3), 6)
    assert r.holds
    assert r.moment == oracle_moment(10, Fraction(1, 3), 6)
    assert r.bound == 10 * Fraction(2, 9) + 45 * Fraction(2, 9) ** 2 * 64 + 120 * Fraction(2, 9) ** 3 * 729
    with pytest.raises(DomainError):
        asy.check_upper_inequality(4, Fraction(2, 3), 4)
    with pytest.raises(DomainError):
        asy.check_upper_inequality(4, Fraction(1, 3), 5)


def test_lower_examples():
    w = asy.check_lower_witness(2, Fraction(1, 2), 4, 2)
    assert w.holds and w.composition == (2, 2) and w.bound == Fraction(3, 8)
    _, bound = asy.lower_witness_bound(1, Fraction(1, 3), 6, 3)
    assert bound == 0
    with pytest.raises(DomainError):
        asy.check_lower_witness(3, 0, 4, 1)
    with pytest.raises(DomainError):
        asy.check_lower_witness(3, Fraction(1, 3), 7, 1)


def test_report_reflects_large_p():
    lo = asy.envelope_report(9, Fraction(1, 4), 6)
    hi = asy.envelope_report(9, Fraction(3, 4), 6)
    assert lo.moment == hi.moment and lo.upper_rhs == hi.upper_rhs
    assert lo.ok and hi.ok
    assert lo.ratio == pytest.approx(lo.moment_root / lo.envelope)


def test_small_grid_and_reports():
    summary = asy.bounds_grid(8, 10)
    assert summary.ok and not summary.failures
    lo, hi = summary.ratio_band()
    assert 0 < lo <= hi
    csv_text = asy.report_csv(summary.reports[:3])
    assert csv_text.splitlines()[0].startswith("n,p,d,moment,upper_rhs")
    assert '"ok": true' in asy.report_json(summary)
