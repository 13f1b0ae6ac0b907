"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; the lines are printed in
the terminal summary (see conftest.py) or, when this file is executed as a
script, directly.
"""

import csv
import io
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from binmoments import checks
from binmoments.moments import clear_caches
from binmoments.oracle import oracle_moment

GOLDEN = Path(__file__).parent / "golden"
VERDICTS: list[str] = []

ORACLE_ROUTES = {
    "factorial-moment",
    "raw-factorial",
    "raw-counting",
    "central-stable",
    "central-fast",
    "central-raw-expansion",
    "central-alg1",
    "central-alg2",
}


def cli(*argv: str) -> str:
    done = subprocess.run([sys.executable, "-m", "binmoments", *argv], capture_output=True, text=True, check=True)
    return done.stdout


def verdict(number: int, title: str, ok: bool, seconds: float, limit: float | None, detail: str = "") -> None:
    timing = f"{seconds:.2f}s" + (f" (limit {limit:g}s)" if limit else "")
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {timing}" + (f"; {detail}" if detail else "")
    VERDICTS.append(line)
    print(line)


def failures(results) -> list[str]:
    return [f"{r.name}: {f}" for r in results for f in r.failures]


def test_1_table2_reproduction():
    t0 = time.perf_counter()
    mismatched = []
    for d in range(2, 11):
        out = cli("derive", "--kind", "central", "--basis", "variance", "--d", str(d), "--format", "latex")
        if out != (GOLDEN / f"table2_central_d{d:02d}.tex").read_text():
            mismatched.append(d)
    elapsed = time.perf_counter() - t0
    d10 = cli("derive", "--kind", "central", "--basis", "variance", "--d", "10", "--format", "latex")
    coeffs_ok = all(c in d10 for c in ("945 n^{5}", "44100", "303660", "623376", "362880"))
    ok = not mismatched and coeffs_ok and elapsed < 5
    verdict(1, "central table, variance basis, d=2..10 byte-matches golden", ok, elapsed, 5, f"mismatched rows {mismatched}" if mismatched else "")
    assert ok


def test_2_table1_reproduction():
    t0 = time.perf_counter()
    mismatched = []
    for d in range(2, 11):
        out = cli("derive", "--kind", "raw", "--d", str(d), "--format", "latex")
        if out != (GOLDEN / f"table1_raw_d{d:02d}.tex").read_text():
            mismatched.append(d)
    elapsed = time.perf_counter() - t0
    d10 = cli("derive", "--kind", "raw", "--d", "10", "--format", "latex")
    wanted = [3628800, 16329600, 30240000, 29635200, 16435440, 5103000, 818520, 55980, 1022]
    leading = [int(term.split(" ")[0]) for term in d10.strip().split(" + ")[:-1]]
    coeffs_ok = leading == wanted and d10.strip().endswith(r"+ p {\binom{n}{1}}")
    ok = not mismatched and coeffs_ok and elapsed < 5
    verdict(2, "raw table d=2..10 matches golden (content-keyed)", ok, elapsed, 5, f"mismatched rows {mismatched}" if mismatched else "")
    assert ok


def test_3_oracle_equivalence():
    clear_caches()
    t0 = time.perf_counter()
    results = checks.check_oracle(dmax=10, nmax=12)
    elapsed = time.perf_counter() - t0
    names = {r.name.split(":", 1)[1] for r in results}
    cases = sum(r.cases for r in results)
    ok = names == ORACLE_ROUTES and all(r.ok for r in results) and elapsed < 60
    verdict(3, "all routes equal the oracle, n<=12, d<=10, 6 values of p", ok, elapsed, 60, f"{cases} exact comparisons")
    assert names == ORACLE_ROUTES
    assert not failures(results)
    assert elapsed < 60


def test_4_route_identity():
    clear_caches()
    t0 = time.perf_counter()
    results = checks.check_routes(12) + checks.check_algs(12)
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in results) and elapsed < 60
    verdict(4, "central routes identical in Z[n,p], alg1 == alg2, d<=12", ok, elapsed, 60)
    assert not failures(results)
    assert elapsed < 60


def test_5_structure():
    t0 = time.perf_counter()
    results = checks.check_symmetry(12)
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in results)
    verdict(5, "p/q parity of the stable form, variance bodies free of p and q, d<=12", ok, elapsed, None)
    assert not failures(results)


@pytest.mark.slow
def test_6_bound_inequalities():
    t0 = time.perf_counter()
    results, summary = checks.check_bounds(16, 64)
    elapsed = time.perf_counter() - t0
    band = summary.ratio_band()
    ok = all(r.ok for r in results) and elapsed < 300
    cases = sum(r.cases for r in results)
    verdict(
        6,
        "exact upper and lower inequalities, even d<=16, n<=64",
        ok,
        elapsed,
        300,
        f"{cases} exact comparisons; ratio band [{band[0]:.6f}, {band[1]:.6f}] (reported, not asserted)",
    )
    assert not failures(results)
    assert elapsed < 300


def test_7_combinatorial_identities():
    t0 = time.perf_counter()
    results = checks.check_combinatorics(dmax=12, xmax=12, mmax=10)
    elapsed = time.perf_counter() - t0
    ok = all(r.ok for r in results)
    verdict(7, "falling-power base change and ordered partition counts", ok, elapsed, None)
    assert not failures(results)


def test_8_figure_data():
    t0 = time.perf_counter()
    out = cli("figure-data", "--d", "6", "--exact")
    rows = list(csv.DictReader(io.StringIO(out)))
    grid_ok = len(rows) == 100 * 21 and {int(r["n"]) for r in rows} == set(range(100))
    rng = random.Random(20240606)
    bad = []
    for row in rng.sample(rows, 20):
        n, p = int(row["n"]), Fraction(row["p"])
        truth = oracle_moment(n, p, 6, "central")
        if Fraction(row["exact"]) != truth or float(row["value"]) != pytest.approx(float(truth), rel=1e-14, abs=0):
            bad.append((n, str(p)))
    elapsed = time.perf_counter() - t0
    ok = grid_ok and not bad
    verdict(8, "figure grid d=6, n=0..99: 20 random points equal the oracle", ok, elapsed, None, f"mismatches {bad}" if bad else "")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
