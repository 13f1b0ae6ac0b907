"""Verification suites shared by the ``check`` command and the test-suite.

Each suite returns a list of :class:`CheckResult`; a suite passes when all
of its results do. Every comparison is exact.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial

from . import asymptotics
from .combinatorics import (
    assoc_stirling2,
    falling_power,
    ordered_partition_count,
    stirling2,
)
from .moments import (
    central_moment_from_raw,
    central_moment_stable,
    central_routes,
    factorial_moment,
    raw_routes,
)
from .poly import Var, is_antisymmetric_pq, is_symmetric_pq
from .oracle import oracle_moment

ORACLE_PS = (Fraction(0), Fraction(1), Fraction(1, 2), Fraction(1, 3), Fraction(2, 7), Fraction(9, 10))
BOUNDS_PS = (Fraction(1, 10), Fraction(1, 4), Fraction(1, 2))
MAX_FAILURES = 20


@dataclass
class CheckResult:
    name: str
    ok: bool = True
    cases: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, passed: bool, detail: str) -> None:
        self.cases += 1
        if not passed:
            self.ok = False
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(detail)


def check_oracle(dmax: int = 10, nmax: int = 12, ps=ORACLE_PS) -> list[CheckResult]:
    """Every derivation route evaluated against direct summation."""
    results: dict[str, CheckResult] = {}
    for d in range(dmax + 1):
        routes = {("factorial-moment", "factorial"): factorial_moment(d)}
        routes.update({(f"raw-{name}", "raw"): doc for name, doc in raw_routes(d).items()})
        routes.update({(f"central-{name}", "central"): doc for name, doc in central_routes(d).items()})
        for p in ps:
            for n in range(nmax + 1):
                truth = {kind: oracle_moment(n, p, d, kind) for kind in ("raw", "central", "factorial")}
                for (name, kind), doc in routes.items():
                    res = results.setdefault(name, CheckResult(f"oracle:{name}"))
                    got = doc.evaluate(n, p)
                    res.record(got == truth[kind], f"d={d} n={n} p={p}: formula {got} != oracle {truth[kind]}")
    return list(results.values())


def check_routes(dmax: int = 12) -> list[CheckResult]:
    """Identical canonical polynomials in Z[n, p] across routes."""
    central = CheckResult("routes:central")
    raw = CheckResult("routes:raw")
    for d in range(dmax + 1):
        polys = {name: doc.in_np() for name, doc in central_routes(d).items()}
        ref = polys["raw-expansion"]
        for name, f in polys.items():
            central.record(f == ref, f"d={d}: route {name} differs from raw expansion")
        r = raw_routes(d)
        raw.record(r["factorial"].body == r["counting"].body, f"d={d}: raw routes differ")
    return [central, raw]


def check_algs(dmax: int = 12) -> list[CheckResult]:
    res = CheckResult("algs:alg1==alg2")
    for d in range(dmax + 1):
        routes = central_routes(d)
        a, b = routes["alg1"], routes["alg2"]
        res.record(a.body == b.body and a.odd_factor == b.odd_factor, f"d={d}: symmetrization and reduction disagree")
    return [res]


def check_symmetry(dmax: int = 12) -> list[CheckResult]:
    sym = CheckResult("symmetry:p/q parity")
    var = CheckResult("symmetry:variance body in Z[n,s]")
    for d in range(dmax + 1):
        u = central_moment_stable(d).body
        test = is_symmetric_pq if d % 2 == 0 else is_antisymmetric_pq
        sym.record(test(u), f"d={d}: stable form has wrong p/q parity")
        for method in ("alg1", "alg2"):
            doc = central_routes(d)[method]
            var.record(
                doc.body.variables() <= {Var.N, Var.S} and doc.body.is_integral() and doc.odd_factor == (d % 2 == 1),
                f"d={d} {method}: body is not an integer polynomial in n, s",
            )
    return [sym, var]


def check_reflection(dmax: int = 10, nmax: int = 10, ps=(Fraction(1, 5), Fraction(1, 3), Fraction(1, 2))) -> list[CheckResult]:
    res = CheckResult("symmetry:reflection p -> 1-p")
    for d in range(dmax + 1):
        doc = central_moment_from_raw(d)
        for n in range(nmax + 1):
            for p in ps:
                res.record(doc.evaluate(n, p) == (-1) ** d * doc.evaluate(n, 1 - p), f"d={d} n={n} p={p}")
    return [res]


def check_combinatorics(dmax: int = 12, xmax: int = 12, mmax: int = 10) -> list[CheckResult]:
    base = CheckResult("combinatorics:falling-power base change")
    for m in range(mmax + 1):
        for x in range(xmax + 1):
            rhs = sum(stirling2(m, j) * falling_power(x, j) for j in range(m + 1))
            base.record(rhs == x**m, f"x={x} m={m}")
    plain = CheckResult("combinatorics:ordered partitions, parts >= 1")
    assoc = CheckResult("combinatorics:ordered partitions, parts >= 2")
    for d in range(1, dmax + 1):
        for k in range(1, d + 1):
            plain.record(ordered_partition_count(d, k, 1) == factorial(k) * stirling2(d, k), f"d={d} k={k}")
            assoc.record(ordered_partition_count(d, k, 2) == factorial(k) * assoc_stirling2(d, k), f"d={d} k={k}")
    return [base, plain, assoc]


def check_bounds(dmax: int = 16, nmax: int = 64, ps=BOUNDS_PS) -> tuple[list[CheckResult], asymptotics.BoundsSummary]:
    summary = asymptotics.bounds_grid(dmax, nmax, ps)
    upper = CheckResult("bounds:upper inequality")
    lower = CheckResult("bounds:lower witnesses")
    for r in summary.reports:
        upper.record(r.upper_holds, f"n={r.n} p={r.p} d={r.d}: {r.moment} > {r.upper_rhs}")
        for w in r.lower:
            lower.record(w.holds, f"n={r.n} p={r.p} d={r.d} k={w.k}: {r.moment} < {w.bound}")
    return [upper, lower], summary


SUITES = ("oracle", "routes", "algs", "symmetry", "combinatorics", "bounds", "all")


def run_suite(suite: str, dmax: int | None = None, nmax: int | None = None) -> dict:
    """Run a named suite and return a JSON-ready report."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    names = SUITES[:-1] if suite == "all" else (suite,)
    results: list[CheckResult] = []
    extra: dict = {}
    for name in names:
        if name == "oracle":
            results += check_oracle(dmax if dmax is not None else 10, nmax if nmax is not None else 12)
        elif name == "routes":
            results += check_routes(dmax if dmax is not None else 12)
        elif name == "algs":
            results += check_algs(dmax if dmax is not None else 12)
        elif name == "symmetry":
            results += check_symmetry(dmax if dmax is not None else 12)
            results += check_reflection(min(dmax, 10) if dmax is not None else 10, min(nmax, 10) if nmax is not None else 10)
        elif name == "combinatorics":
            results += check_combinatorics(dmax if dmax is not None else 12)
        elif name == "bounds":
            res, summary = check_bounds(dmax if dmax is not None else 16, nmax if nmax is not None else 64)
            results += res
            band = summary.ratio_band()
            extra["ratio_band"] = None if band is None else {"min": band[0], "max": band[1]}
    return {
        "suite": suite,
        "ok": all(r.ok for r in results),
        "checks": [asdict(r) for r in results],
        **extra,
    }
