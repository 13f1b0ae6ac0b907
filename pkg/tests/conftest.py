from pathlib import Path

import pytest
from hypothesis import strategies as st

from binmoments.poly import Poly

GOLDEN = Path(__file__).parent / "golden"

monomials = st.tuples(*(st.integers(0, 3) for _ in range(4)))
coefficients = st.integers(-6, 6)
polys = st.dictionaries(monomials, coefficients, max_size=6).map(Poly)
nonzero_polys = polys.filter(lambda f: not f.is_zero())


@pytest.fixture
def golden():
    return GOLDEN


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
