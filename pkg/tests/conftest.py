import numpy as np
import pytest
from hypothesis import strategies as st


def random_pmf(rng, n, zeros=True):
    p = rng.dirichlet(np.full(n, 0.7))
    if zeros and n > 2 and rng.random() < 0.2:
        p[rng.integers(n)] = 0.0
        p = p / p.sum()
    return p


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@st.composite
def pmfs(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    weights = draw(
        st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=n, max_size=n).filter(
            lambda w: sum(w) > 1e-3
        )
    )
    total = sum(weights)
    return [w / total for w in weights]


def params_st(lo=0.2, hi=3.0):
    return st.floats(lo, hi, allow_nan=False, allow_infinity=False)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_ac" in nodeid and rep.when == "call":
                lines.append((nodeid.split("::")[-1], "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, status in sorted(lines):
            terminalreporter.write_line(f"{status}  {name}")
