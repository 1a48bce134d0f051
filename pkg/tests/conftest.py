from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from weylsplit.cyclotomic import CycInt  # noqa: E402
from weylsplit.qweyl import QWeylElement  # noqa: E402

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

small_primes = st.sampled_from([2, 3, 5])


def cycints(p: int, bound: int = 4):
    return st.lists(st.integers(-bound, bound), min_size=p - 1, max_size=p - 1).map(
        lambda cs: CycInt(p, cs)
    )


@st.composite
def weyl_elements(draw, p: int, max_deg: int = 3, max_terms: int = 3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        key = (draw(st.integers(0, max_deg)), draw(st.integers(0, max_deg)))
        terms[key] = draw(cycints(p, 3))
    return QWeylElement(p, terms)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number])


@pytest.fixture
def rng():
    import random

    return random.Random(1234)
