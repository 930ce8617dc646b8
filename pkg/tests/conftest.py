from functools import lru_cache
from itertools import product

import pytest

from iswreath import wreath
from iswreath.partial_perm import PartialPerm


@lru_cache(maxsize=None)
def universe(d, k):
    return tuple(wreath.enumerate_wreath(d, k, cap=None))


def brute_is(d):
    """IS_d from scratch: every function {0..d-1} -> {0..d-1, undefined} that is injective."""
    out = []
    for images in product([None, *range(d)], repeat=d):
        defined = [y for y in images if y is not None]
        if len(defined) == len(set(defined)):
            out.append(PartialPerm(d, images))
    return out


@pytest.fixture(scope="session")
def wr22():
    return universe(2, 2)


@pytest.fixture(scope="session")
def wr23():
    return universe(2, 3)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
