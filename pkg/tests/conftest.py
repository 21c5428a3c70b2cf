import itertools
import sys

import numpy as np
import pytest

from geninv.semigroup import build_from_cayley, build_from_transformations


def cyclic(n):
    return build_from_cayley(n, [[(i + j) % n for j in range(n)] for i in range(n)])


@pytest.fixture
def semilattice():
    return build_from_cayley(2, [[0, 0], [0, 1]])


@pytest.fixture
def left_zero():
    return build_from_cayley(2, [[0, 0], [1, 1]])


@pytest.fixture
def c2():
    return cyclic(2)


@pytest.fixture
def c3():
    return cyclic(3)


@pytest.fixture
def c4():
    return cyclic(4)


@pytest.fixture
def monogenic():
    # 0 = a, 1 = a^2, with a^3 = a^2
    return build_from_cayley(2, [[1, 1], [1, 1]])


@pytest.fixture(scope="session")
def t3():
    gens = [list(p) for p in itertools.product(range(3), repeat=3)]
    return build_from_transformations(3, gens)


def brute_force_tables(n):
    """Every associative n x n table, found by filtering all n^(n*n) tables."""
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = [flat[i * n:(i + 1) * n] for i in range(n)]
        if all(t[t[i][j]][k] == t[i][t[j][k]]
               for i in range(n) for j in range(n) for k in range(n)):
            out.append(t)
    return out


@pytest.fixture(scope="session")
def small_corpus():
    from geninv.enumeration import EnumerationConfig, enumerate_semigroups
    out = []
    for n in (1, 2, 3):
        out.extend(enumerate_semigroups(EnumerationConfig(order=n)))
    return out


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    mod.print_results(terminalreporter.write_line)
