import json

import numpy as np
import pytest

from geninv import kernels, suite
from geninv.enumeration import (
    EnumerationConfig,
    block_corpus,
    enumerate_semigroups,
    enumerate_tables,
    is_canonical,
    matrix_corpus,
    matrix_pair_corpus,
    random_matrix,
    random_transformation_semigroup,
    worker_count,
)
from geninv.errors import CapExceeded, InputError
from geninv.rational import RationalMatrix
from geninv.semigroup import load_semigroup

from conftest import brute_force_tables


def as_set(tables):
    return {np.asarray(t, dtype=np.int32).tobytes() for t in tables}


def test_counts():
    counts = [len(enumerate_tables(EnumerationConfig(n))) for n in (1, 2, 3)]
    assert counts == [1, 8, 113]


def test_order2_is_brute_force_filter():
    assert len(brute_force_tables(2)) == 8
    assert as_set(enumerate_tables(EnumerationConfig(2))) == as_set(brute_force_tables(2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pruned_equals_unpruned(n):
    pruned = enumerate_tables(EnumerationConfig(n))
    unpruned = enumerate_tables(EnumerationConfig(n, prune=False))
    assert as_set(pruned) == as_set(unpruned)
    # same lexicographic order too
    assert [t.tobytes() for t in pruned] == [t.tobytes() for t in unpruned]


@pytest.mark.slow
def test_order4_count():
    assert len(enumerate_tables(EnumerationConfig(4))) == 3492


def test_order4_requires_prune():
    with pytest.raises(InputError):
        EnumerationConfig(4, prune=False)
    with pytest.raises(InputError):
        EnumerationConfig(5)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_tables(EnumerationConfig(3, max_tables=10))


def test_canonical_filter_keeps_one_per_class():
    tables = enumerate_tables(EnumerationConfig(2, canonical=True))
    # semigroups of order 2 up to isomorphism (not anti-isomorphism): 5
    assert len(tables) == 5
    assert all(is_canonical(t) for t in tables)


def test_threads_same_result(monkeypatch):
    serial = enumerate_tables(EnumerationConfig(3, threads=1))
    parallel = enumerate_tables(EnumerationConfig(3, threads=2))
    assert [t.tobytes() for t in serial] == [t.tobytes() for t in parallel]
    monkeypatch.setenv("GENINV_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("GENINV_THREADS", "x")
    with pytest.raises(InputError):
        worker_count()


def test_enumerated_semigroups_are_associative():
    for S in enumerate_semigroups(EnumerationConfig(3)):
        assert kernels.first_nonassociative(S.table) is None


def test_random_transformation_semigroup_monogenic():
    S = random_transformation_semigroup(3, 1, seed=5)
    # one generator on 3 points: index + period <= 3 (closure oracle)
    assert S.order <= 3
    assert random_transformation_semigroup(3, 1, seed=5) == S


def test_constant_and_identity_generators():
    S = load_semigroup({"kind": "transformations", "degree": 3, "generators": [[1, 1, 1]]})
    assert S.order == 1
    S = load_semigroup({"kind": "transformations", "degree": 3, "generators": [[0, 1, 2]]})
    assert S.order == 1


def test_random_matrix_rank():
    for n in range(1, 7):
        for r in range(n + 1):
            A = random_matrix(n, r, 3, seed=n * 10 + r)
            assert A.rank() == r
    assert random_matrix(3, 0, 3, 0) == RationalMatrix.zeros(3)
    A = random_matrix(4, 1, 3, 1)
    assert A.rank() == 1
    assert random_matrix(4, 2, 3, 9) == random_matrix(4, 2, 3, 9)


def test_corpora_deterministic():
    assert matrix_corpus(5, 3) == matrix_corpus(5, 3)
    assert matrix_pair_corpus(5, 3) == matrix_pair_corpus(5, 3)
    assert block_corpus(5, 3) == block_corpus(5, 3)
    for a, d in matrix_pair_corpus(20, 1):
        assert a.shape == (5, 5) and 1 <= d.rank() <= 4


def test_suite_order2_all_checks_clean():
    rep = suite.verify(suite.SuiteConfig(suite="semigroup", order=2, trials=0))
    assert rep.ok and rep.items == 9
    assert set(rep.counts) == set(suite.CHECKS["semigroup"])


def test_suite_order3_equivalence():
    corpus = suite.semigroup_corpus(3, 0, 0)
    rep = suite.run_suite(corpus, ["equivalence"])
    assert rep.ok and rep.counts["equivalence"]["pass"] == 1 + 4 * 8 + 9 * 113


def test_suite_matrix_and_operator_small():
    for name in ("matrix", "operator"):
        rep = suite.verify(suite.SuiteConfig(suite=name, seed=2, trials=4))
        assert rep.ok, rep.counterexamples


def test_suite_deterministic_json():
    cfg = suite.SuiteConfig(suite="all", order=2, seed=3, trials=3)
    a, b = suite.verify(cfg), suite.verify(cfg)
    assert a.to_json() == b.to_json()
    assert "seconds" not in a.to_json()


def test_suite_unknown_check():
    with pytest.raises(InputError):
        suite.run_suite([], ["nope"])
    with pytest.raises(InputError):
        suite.SuiteConfig(suite="nope")


def test_failures_carry_replayable_payload(monkeypatch):
    def broken(item):
        return 0, [suite._fail(item, "forced")]

    monkeypatch.setitem(suite.CHECKS["matrix"], "forced", broken)
    corpus = [suite.MatrixItem(RationalMatrix.diag(2, 0), "hand")]
    rep = suite.run_suite(corpus, ["forced"])
    assert not rep.ok and rep.failures == 1
    (cx,) = rep.counterexamples
    assert cx["check"] == "forced"
    assert RationalMatrix.from_json(json.loads(json.dumps(cx["matrix"]))) == RationalMatrix.diag(2, 0)

    def broken_sg(item):
        return 0, [suite._fail(item, "forced", a=0)]

    monkeypatch.setitem(suite.CHECKS["semigroup"], "forced-sg", broken_sg)
    S = next(enumerate_semigroups(EnumerationConfig(2)))
    rep = suite.run_suite([suite.SemigroupItem(S, "hand")], ["forced-sg"])
    payload = rep.counterexamples[0]["semigroup"]
    assert np.array_equal(load_semigroup(payload).table, S.table)
