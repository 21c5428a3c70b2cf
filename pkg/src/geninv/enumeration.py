"""Test corpora: every small semigroup, random transformation semigroups, random matrices."""

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from geninv import kernels
from geninv.errors import CapExceeded, InputError
from geninv.rational import RationalMatrix
from geninv.semigroup import Semigroup, _find_identity, build_from_transformations


@dataclass(frozen=True)
class EnumerationConfig:
    order: int
    prune: bool = True
    canonical: bool = False  # keep one labelling per isomorphism class
    seed: int = 0
    max_tables: int = 100_000
    threads: int | None = None

    def __post_init__(self):
        if not 1 <= self.order <= 4:
            raise InputError(f"exhaustive order must be in 1..4, got {self.order}")
        if self.order == 4 and not self.prune:
            raise InputError("order 4 requires pruning")


def worker_count(threads=None):
    if threads is not None:
        return max(1, int(threads))
    env = os.environ.get("GENINV_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"GENINV_THREADS must be an integer, got {env!r}") from None
    return 1


def _prefix_tables(args):
    n, row = args
    return kernels.enumerate_tables(n, row)


def _unpruned(n):
    out = []
    for flat in itertools.product(range(n), repeat=n * n):
        t = np.asarray(flat, dtype=np.int32).reshape(n, n)
        if kernels.first_nonassociative(t) is None:
            out.append(t)
    return out


def is_canonical(t):
    """True iff ``t`` is lexicographically least among its relabellings."""
    n = t.shape[0]
    flat = t.ravel().tolist()
    for perm in itertools.permutations(range(n)):
        p = np.asarray(perm)
        relabelled = np.empty_like(t)
        relabelled[p[:, None], p[None, :]] = p[t]
        if relabelled.ravel().tolist() < flat:
            return False
    return True


def enumerate_tables(config):
    """All associative tables of ``config.order`` as a list of arrays, lexicographic."""
    n = config.order
    if not config.prune:
        tables = _unpruned(n)
    else:
        prefixes = [(n, row) for row in itertools.product(range(n), repeat=n)]
        workers = worker_count(config.threads)
        if workers > 1:
            # disjoint first-row prefixes; results merged in prefix order
            with ProcessPoolExecutor(workers) as pool:
                chunks = list(pool.map(_prefix_tables, prefixes))
        else:
            chunks = [_prefix_tables(p) for p in prefixes]
        tables = [t for chunk in chunks for t in chunk]
    if config.canonical:
        tables = [t for t in tables if is_canonical(t)]
    if len(tables) > config.max_tables:
        raise CapExceeded(f"{len(tables)} tables exceed cap {config.max_tables}")
    return tables


def enumerate_semigroups(config):
    for t in enumerate_tables(config):
        yield Semigroup(t, identity=_find_identity(t))


def random_transformation_semigroup(degree, n_generators, seed, cap=10000):
    """Closure of ``n_generators`` uniformly random maps on ``degree`` points."""
    if not 1 <= degree <= 5:
        raise InputError("degree must be in 1..5")
    if not 1 <= n_generators <= 3:
        raise InputError("generator count must be in 1..3")
    rng = np.random.default_rng(seed)
    gens = rng.integers(0, degree, size=(n_generators, degree)).tolist()
    return build_from_transformations(degree, gens, cap=cap)


def transformation_corpus(count, seed, max_degree=4):
    """``count`` seeded random transformation semigroups of degree 2..max_degree."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        degree = int(rng.integers(2, max_degree + 1))
        k = int(rng.integers(1, 4))
        out.append(random_transformation_semigroup(degree, k, int(rng.integers(2**63))))
    return out


def random_matrix(n, rank, bound, seed):
    """Exact rank-``rank`` integer matrix, a product of n x r and r x n random factors.

    For ``rank == n`` the factors are redrawn until the product is invertible.
    """
    if not 1 <= n <= 6:
        raise InputError("matrix size must be in 1..6")
    if not 0 <= rank <= n:
        raise InputError("rank must be in 0..n")
    rng = np.random.default_rng(seed)
    if rank == 0:
        return RationalMatrix.zeros(n, n)
    while True:
        P = rng.integers(-bound, bound + 1, size=(n, rank)).tolist()
        Q = rng.integers(-bound, bound + 1, size=(rank, n)).tolist()
        A = RationalMatrix(P) @ RationalMatrix(Q)
        if A.rank() == rank:
            return A


def random_unimodular(n, rng, steps=None):
    """Integer matrix of determinant +-1 built from elementary row operations."""
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.choice(n, size=2, replace=False) if n > 1 else (0, 0)
        if i == j:
            break
        c = int(rng.integers(-2, 3))
        U[i] = [u + c * v for u, v in zip(U[i], U[j])]
    return RationalMatrix(U)


def random_invertible(n, bound, rng):
    while True:
        X = RationalMatrix(rng.integers(-bound, bound + 1, size=(n, n)).tolist())
        if X.rank() == n:
            return X


def random_nilpotent(n, rng):
    """Strictly upper triangular integer matrix conjugated by a unimodular matrix."""
    N = [[int(rng.integers(-2, 3)) if j > i else 0 for j in range(n)] for i in range(n)]
    U = random_unimodular(n, rng)
    return U @ RationalMatrix(N) @ U.inverse()


def matrix_corpus(count, seed, max_n=6, bound=3):
    """Mixed square matrices: random-rank products and conjugated block forms diag(X, N)."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = int(rng.integers(1, max_n + 1))
        if i % 2 == 0:
            r = int(rng.integers(0, n + 1))
            out.append(random_matrix(n, r, bound, int(rng.integers(2**63))))
        else:
            k = int(rng.integers(0, n + 1))
            blocks = []
            if k:
                blocks.append(random_invertible(k, bound, rng))
            if n - k:
                blocks.append(random_nilpotent(n - k, rng))
            T = RationalMatrix.block_diag(*blocks)
            U = random_unimodular(n, rng)
            out.append(U @ T @ U.inverse())
    return out


def matrix_pair_corpus(count, seed, n=5, bound=3):
    """Pairs ``(a, d)`` of n x n matrices with a of random rank and rank(d) in 1..n-1."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        ra = int(rng.integers(0, n + 1))
        rd = int(rng.integers(1, n))
        a = random_matrix(n, ra, bound, int(rng.integers(2**63)))
        d = random_matrix(n, rd, bound, int(rng.integers(2**63)))
        out.append((a, d))
    return out


def block_corpus(count, seed, max_block=3, bound=3):
    """Pairs ``(X, Y)`` with X invertible and Y nilpotent, each at most ``max_block`` square."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        k = int(rng.integers(1, max_block + 1))
        m = int(rng.integers(1, max_block + 1))
        out.append((random_invertible(k, bound, rng), random_nilpotent(m, rng)))
    return out
