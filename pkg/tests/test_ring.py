from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from geninv import ring
from geninv.enumeration import matrix_corpus, matrix_pair_corpus, random_matrix
from geninv.errors import InputError, NotIdempotent, NotInvertibleAlong
from geninv.rational import RationalMatrix as M

D = M.diag
I2 = M.identity(2)
JORDAN2 = M([[0, 1], [0, 0]])
JORDAN3 = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


def to_sympy(A):
    return sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in A.tolist()])


def from_sympy(S):
    return M([[Fraction(int(sympy.fraction(x)[0]), int(sympy.fraction(x)[1])) for x in S.row(i)] for i in range(S.rows)])


def oracle_group_inverse(A):
    # A (A^3)^+ A with the Moore-Penrose inverse from sympy
    S = to_sympy(A)
    if S.rank() != (S * S).rank():
        return None
    return from_sympy(S * (S ** 3).pinv() * S)


def oracle_commutant_dim(A):
    n = A.rows
    X = sympy.Matrix(n, n, sympy.symbols(f"x0:{n * n}"))
    S = to_sympy(A)
    eqs = list(X * S - S * X)
    sol = sympy.linsolve(eqs, list(X))
    (point,) = sol
    return len(set().union(*(sympy.sympify(v).free_symbols for v in point)))


def test_rref_examples():
    R, r, piv = ring.rref(M.identity(3))
    assert R == M.identity(3) and r == 3 and piv == (0, 1, 2)
    R, r, piv = ring.rref(M.zeros(2))
    assert R == M.zeros(2) and r == 0 and piv == ()
    assert ring.rref(M([[1, 2], [2, 4]]))[1] == 1


def test_inner_inverse_examples():
    A = M([[2, 1], [1, 1]])
    assert ring.inner_inverse(A) == A.inverse()
    assert ring.inner_inverse(M.zeros(3)) == M.zeros(3)
    assert ring.inner_inverse(D(1, 0)) == D(1, 0)


def test_inner_inverse_is_moore_penrose_for_full_rank_factorization():
    # Q^T (QQ^T)^-1 (P^T P)^-1 P^T is exactly the Moore-Penrose inverse
    for A in matrix_corpus(15, seed=4):
        assert ring.inner_inverse(A) == from_sympy(to_sympy(A).pinv())


def test_perturbed_inner_inverse_is_an_associate():
    for A in matrix_corpus(10, seed=5):
        dm = ring.inner_inverse(A)
        dm2 = ring.perturbed_inner_inverse(A, dm)
        assert A @ dm2 @ A == A


def test_invert_along_examples():
    rep = ring.invert_along(D(2, 3), I2)
    assert rep.witness == D(Fraction(1, 2), Fraction(1, 3)) and rep.ok
    e = M([[1, 1], [0, 0]])
    assert ring.invert_along(I2, e).witness == e
    a, d = M([[0, 1], [1, 0]]), D(1, 0)
    u = d @ a + I2 - d @ ring.inner_inverse(d)
    assert u == M([[0, 1], [0, 1]]) and u.det() == 0
    with pytest.raises(NotInvertibleAlong) as exc:
        ring.invert_along(a, d)
    assert exc.value.report.exists is False
    assert not any(exc.value.report.conditions.values())


def test_invert_along_identity_iff_invertible():
    for A in matrix_corpus(12, seed=6):
        n = A.rows
        if A.is_invertible():
            assert ring.invert_along(A, M.identity(n)).witness == A.inverse()
        else:
            assert not ring.exists_along(A, M.identity(n))


def test_invert_along_input_errors():
    with pytest.raises(InputError):
        ring.invert_along(I2, M.identity(3))
    with pytest.raises(InputError):
        ring.invert_along(M([[1, 2]]), M([[1, 2]]))


def _oracle_along(a, d):
    ad = a @ d
    g = oracle_group_inverse(ad)
    # d <=_L ad: the row space of d lies in that of ad
    if g is None or ad.vstack(d).rank() != ad.rank():
        return None
    return d @ g


def test_invert_along_matches_oracle():
    for a, d in matrix_pair_corpus(25, seed=7, n=4):
        want = _oracle_along(a, d)
        try:
            got = ring.invert_along(a, d).witness
        except NotInvertibleAlong:
            got = None
        assert got == want


def test_invert_along_defining_identities():
    for a, d in matrix_pair_corpus(25, seed=8, n=4):
        try:
            b = ring.invert_along(a, d).witness
        except NotInvertibleAlong:
            continue
        assert b @ a @ d == d == d @ a @ b
        assert ring.leq_H(b, d) and ring.leq_H(d, b)


def test_invert_along_idempotent_examples():
    for A in (D(2, 3), JORDAN2, D(1, 0)):
        assert ring.exists_along(A, I2) == A.is_invertible()
        assert ring.invert_along_idempotent(A, M.zeros(2)).witness == M.zeros(2)
    rep = ring.invert_along_idempotent(D(2, 0), D(1, 0))
    assert rep.witness == D(Fraction(1, 2), 0)
    assert rep.conditions["a + 1 - e invertible"]
    with pytest.raises(NotIdempotent):
        ring.invert_along_idempotent(I2, D(2, 0))
    with pytest.raises(NotInvertibleAlong):
        ring.invert_along_idempotent(JORDAN2, I2)


def test_group_inverse_examples():
    assert ring.group_inverse_matrix(I2) == I2
    assert ring.group_inverse_matrix(JORDAN2) is None
    e = M([[1, 1], [0, 0]])
    assert ring.group_inverse_matrix(e) == e


def test_group_inverse_matches_oracle():
    for A in matrix_corpus(20, seed=9):
        assert ring.group_inverse_matrix(A) == oracle_group_inverse(A)


def test_drazin_examples():
    A = M([[2, 1], [1, 1]])
    r = ring.drazin_matrix(A)
    assert (r.index, r.inverse) == (1, A.inverse())
    r = ring.drazin_matrix(JORDAN3)
    assert (r.index, r.inverse) == (3, M.zeros(3))
    r = ring.drazin_matrix(D(2, 0))
    assert (r.index, r.inverse) == (1, D(Fraction(1, 2), 0))
    assert r.to_dict()["index_convention"]


def test_drazin_identities_characterize():
    # the three identities pin A^D down; check them directly with the index
    for A in matrix_corpus(20, seed=10):
        r = ring.drazin_matrix(A)
        X, k = r.inverse, r.index
        assert A @ X == X @ A and X @ A @ X == X and A ** (k + 1) @ X == A ** k
        assert (A ** k).rank() == (A ** (k + 1)).rank()
        if k > 1:
            assert (A ** (k - 1)).rank() != (A ** k).rank()


def test_spectral_idempotent_examples():
    assert ring.spectral_idempotent(M([[2, 1], [1, 1]])) == M.zeros(2)
    assert ring.spectral_idempotent(JORDAN3) == M.identity(3)
    assert ring.spectral_idempotent(D(2, 0)) == D(0, 1)


def test_commutant_examples():
    assert len(ring.commutant_basis(M.identity(3))) == 9
    basis = ring.commutant_basis(D(1, 2))
    assert len(basis) == 2 and all(B[0, 1] == 0 == B[1, 0] for B in basis)
    basis = ring.commutant_basis(JORDAN2)
    assert len(basis) == 2
    span = M([[1, 0, 0, 1], [0, 1, 0, 0]])  # vec(I), vec(J)
    for B in basis:
        v = M([[x for r in B.tolist() for x in r]])
        assert span.vstack(v).rank() == 2


def test_commutant_dimension_matches_sympy():
    for A in matrix_corpus(8, seed=11, max_n=4):
        assert len(ring.commutant_basis(A)) == oracle_commutant_dim(A)


def test_commutant_elements_commute():
    for A in matrix_corpus(6, seed=12):
        for B in ring.commutant_basis(A):
            assert A @ B == B @ A


def test_bicommutant_is_polynomials():
    for A in matrix_corpus(10, seed=13, max_n=5) + [JORDAN3, D(1, 2, 0), M.identity(3)]:
        assert ring.bicommutant_matches_polynomials(A)
    assert ring.polynomial_span_dimension(M.identity(3)) == 1
    assert ring.polynomial_span_dimension(JORDAN3) == 3


def test_charpoly_matches_sympy():
    t = sympy.Symbol("t")
    for A in matrix_corpus(10, seed=14):
        want = to_sympy(A).charpoly(t).all_coeffs()
        assert A.charpoly() == [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in want]


def test_core_decomposition_block_example():
    X, N = D(2, 3), JORDAN2
    rep = ring.natural_core_decomposition_matrix(M.block_diag(X, N))
    assert rep.x == M.block_diag(X, M.zeros(2))
    assert rep.y == M.block_diag(M.zeros(2), N)
    assert rep.M == D(1, 1, 0, 0)
    assert rep.nilpotency_degree == 2 and rep.certificates.ok


def test_core_decomposition_trivial_cases():
    A = M([[2, 1], [1, 1]])
    rep = ring.natural_core_decomposition_matrix(A)
    assert (rep.x, rep.y, rep.M) == (A, M.zeros(2), I2)
    rep = ring.natural_core_decomposition_matrix(JORDAN3)
    assert (rep.x, rep.y, rep.M) == (M.zeros(3), JORDAN3, M.zeros(3))


def test_core_decomposition_uniqueness():
    T = M.block_diag(D(2, 3), JORDAN2)
    rep = ring.natural_core_decomposition_matrix(T)
    assert ring.core_decomposition_is_unique(T, rep.x, rep.y) is True
    # the whole of T is not a valid core: no group inverse
    assert ring.core_decomposition_is_unique(T, T, M.zeros(4)) is None


def test_sigma2_examples():
    rep = ring.sigma2_greatest_check(D(2, 0))
    assert set(rep.members) == {M.zeros(2), D(1, 0)} and rep.M == D(1, 0)
    assert rep.certificates.ok
    rep = ring.sigma2_greatest_check(JORDAN3)
    assert rep.members == [M.zeros(3)] and rep.M.is_zero() and rep.certificates.ok
    rep = ring.sigma2_greatest_check(D(1, 2, 0))
    assert rep.M == D(1, 1, 0)
    assert D(1, 0, 0) in rep.members and D(0, 1, 0) in rep.members
    assert rep.certificates.ok


def test_spectral_pieces_are_polynomial_idempotents():
    for A in matrix_corpus(10, seed=15):
        pieces = ring.spectral_pieces(A)
        assert len({p.P for p in pieces}) == len(pieces)
        for p in pieces:
            assert p.P.is_idempotent() and p.P @ A == A @ p.P


def test_nilpotent_sigma1_certificate():
    for n in range(2, 6):
        J = M([[int(j == i + 1) for j in range(n)] for i in range(n)])
        assert ring.nilpotent_sigma1_certificate(J) >= 1
    with pytest.raises(InputError):
        ring.nilpotent_sigma1_certificate(I2)


def test_green_preorders_by_rank():
    assert ring.leq_L(D(1, 0), I2) and not ring.leq_L(I2, D(1, 0))
    assert ring.leq_R(JORDAN2, D(1, 0)) and not ring.leq_L(JORDAN2, D(1, 0))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 2**32))
def test_unit_criterion_property(n, r, seed):
    r = min(r, n)
    a = random_matrix(n, n - 1 if n > 1 else 1, 2, seed)
    d = random_matrix(n, r, 2, seed + 1)
    try:
        rep = ring.invert_along(a, d)
    except NotInvertibleAlong:
        return
    assert rep.ok
