import pytest
import sympy

from geninv import operator as op
from geninv import ring
from geninv.enumeration import block_corpus, matrix_corpus
from geninv.errors import NotInSigma1, PreconditionFailed
from geninv.operator import Subspace
from geninv.rational import RationalMatrix as M

D = M.diag


def jordan(n):
    return M([[int(j == i + 1) for j in range(n)] for i in range(n)])


def e(i, n=2):
    return Subspace.span(n, [[int(k == i) for k in range(n)]])


def test_subspace_canonical_equality():
    a = Subspace.span(3, [[1, 1, 0], [0, 1, 0]])
    b = Subspace.span(3, [[2, 0, 0], [0, 3, 0], [1, 1, 0]])
    assert a == b and a.dim == 2
    assert a.contains(e(0, 3)) and not a.contains(e(2, 3))
    assert a.intersect(Subspace.span(3, [[0, 1, 1], [0, 0, 1]])) == e(1, 3)
    assert a.sum(e(2, 3)) == Subspace.full(3)
    assert Subspace.zero(3).intersect(a) == Subspace.zero(3)


def test_hyperrange_hyperkernel_examples():
    A = M([[2, 1], [1, 1]])
    assert op.hyperrange(A) == Subspace.full(2) and op.hyperkernel(A) == Subspace.zero(2)
    for n in (2, 4):
        assert op.hyperrange(jordan(n)) == Subspace.zero(n)
        assert op.hyperkernel(jordan(n)) == Subspace.full(n)
    assert op.hyperrange(D(2, 0)) == e(0)
    assert op.hyperkernel(D(2, 0)) == e(1)


def test_hyperspaces_stabilize_at_dimension():
    # R(T^n) = R(T^(n+k)) and N(T^n) = N(T^(n+k)): the limits are attained at n
    for T in matrix_corpus(15, seed=21):
        n = T.rows
        assert Subspace.column_space(T ** (2 * n)) == op.hyperrange(T)
        assert Subspace.kernel(T ** (2 * n)) == op.hyperkernel(T)


def test_quasinilpotent_part_is_generalized_zero_eigenspace():
    for T in matrix_corpus(10, seed=22):
        H0 = op.quasinilpotent_part(T)
        # sympy oracle: algebraic multiplicity of eigenvalue 0
        mult = sympy.Matrix(T.tolist()).eigenvals(multiple=False).get(0, 0)
        assert H0.dim == mult


def test_float_probe_is_advisory_and_small():
    for T in matrix_corpus(10, seed=23):
        H0 = op.quasinilpotent_part(T)
        assert op.float_probe(T, H0) < 2 ** -10


def test_analytic_core_is_onto():
    for T in [D(2, 0), jordan(3), M([[2, 1], [1, 1]])] + matrix_corpus(10, seed=24):
        K = op.analytic_core(T)
        assert K.image(T) == K


def test_fitting_examples():
    f = op.fitting_decomposition(D(2, 0))
    assert (f.H0, f.K, f.M) == (e(1), e(0), D(1, 0))
    A = M([[2, 1], [1, 1]])
    f = op.fitting_decomposition(A)
    assert (f.H0, f.K, f.M) == (Subspace.zero(2), Subspace.full(2), M.identity(2))
    f = op.fitting_decomposition(jordan(3))
    assert (f.H0, f.K, f.M) == (Subspace.full(3), Subspace.zero(3), M.zeros(3))


def test_fitting_invariants_random():
    for T in matrix_corpus(20, seed=25):
        f = op.fitting_decomposition(T)
        assert f.certificates.ok
        assert f.H0.dim + f.K.dim == T.rows
        assert f.M == M.identity(T.rows) - ring.spectral_idempotent(T)


def test_restriction_to_core_is_invertible():
    T = M([[1, 1, 0], [0, 0, 1], [0, 0, 0]])
    K = op.analytic_core(T)
    R = op.restriction(T, K)
    assert R.is_invertible() and R.rows == K.dim


def test_check_inclusions():
    T = D(2, 0)
    op.check_inclusions(T, D(1, 0))
    op.check_inclusions(T, M.zeros(2))
    with pytest.raises(NotInSigma1):
        op.check_inclusions(T, D(0, 1))
    with pytest.raises(NotInSigma1):
        op.check_inclusions(jordan(3), M.identity(3))


def test_inclusions_for_core_idempotent_random():
    for T in matrix_corpus(15, seed=26):
        P = T @ ring.drazin_matrix(T).inverse
        c = op.check_inclusions(T, P)
        assert c.ok
        assert Subspace.column_space(P) == op.analytic_core(T)


def test_nilpotent_rejects_nonzero_spectral_idempotents():
    for n in range(2, 6):
        T = jordan(n)
        for P in ring.commuting_idempotent_battery(T):
            if P.is_zero():
                op.check_inclusions(T, P)
            else:
                with pytest.raises(NotInSigma1):
                    op.check_inclusions(T, P)


def test_core_range_examples():
    assert op.core_range(D(2, 0)) == e(0)
    assert op.core_range(M([[2, 1], [1, 1]])) == Subspace.full(2)
    assert op.core_range(jordan(3)) == Subspace.zero(3)


def test_rosenblum_examples():
    rep = op.rosenblum_block(M([[2]]), M([[0]]))
    assert rep.M == D(1, 0)
    rep = op.rosenblum_block(D(2, 3), jordan(2))
    assert rep.x == D(2, 3, 0, 0) and rep.M == D(1, 1, 0, 0)
    X = M([[1, 1], [0, 1]])
    rep = op.rosenblum_block(X, M([[0]]))
    assert rep.x == M.block_diag(X, M.zeros(1))


def test_rosenblum_preconditions():
    with pytest.raises(PreconditionFailed):
        op.rosenblum_block(D(1, 0), jordan(2))
    with pytest.raises(PreconditionFailed):
        op.rosenblum_block(D(1, 2), D(1, 0))


def test_rosenblum_random_blocks():
    for X, Y in block_corpus(10, seed=27):
        rep = op.rosenblum_block(X, Y)
        assert rep.certificates.ok


def test_shift_truncation():
    for n in range(2, 9):
        T = jordan(n)
        assert op.hyperrange(T) == Subspace.zero(n)
        ring.nilpotent_sigma1_certificate(T)


def test_local_spectral_report_is_json_ready():
    import json

    rep = op.local_spectral_report(D(2, 0))
    text = json.dumps(rep, sort_keys=True)
    assert json.loads(text)["hyperrange"]["basis"] == [[1, 0]]
