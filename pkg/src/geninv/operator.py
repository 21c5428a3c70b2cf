"""Local spectral subspaces of a finite-dimensional operator.

T acts on column vectors of Q^n. The Banach-space limits collapse at power n:

* hyperrange ``T^inf(X) = R(T^n)``; the analytic core K(T) and the algebraic
  core C(T) coincide with it, since T restricted to R(T^n) is onto;
* hyperkernel ``N^inf(T) = N(T^n)``; the quasinilpotent part H0(T) equals it,
  since it is the generalized 0-eigenspace.

Each subspace is kept as a canonical RREF basis, so equality is comparison.
"""

from dataclasses import dataclass

import numpy as np

from geninv.errors import InputError, InvariantViolation, NotInSigma1, PreconditionFailed
from geninv.rational import RationalMatrix, format_entry
from geninv import ring


@dataclass(frozen=True)
class Subspace:
    n: int
    basis: tuple  # tuple of column tuples, RREF-canonical

    @classmethod
    def span(cls, n, vectors):
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls(n, ())
        R, r, _ = RationalMatrix._wrap(tuple(vectors)).rref()
        return cls(n, tuple(R.row(i) for i in range(r)))

    @classmethod
    def column_space(cls, A):
        return cls.span(A.rows, A.T.tolist())

    @classmethod
    def kernel(cls, A):
        return cls.span(A.cols, A.nullspace())

    @classmethod
    def full(cls, n):
        return cls.column_space(RationalMatrix.identity(n))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        """Basis vectors as columns (n x dim); None for the zero space."""
        if not self.basis:
            return None
        return RationalMatrix._wrap(self.basis).T

    def contains(self, other):
        return self.sum(other).dim == self.dim

    def sum(self, other):
        return Subspace.span(self.n, self.basis + other.basis)

    def intersect(self, other):
        if not self.basis or not other.basis:
            return Subspace.zero(self.n)
        # solve B1 x = B2 y; the intersection is spanned by B1 x
        B1, B2 = self.matrix(), other.matrix()
        K = B1.hstack(-B2).nullspace()
        vecs = [(B1 @ RationalMatrix.from_columns([v[: self.dim]], self.dim)).column(0) for v in K]
        return Subspace.span(self.n, vecs)

    def image(self, T):
        if not self.basis:
            return Subspace.zero(self.n)
        return Subspace.column_space(T @ self.matrix())

    def to_json(self):
        return {
            "ambient": self.n,
            "dim": self.dim,
            "basis": [[format_entry(x) for x in v] for v in self.basis],
        }


def _square(T):
    if not T.is_square:
        raise InputError(f"operator must be square, got shape {T.shape}")


def hyperrange(T):
    _square(T)
    return Subspace.column_space(T ** T.rows)


def hyperkernel(T):
    _square(T)
    return Subspace.kernel(T ** T.rows)


def float_probe(T, space, scale_bound=8):
    """Advisory check of ``|T^m x|^(1/m) -> 0`` at m = 4n on an invariant ``space``.

    Iterates T restricted to ``space`` (in its basis coordinates) in double
    precision, with entries scaled to be bounded by ``scale_bound``; doing it
    on the full space would let roundoff leak into the other spectral part
    and grow. Returns the largest value over basis vectors; never authoritative.
    """
    if not space.basis:
        return 0.0
    R = restriction(T, space)
    Rf = np.array([[float(x) for x in r] for r in R.tolist()])
    top = np.abs(Rf).max()
    if top > scale_bound:
        Rf = Rf * (scale_bound / top)
    m = 4 * T.rows
    worst = 0.0
    for i in range(space.dim):
        x = np.zeros(space.dim)
        x[i] = 1.0
        for _ in range(m):
            x = Rf @ x
        worst = max(worst, float(np.linalg.norm(x)) ** (1.0 / m))
    return worst


def quasinilpotent_part(T):
    """H0(T); in finite dimension the generalized 0-eigenspace, i.e. the hyperkernel."""
    return hyperkernel(T)


def analytic_core(T):
    """K(T) = C(T) = R(T^n); certifies T(K) = K."""
    K = hyperrange(T)
    if K.image(T) != K:
        raise InvariantViolation("T does not map the hyperrange onto itself", {"T": T.to_json()})
    return K


def projection(onto, along):
    """Matrix of the projection onto ``onto`` along a complementary ``along``."""
    n = onto.n
    if onto.dim + along.dim != n or onto.intersect(along).dim:
        raise InvariantViolation("subspaces are not complementary")
    if not onto.basis:
        return RationalMatrix.zeros(n)
    B = RationalMatrix._wrap(onto.basis + along.basis).T
    k = onto.dim
    sel = RationalMatrix.diag(*([1] * k + [0] * (n - k)))
    return B @ sel @ B.inverse()


def restriction(T, V):
    """Matrix of T restricted to an invariant subspace V, in V's basis."""
    B = V.matrix()
    # solve B X = T B; B has full column rank
    TB = T @ B
    R, r, pivots = B.hstack(TB).rref()
    if any(p >= V.dim for p in pivots):
        raise InvariantViolation("subspace is not T-invariant")
    return R.submatrix(range(V.dim), range(V.dim, V.dim + V.dim))


@dataclass
class FittingReport:
    H0: Subspace
    K: Subspace
    M: RationalMatrix
    certificates: ring.Certificates

    def to_dict(self):
        return {
            "H0": self.H0.to_json(),
            "K": self.K.to_json(),
            "M": self.M.to_json(),
            "certificates": self.certificates.to_list(),
        }


def fitting_decomposition(T):
    """X = H0(T) (+) K(T), with M the projection onto K along H0."""
    _square(T)
    n = T.rows
    H0, K = quasinilpotent_part(T), analytic_core(T)
    c = ring.Certificates()
    c.add("H0 n K = 0", H0.intersect(K).dim == 0)
    c.add("H0 + K = X", H0.sum(K).dim == n)
    c.add("dim H0 + dim K = n", H0.dim + K.dim == n)
    c.require("Fitting decomposition", {"T": T.to_json()})
    M = projection(K, H0)
    TD = ring.drazin_matrix(T).inverse
    p = ring.spectral_idempotent(T)
    c.add("M = T T^D", M == T @ TD)
    c.add("M = I - p", M == RationalMatrix.identity(n) - p)
    c.add("TM = MT", T @ M == M @ T)
    c.add("M in {T}'' (hyperinvariant)", all(M @ X == X @ M for X in ring.commutant_basis(T)))
    if K.dim:
        c.add("T|K invertible", restriction(T, K).is_invertible())
    if H0.dim:
        c.add("T|H0 nilpotent", restriction(T, H0).is_nilpotent())
    c.add("N(T) n R(T^n) = 0", Subspace.kernel(T).intersect(K).dim == 0)
    c.require("Fitting decomposition", {"T": T.to_json()})
    return FittingReport(H0, K, M, c)


def in_sigma1(T, P):
    """Idempotent P commuting with T and invertible along P (so P <=_H T)."""
    return P.is_idempotent() and P @ T == T @ P and ring.exists_along(T, P)


def check_inclusions(T, P):
    """R(P) in K(T) and H0(T) in N(P) for P in Sigma_1(T)."""
    _square(T)
    if not in_sigma1(T, P):
        raise NotInSigma1("P is not an idempotent in Sigma_1(T)")
    K, H0 = analytic_core(T), quasinilpotent_part(T)
    c = ring.Certificates()
    c.add("R(P) in K(T)", K.contains(Subspace.column_space(P)))
    c.add("H0(T) in N(P)", Subspace.kernel(P).contains(H0))
    if T.is_nilpotent():
        c.add("nilpotent T admits only P = 0", P.is_zero())
    c.require("Sigma_1 inclusions", {"T": T.to_json(), "P": P.to_json()})
    return c


def core_range(T):
    """K_nu(T) = R(TM) with M = T T^D; certified equal to R(M) and K(T), and T-invariant onto."""
    _square(T)
    M = T @ ring.drazin_matrix(T).inverse
    Kv = Subspace.column_space(T @ M)
    c = ring.Certificates()
    c.add("R(TM) = R(M)", Kv == Subspace.column_space(M))
    c.add("R(TM) = K(T)", Kv == analytic_core(T))
    c.add("T K_nu = K_nu", Kv.image(T) == Kv)
    c.require("core range", {"T": T.to_json()})
    return Kv


def rosenblum_block(X, Y):
    """Natural core decomposition of diag(X, Y) for invertible X and nilpotent Y."""
    if not X.is_square or not Y.is_square:
        raise PreconditionFailed("X and Y must be square")
    if not X.is_invertible():
        raise PreconditionFailed("X must be invertible")
    if not Y.is_nilpotent():
        raise PreconditionFailed("Y must be nilpotent")
    T = RationalMatrix.block_diag(X, Y)
    rep = ring.natural_core_decomposition_matrix(T)
    zx, zy = RationalMatrix.zeros(X.rows), RationalMatrix.zeros(Y.rows)
    rep.certificates.add("x = diag(X, 0)", rep.x == RationalMatrix.block_diag(X, zy))
    rep.certificates.add("y = diag(0, Y)", rep.y == RationalMatrix.block_diag(zx, Y))
    rep.certificates.add(
        "M = diag(I, 0)", rep.M == RationalMatrix.block_diag(RationalMatrix.identity(X.rows), zy)
    )
    rep.certificates.require("Rosenblum block", {"X": X.to_json(), "Y": Y.to_json()})
    return rep


def local_spectral_report(T):
    """Everything the operator module computes for T, as a JSON-ready dict."""
    fit = fitting_decomposition(T)
    return {
        "dimension": T.rows,
        "hyperrange": hyperrange(T).to_json(),
        "hyperkernel": hyperkernel(T).to_json(),
        "quasinilpotent_part": fit.H0.to_json(),
        "analytic_core": fit.K.to_json(),
        "core_range": core_range(T).to_json(),
        "fitting": fit.to_dict(),
        "advisory": {"h0_float_probe": round(float_probe(T, fit.H0), 12)},
        "notes": [
            "H0(T) = N(T^n): in finite dimension the quasinilpotent part is the generalized 0-eigenspace",
            "K(T) = C(T) = R(T^n): the chain K(T) in C(T) in T^inf(X) collapses in finite dimension",
        ],
    }
