"""Generalized inverses in the ring of n x n rational matrices.

All arithmetic is exact. Green's preorders in the matrix ring are read off
from ranks: ``x <=_L y`` iff the row space of x lies in that of y, and
``x <=_R y`` iff the column space of x lies in that of y.
"""

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from geninv.errors import EquivalenceMismatch, InputError, InvariantViolation, NotIdempotent, NotInvertibleAlong
from geninv.inverses import InverseReport
from geninv.rational import RationalMatrix, SingularMatrix

# fixed perturbation seed: the inner-inverse independence check must be reproducible
PERTURBATION_SEED = 20240601


@dataclass
class Certificates:
    items: list = field(default_factory=list)

    def add(self, name, passed):
        self.items.append((name, bool(passed)))
        return bool(passed)

    @property
    def ok(self):
        return all(p for _, p in self.items)

    def failed(self):
        return [n for n, p in self.items if not p]

    def require(self, what, payload=None):
        if not self.ok:
            raise InvariantViolation(f"{what}: failed {self.failed()}", payload)

    def to_list(self):
        return [{"name": n, "pass": p} for n, p in self.items]


def _square(A, name="matrix"):
    if not A.is_square:
        raise InputError(f"{name} must be square, got shape {A.shape}")


def rref(A):
    """Reduced row echelon form, rank and pivot columns."""
    return A.rref()


def leq_L(x, y):
    return y.vstack(x).rank() == y.rank()


def leq_R(x, y):
    return y.hstack(x).rank() == y.rank()


def leq_H(x, y):
    return leq_L(x, y) and leq_R(x, y)


def full_rank_factorization(d):
    """``d = P Q`` with P the pivot columns of d and Q the nonzero rows of its RREF."""
    R, r, pivots = d.rref()
    if r == 0:
        return None, None
    P = d.submatrix(range(d.rows), pivots)
    Q = R.submatrix(range(r), range(d.cols))
    return P, Q


def inner_inverse(d):
    """Deterministic associate ``d^-`` with ``d d^- d = d``."""
    P, Q = full_rank_factorization(d)
    if P is None:
        return RationalMatrix.zeros(d.cols, d.rows)
    dm = Q.T @ (Q @ Q.T).inverse() @ (P.T @ P).inverse() @ P.T
    if d @ dm @ d != d:
        raise InvariantViolation("inner inverse fails d d^- d = d", {"d": d.to_json()})
    return dm


def perturbed_inner_inverse(d, dm, seed=PERTURBATION_SEED, bound=3):
    """Another associate ``d^- + (I - d^- d) W (I - d d^-)`` for a seeded integer W."""
    rng = random.Random(seed)
    W = RationalMatrix([[rng.randint(-bound, bound) for _ in range(d.rows)] for _ in range(d.cols)])
    In, Im = RationalMatrix.identity(d.cols), RationalMatrix.identity(d.rows)
    return dm + (In - dm @ d) @ W @ (Im - d @ dm)


def group_inverse_matrix(A):
    """Group inverse ``A^#`` or None; exists iff rank(A) = rank(A^2)."""
    _square(A)
    if A.rank() != (A @ A).rank():
        return None
    P, Q = full_rank_factorization(A)
    if P is None:
        return RationalMatrix.zeros(A.rows)
    QPi = (Q @ P).inverse()
    X = P @ QPi @ QPi @ Q
    ok = A @ X == X @ A and A @ X @ A == A and X @ A @ X == X
    if not ok:
        raise InvariantViolation("group inverse identities fail", {"A": A.to_json()})
    return X


def _try_inverse(u):
    try:
        return u.inverse()
    except SingularMatrix:
        return None


def invert_along(a, d, seed=PERTURBATION_SEED):
    """Inverse of ``a`` along ``d`` via the unit criterion, cross-checked five ways.

    Raises :class:`NotInvertibleAlong` (carrying the report) when it does not exist.
    """
    _square(a, "a")
    _square(d, "d")
    if a.shape != d.shape:
        raise InputError(f"a and d must have the same size, got {a.shape} and {d.shape}")
    n = a.rows
    I = RationalMatrix.identity(n)
    dm = inner_inverse(d)
    da, ad = d @ a, a @ d
    dad = da @ d
    u = da + I - d @ dm
    v = ad + I - dm @ d
    ui, vi = _try_inverse(u), _try_inverse(v)
    ad_sharp = group_inverse_matrix(ad)
    da_sharp = group_inverse_matrix(da)
    conds = {
        "u invertible": ui is not None,
        "v invertible": vi is not None,
        "rank(dad) = rank(d)": dad.rank() == d.rank(),
        "d <=_R da and (da)# exists": leq_R(d, da) and da_sharp is not None,
        "d <=_L ad and (ad)# exists": leq_L(d, ad) and ad_sharp is not None,
        "dad H d": leq_H(dad, d) and leq_H(d, dad),
        "d <=_H dad": leq_H(d, dad),
    }
    payload = {"a": a.to_json(), "d": d.to_json(), "conditions": conds}
    if len(set(conds.values())) != 1:
        raise EquivalenceMismatch("unit criterion and existence conditions disagree", payload)
    rep = InverseReport(exists=conds["u invertible"], conditions=conds)
    if not rep.exists:
        raise NotInvertibleAlong("a is not invertible along d", rep)
    b = ui @ d
    rep.witness = b
    rep.certify("u^-1 d = d v^-1", b == d @ vi)
    rep.certify("b = d(ad)#", b == d @ ad_sharp)
    rep.certify("b = (da)#d", b == da_sharp @ d)
    dm2 = perturbed_inner_inverse(d, dm, seed)
    rep.certify("d d2^- d = d", d @ dm2 @ d == d)
    u2 = da + I - d @ dm2
    u2i = _try_inverse(u2)
    rep.certify("independent of inner inverse", u2i is not None and u2i @ d == b)
    rep.certify("bad = d", b @ a @ d == d)
    rep.certify("dab = d", d @ a @ b == d)
    rep.certify("bab = b", b @ a @ b == b)
    rep.certify("b H d", leq_H(b, d) and leq_H(d, b))
    if not rep.ok:
        raise EquivalenceMismatch("inverse along d failed a certificate",
                                  dict(payload, certificates=rep.certificates))
    return rep


def invert_along_idempotent(a, e):
    """Inverse along an idempotent, ``(ea + 1 - e)^-1 e``, with the commuting-case checks."""
    _square(a, "a")
    if not e.is_idempotent():
        raise NotIdempotent("e is not idempotent")
    n = a.rows
    I = RationalMatrix.identity(n)
    u = e @ a + I - e
    v = a @ e + I - e
    ui, vi = _try_inverse(u), _try_inverse(v)
    conds = {"u invertible": ui is not None, "v invertible": vi is not None}
    commuting = a @ e == e @ a
    if commuting:
        w = I + a @ e - e
        conds["1 + ae - e invertible"] = _try_inverse(w) is not None
        conds["e <=_H a"] = leq_H(e, a)
    if len(set(conds.values())) != 1:
        raise EquivalenceMismatch("idempotent unit criteria disagree",
                                  {"a": a.to_json(), "e": e.to_json(), "conditions": conds})
    exists = conds["u invertible"]
    if commuting:
        # sufficient condition only: a + 1 - e invertible  =>  e <=_H a
        sufficient = _try_inverse(a + I - e) is not None
        conds["a + 1 - e invertible"] = sufficient
        if sufficient and not exists:
            raise InvariantViolation("a + 1 - e is a unit but e is not below a",
                                     {"a": a.to_json(), "e": e.to_json()})
    if not exists:
        raise NotInvertibleAlong("a is not invertible along e", InverseReport(False, conditions=conds))
    general = invert_along(a, e)
    rep = InverseReport(True, ui @ e, list(general.certificates), conds)
    rep.certify("u^-1 e = e v^-1", ui @ e == e @ vi)
    rep.certify("agrees with general criterion", ui @ e == general.witness)
    if not rep.ok:
        raise EquivalenceMismatch("inverse along idempotent failed a certificate",
                                  {"a": a.to_json(), "e": e.to_json()})
    return rep


def exists_along(a, d):
    try:
        invert_along(a, d)
    except NotInvertibleAlong:
        return False
    return True


@dataclass
class DrazinReport:
    index: int
    inverse: RationalMatrix
    certificates: Certificates

    def to_dict(self):
        return {
            "index": self.index,
            "inverse": self.inverse.to_json(),
            "index_convention": "invertible matrices report index 1",
            "certificates": self.certificates.to_list(),
        }


def drazin_index(A):
    _square(A)
    k = 1
    Pk = A
    Pk1 = A @ A
    rk = Pk.rank()
    while True:
        rk1 = Pk1.rank()
        if rk == rk1:
            return k
        k += 1
        Pk, Pk1, rk = Pk1, Pk1 @ A, rk1


def drazin_matrix(A):
    """Drazin index and inverse ``A^k (A^(2k+1))^- A^k``, with certificates."""
    _square(A)
    n = A.rows
    k = drazin_index(A)
    Ak = A ** k
    AD = Ak @ inner_inverse(A ** (2 * k + 1)) @ Ak
    I = RationalMatrix.identity(n)
    c = Certificates()
    c.add("A^D A = A A^D", AD @ A == A @ AD)
    c.add("A^D A A^D = A^D", AD @ A @ AD == AD)
    c.add("A^(k+1) A^D = A^k", (A ** (k + 1)) @ AD == Ak)
    c.add("A^2 A^D - A nilpotent", (A @ A @ AD - A).is_nilpotent())
    p = I - A @ AD
    Api = _try_inverse(A + p)
    c.add("A + p invertible", Api is not None)
    c.add("A^D = (A + p)^-1 (I - p)", Api is not None and Api @ (I - p) == AD)
    c.require("Drazin certificates", {"A": A.to_json()})
    return DrazinReport(k, AD, c)


def spectral_idempotent(A, commutant=None):
    """Spectral idempotent ``p = I - A A^D``; certificates are enforced."""
    _square(A)
    I = RationalMatrix.identity(A.rows)
    AD = drazin_matrix(A).inverse
    p = I - A @ AD
    c = Certificates()
    c.add("p^2 = p", p @ p == p)
    c.add("Ap = pA", A @ p == p @ A)
    c.add("Ap nilpotent", (A @ p).is_nilpotent())
    c.add("A + p invertible", (A + p).is_invertible())
    basis = commutant_basis(A) if commutant is None else commutant
    c.add("p in {A}''", all(p @ X == X @ p for X in basis))
    c.require("spectral idempotent certificates", {"A": A.to_json()})
    return p


def _commutation_system(mats, n):
    # row-major vec(X); one block of n^2 equations XA - AX = 0 per matrix A
    rows = []
    for A in mats:
        for i in range(n):
            for j in range(n):
                row = [Fraction(0)] * (n * n)
                for q in range(n):
                    row[i * n + q] += A[q, j]
                for p in range(n):
                    row[p * n + j] -= A[i, p]
                rows.append(row)
    return RationalMatrix(rows)


def commutant_basis(*mats):
    """Basis of the matrices commuting with every argument."""
    if not mats:
        raise InputError("commutant_basis needs at least one matrix")
    n = mats[0].rows
    for A in mats:
        _square(A)
    K = _commutation_system(mats, n)
    basis = []
    for v in K.nullspace():
        basis.append(RationalMatrix._wrap(tuple(tuple(v[i * n:(i + 1) * n]) for i in range(n))))
    return basis


def bicommutant_basis(A):
    return commutant_basis(*commutant_basis(A))


def polynomial_span_dimension(A):
    """Degree of the minimal polynomial: dim span{I, A, A^2, ...}."""
    n = A.rows
    vecs = []
    P = RationalMatrix.identity(n)
    for _ in range(n + 1):
        vecs.append([x for r in P.tolist() for x in r])
        P = P @ A
    # rank grows until the first dependency, then stays put
    rank = 0
    for m in range(1, n + 2):
        r = RationalMatrix(vecs[:m]).rank()
        if r == rank:
            break
        rank = r
    return rank


# -- polynomial idempotents -------------------------------------------------------

_t = sympy.Symbol("t")


def _to_fraction(c):
    c = sympy.Rational(c)
    return Fraction(int(c.p), int(c.q))


def _poly(coeffs):
    return sympy.Poly([sympy.Rational(x.numerator, x.denominator) for x in coeffs], _t, domain="QQ")


def poly_at(poly, A):
    """Evaluate a sympy polynomial at a square matrix (Horner)."""
    n = A.rows
    I = RationalMatrix.identity(n)
    acc = RationalMatrix.zeros(n)
    for c in poly.all_coeffs():
        acc = acc @ A + I.scale(_to_fraction(c))
    return acc


@dataclass(frozen=True)
class SpectralPiece:
    """Projection onto the generalized kernel of ``factors`` along the rest."""

    factors: tuple  # irreducible factors as strings, for reporting
    contains_zero: bool  # whether t divides the selected part
    P: RationalMatrix


def spectral_pieces(A):
    """Idempotents p(A) from every coprime splitting of the characteristic polynomial.

    Irreducible factors over Q are grouped with their multiplicity; for each
    subset S the CRT polynomial that is 1 mod prod_S and 0 mod the rest gives
    the projection onto the corresponding generalized eigenspaces.
    """
    _square(A)
    chi = _poly(A.charpoly())
    _, factors = chi.factor_list()
    parts = [(f, m) for f, m in factors]
    pieces = []
    for k in range(len(parts) + 1):
        for subset in itertools.combinations(range(len(parts)), k):
            g = sympy.Poly(1, _t, domain="QQ")
            h = sympy.Poly(1, _t, domain="QQ")
            for i, (f, m) in enumerate(parts):
                if i in subset:
                    g = g * f ** m
                else:
                    h = h * f ** m
            s, _, one = h.gcdex(g)
            assert one.is_one
            P = poly_at((s * h).rem(chi), A)
            has_zero = any(parts[i][0].eval(0) == 0 for i in subset)
            names = tuple(str(parts[i][0].as_expr()) for i in subset)
            pieces.append(SpectralPiece(names, has_zero, P))
    return pieces


# -- natural core decomposition ----------------------------------------------------


@dataclass
class DecompositionReport:
    x: RationalMatrix
    y: RationalMatrix
    M: RationalMatrix
    b: RationalMatrix
    nilpotency_degree: int
    certificates: Certificates

    def to_dict(self):
        return {
            "x": self.x.to_json(),
            "y": self.y.to_json(),
            "M": self.M.to_json(),
            "b": self.b.to_json(),
            "y_nilpotency_degree": self.nilpotency_degree,
            "certificates": self.certificates.to_list(),
        }


def in_sigma2(A, E, commutant):
    """E in Sigma_2(A): idempotent, in {A}'' and invertible-along (E <=_H A)."""
    if not E.is_idempotent():
        return False
    if not all(E @ X == X @ E for X in commutant):
        return False
    return exists_along(A, E)


def natural_core_decomposition_matrix(A):
    """``A = x + y`` with ``x = A M``, ``M = A A^D`` greatest in Sigma_2(A)."""
    _square(A)
    n = A.rows
    dr = drazin_matrix(A)
    b = dr.inverse
    M = A @ b
    x = A @ b @ A
    y = A - x
    comm = commutant_basis(A)
    c = Certificates()
    c.add("x = AM", x == A @ M)
    c.add("x + y = A", x + y == A)
    c.add("xy = 0", (x @ y).is_zero())
    c.add("yx = 0", (y @ x).is_zero())
    xs = group_inverse_matrix(x)
    c.add("x# exists and equals A^D", xs is not None and xs == b)
    degree = y.nilpotency_degree()
    if y.is_zero():
        degree = 1
    c.add("y nilpotent", degree is not None)
    c.add("x in {A}''", all(x @ X == X @ x for X in comm))
    c.add("M in {A}''", all(M @ X == X @ M for X in comm))
    c.add("M in Sigma_2(A)", in_sigma2(A, M, comm))
    for piece in spectral_pieces(A):
        if in_sigma2(A, piece.P, comm):
            c.add(f"q <= M for q from {list(piece.factors)}", piece.P @ M == piece.P == M @ piece.P)
    c.require("natural core decomposition", {"A": A.to_json()})
    return DecompositionReport(x, y, M, b, degree, c)


@dataclass
class Sigma2Report:
    M: RationalMatrix
    candidates: list  # (factors, P, in_sigma2)
    members: list
    certificates: Certificates

    def to_dict(self):
        return {
            "M": self.M.to_json(),
            "candidates": [
                {"factors": list(f), "P": P.to_json(), "in_sigma2": s} for f, P, s in self.candidates
            ],
            "certificates": self.certificates.to_list(),
        }


def sigma2_greatest_check(A):
    """Try to falsify that ``A A^D`` is the greatest idempotent in Sigma_2(A).

    The candidate battery is every spectral piece of the characteristic
    polynomial (polynomials in A, hence in {A}''), together with ``A A^D``.
    """
    _square(A)
    comm = commutant_basis(A)
    M = A @ drazin_matrix(A).inverse
    c = Certificates()
    candidates = []
    members = []
    seen = set()
    for piece in spectral_pieces(A):
        s = in_sigma2(A, piece.P, comm)
        candidates.append((piece.factors, piece.P, s))
        c.add(f"membership of {list(piece.factors)} matches the spectrum", s == (not piece.contains_zero))
        if s and piece.P not in seen:
            seen.add(piece.P)
            members.append(piece.P)
    c.add("M in Sigma_2(A)", in_sigma2(A, M, comm))
    c.add("M generated", M in seen)
    for P in members:
        c.add("candidate <= M", P @ M == P == M @ P)
    singular = not A.is_invertible()
    nilpotent = A.is_nilpotent()
    if singular and not nilpotent:
        c.add("singular non-nilpotent => M != 0", not M.is_zero())
    if nilpotent:
        c.add("nilpotent => Sigma_2 = {0}", all(P.is_zero() for P in members) and M.is_zero())
    return Sigma2Report(M, candidates, members, c)


def bicommutant_matches_polynomials(A):
    """``{A}''`` has the dimension of span{I, A, ..., A^(m-1)} and contains each power."""
    bic = bicommutant_basis(A)
    m = polynomial_span_dimension(A)
    n = A.rows
    comm = commutant_basis(A)
    P = RationalMatrix.identity(n)
    powers_inside = True
    for _ in range(m):
        powers_inside &= all(P @ X == X @ P for X in comm)
        P = P @ A
    return len(bic) == m and powers_inside


def commuting_idempotent_battery(A):
    """Idempotents commuting with A: spectral pieces of A and of each commutant basis element."""
    seen = {}
    for B in [A] + commutant_basis(A):
        for piece in spectral_pieces(B):
            seen.setdefault(piece.P, None)
    return list(seen)


def nilpotent_sigma1_certificate(A):
    """For nilpotent A, every commuting idempotent P <=_H A collapses to 0.

    Uses ``P = P (A^{||P})^n A^n`` with ``A^n = 0``. Returns the number of
    idempotents tested.
    """
    _square(A)
    if not A.is_nilpotent():
        raise InputError("nilpotent_sigma1_certificate needs a nilpotent matrix")
    n = A.rows
    An = A ** n
    tested = 0
    for P in commuting_idempotent_battery(A):
        tested += 1
        if not exists_along(A, P):
            continue
        b = invert_along(A, P).witness
        if P != P @ (b ** n) @ An or not P.is_zero():
            raise InvariantViolation("nonzero idempotent below a nilpotent", {"A": A.to_json(), "P": P.to_json()})
    return tested


def core_decomposition_is_unique(A, x2, y2):
    """Check that a candidate split ``A = x2 + y2`` meeting the core conditions equals the computed one.

    Returns None when ``(x2, y2)`` is not a valid split, else whether ``x2 = x``.
    """
    comm = commutant_basis(A)
    valid = (
        x2 + y2 == A
        and (x2 @ y2).is_zero()
        and (y2 @ x2).is_zero()
        and group_inverse_matrix(x2) is not None
        and y2.is_nilpotent()
        and all(x2 @ X == X @ x2 for X in comm)
    )
    if not valid:
        return None
    return x2 == natural_core_decomposition_matrix(A).x
