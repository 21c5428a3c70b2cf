"""Generalized inverses in a finite semigroup.

Every existence question is answered by scanning the whole semigroup; closed
forms such as ``b = d (ad)^#`` are computed separately and compared with the
scan, so a wrong formula surfaces as :class:`EquivalenceMismatch` instead of a
silently wrong answer.

Weak (outer) inverses are the solutions of ``xax = x``.
"""

from dataclasses import dataclass, field

import numpy as np

from geninv.errors import BijectionFailure, EquivalenceMismatch, InputError
from geninv.semigroup import corner_monoid, idempotent_poset, natural_le


@dataclass
class InverseReport:
    exists: bool
    witness: int | None = None
    certificates: list = field(default_factory=list)  # (name, passed)
    conditions: dict = field(default_factory=dict)

    def certify(self, name, passed):
        self.certificates.append((name, bool(passed)))

    @property
    def ok(self):
        return all(p for _, p in self.certificates)

    def to_dict(self):
        w = self.witness
        return {
            "exists": self.exists,
            "witness": w.to_json() if hasattr(w, "to_json") else w,
            "conditions": dict(self.conditions),
            "certificates": [{"name": n, "pass": p} for n, p in self.certificates],
        }


@dataclass(frozen=True)
class SigmaSet:
    j: int
    members: tuple
    maximal: tuple
    greatest: int | None

    def to_dict(self):
        return {
            "j": self.j,
            "members": list(self.members),
            "maximal": list(self.maximal),
            "greatest": self.greatest,
        }


@dataclass(frozen=True)
class CoreDecomposition:
    M: int
    inverse: int
    core: int

    def to_dict(self):
        return {"M": self.M, "inverse": self.inverse, "core": self.core}


@dataclass(frozen=True)
class NaturalInverse:
    j: int
    sigma: SigmaSet
    decomposition: CoreDecomposition | None
    maximal_inverses: tuple  # (e, a^{||e}) for each maximal e

    @property
    def exists(self):
        return self.decomposition is not None

    def to_dict(self):
        return {
            "j": self.j,
            "naturally_invertible": self.exists,
            "sigma": self.sigma.to_dict(),
            "decomposition": None if self.decomposition is None else self.decomposition.to_dict(),
            "maximal_inverses": [{"e": e, "inverse": b} for e, b in self.maximal_inverses],
        }


def _check_j(j, allowed=(0, 1, 2)):
    if j not in allowed:
        raise InputError(f"j must be one of {allowed}, got {j!r}")


def associates(S, a):
    """All inner inverses ``x`` with ``axa = a``; empty iff ``a`` is not regular."""
    a = S.check(a)
    t = S.table
    xs = np.arange(S.order)
    return tuple(int(x) for x in xs[t[t[a, xs], a] == a])


def weak_inverses(S, a):
    """All outer inverses ``x`` with ``xax = x``."""
    a = S.check(a)
    t = S.table
    xs = np.arange(S.order)
    return tuple(int(x) for x in xs[t[t[xs, a], xs] == xs])


def group_inverse(S, a):
    a = S.check(a)
    t = S.table
    a2 = int(t[a, a])
    rep = InverseReport(exists=bool(S.H[a, a2]))
    rep.conditions["a H a^2"] = rep.exists
    found = [
        int(x)
        for x in np.flatnonzero(S.H[a])
        if t[x, a] == t[a, x] and t[t[a, x], a] == a and t[t[x, a], x] == x
    ]
    if len(found) > 1 or bool(found) != rep.exists:
        raise EquivalenceMismatch(
            "group inverse scan disagrees with a H a^2",
            {"a": a, "found": found, "a_H_a2": rep.exists},
        )
    if rep.exists:
        x = found[0]
        rep.witness = x
        rep.certify("xa=ax", t[x, a] == t[a, x])
        rep.certify("axa=a", S.mul(a, x, a) == a)
        rep.certify("xax=x", S.mul(x, a, x) == x)
        rep.certify("x H a", S.H[x, a])
    return rep


def _sharp(S, x):
    s = int(S.sharp[x])
    return None if s < 0 else s


def inverse_along(S, a, d):
    """Inverse of ``a`` along ``d``, with every equivalent existence test cross-checked."""
    a, d = S.check(a), S.check(d)
    t = S.table
    L, R, H = S.leq_L, S.leq_R, S.H
    da, ad = int(t[d, a]), int(t[a, d])
    dad = int(t[da, d])

    # definition: bad = d = dab and b <=_H d, by exhaustive scan
    by_def = [
        b
        for b in range(S.order)
        if t[t[b, a], d] == d and t[da, b] == d and L[b, d] and R[b, d]
    ]
    by_lemma = [b for b in range(S.order) if S.mul(b, a, b) == b and H[b, d]]
    conds = {
        "exists": bool(by_def),
        "d <=_R da and (da)# exists": bool(R[d, da] and S.sharp[da] >= 0),
        "d <=_L ad and (ad)# exists": bool(L[d, ad] and S.sharp[ad] >= 0),
        "dad H d": bool(H[dad, d]),
        "d <=_H dad": bool(L[d, dad] and R[d, dad]),
    }
    payload = {"table": S.table.tolist(), "a": a, "d": d, "conditions": conds}
    if len(set(conds.values())) != 1:
        raise EquivalenceMismatch("existence criteria disagree", payload)
    exists = conds["exists"]
    rep = InverseReport(exists=exists, conditions=conds)
    if bool(by_lemma) != exists or len(by_lemma) > 1 or len(by_def) > 1:
        raise EquivalenceMismatch("definition and lemma characterizations disagree",
                                  dict(payload, by_def=by_def, by_lemma=by_lemma))
    if not exists:
        return rep
    b = S.mul(d, _sharp(S, ad))
    b_left = S.mul(_sharp(S, da), d)
    rep.witness = b
    rep.certify("b=d(ad)#", b == by_def[0])
    rep.certify("b=(da)#d", b_left == b)
    rep.certify("bad=d", S.mul(b, a, d) == d)
    rep.certify("dab=d", S.mul(d, a, b) == d)
    rep.certify("b <=_H d", L[b, d] and R[b, d])
    rep.certify("bab=b", S.mul(b, a, b) == b)
    rep.certify("b H d", H[b, d])
    rep.certify("unique", by_def == [b] and by_lemma == [b])
    if not rep.ok:
        raise EquivalenceMismatch("inverse along d failed a certificate",
                                  dict(payload, certificates=rep.certificates))
    return rep


def _sigma0_mask(S, a):
    t = S.table
    E = np.array(S.idempotents, dtype=np.int64)
    if len(E) == 0:
        return E
    eae = t[t[E, a], E]
    return E[S.H[eae, E]]


def sigma(S, a, j):
    """Idempotents e with ``eae H e``, cut down by {a}' (j=1) or {a}'' (j=2)."""
    a = S.check(a)
    _check_j(j)
    members = set(int(e) for e in _sigma0_mask(S, a))
    if j >= 1:
        comm = S.commute[:, a]
        if j == 1:
            members = {e for e in members if comm[e]}
        else:
            inner = np.flatnonzero(comm)
            bic = S.commute[:, inner].all(axis=1)
            members = {e for e in members if bic[e]}
    members = tuple(sorted(members))
    poset = idempotent_poset(S)
    return SigmaSet(j, members, poset.maximal(members), poset.greatest(members))


@dataclass
class LemmaReport:
    a: int
    commuting_lemma_failures: list = field(default_factory=list)
    band_failures: list = field(default_factory=list)
    corner_failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not (self.commuting_lemma_failures or self.band_failures or self.corner_failures)


def check_sigma_lemmas(S, a):
    """Check the idempotent lemmas for ``a``; failures are collected, not raised."""
    a = S.check(a)
    t = S.table
    rep = LemmaReport(a)
    s0 = set(sigma(S, a, 0).members)
    for e in S.idempotents:
        if t[a, e] == t[e, a]:
            le_h = bool(S.leq_H[e, a])
            if (e in s0) != le_h:
                rep.commuting_lemma_failures.append({"e": e, "in_sigma0": e in s0, "e<=_H a": le_h})
    s2 = sigma(S, a, 2).members
    for e in s2:
        for f in s2:
            ef = int(t[e, f])
            if ef != t[f, e] or ef not in s2:
                rep.band_failures.append({"e": e, "f": f, "ef": ef, "fe": int(t[f, e])})
    for e in S.idempotents:
        corner, unit = corner_monoid(S, e)
        x = S.mul(e, a, e)
        inv = [y for y in corner if t[x, y] == unit and t[y, x] == unit]
        invertible = bool(inv)
        if invertible != (e in s0):
            rep.corner_failures.append({"e": e, "in_sigma0": e in s0, "corner_invertible": invertible})
            continue
        if invertible:
            b = inverse_along(S, a, e).witness
            forms = {
                "(eae)^-1": inv[0],
                "(ea)#e": S.mul(_sharp(S, int(t[e, a])), e) if S.sharp[t[e, a]] >= 0 else None,
                "e(ae)#": S.mul(e, _sharp(S, int(t[a, e]))) if S.sharp[t[a, e]] >= 0 else None,
                "(eae)#": _sharp(S, x),
            }
            if any(v != b for v in forms.values()):
                rep.corner_failures.append({"e": e, "inverse_along": b, **forms})
    return rep


def tau(S, a, j):
    """Pairs ``(b, ab)`` for outer inverses ``b`` in {a}' (j=1) or {a}'' (j=2).

    Raises :class:`BijectionFailure` if ``b -> ab`` is not a bijection onto
    Sigma_j(a) inverted by ``e -> a^{||e}``.
    """
    a = S.check(a)
    _check_j(j, (1, 2))
    comm = S.commute[:, a]
    if j == 1:
        allowed = comm
    else:
        allowed = S.commute[:, np.flatnonzero(comm)].all(axis=1)
    domain = [b for b in weak_inverses(S, a) if allowed[b]]
    pairs = [(b, S.mul(a, b)) for b in domain]
    target = sigma(S, a, j).members
    images = [e for _, e in pairs]
    payload = {"table": S.table.tolist(), "a": a, "j": j, "pairs": pairs, "sigma": list(target)}
    if len(set(images)) != len(images):
        raise BijectionFailure("tau is not injective", payload)
    if sorted(images) != list(target):
        raise BijectionFailure("tau is not onto Sigma_j(a)", payload)
    for b, e in pairs:
        if inverse_along(S, a, e).witness != b:
            raise BijectionFailure("inverse of tau is not e -> a^{||e}", payload)
    return sorted(pairs, key=lambda p: p[1])


def natural_inverse(S, a, j=2):
    """j-natural inverse of ``a``: the inverse along the greatest element of Sigma_j(a)."""
    a = S.check(a)
    sig = sigma(S, a, j)
    maximal = tuple((e, inverse_along(S, a, e).witness) for e in sig.maximal)
    if sig.greatest is None:
        return NaturalInverse(j, sig, None, maximal)
    M = sig.greatest
    b = inverse_along(S, a, M).witness
    core = S.mul(a, M)
    t = S.table
    if not (core == S.mul(a, b, a) and S.mul(b, a, b) == b and S.H[b, M]):
        raise EquivalenceMismatch("core decomposition identities fail",
                                  {"table": t.tolist(), "a": a, "M": M, "b": b})
    return NaturalInverse(j, sig, CoreDecomposition(M, b, core), maximal)


def is_distributive(S, members):
    """Distributivity of the band ``members`` with ``e v f = ef``.

    ``ef <= x`` must imply ``x = e'f'`` for some ``e <= e'``, ``f <= f'`` in members.
    """
    t = S.table
    members = list(members)
    for e in members:
        for f in members:
            ef = int(t[e, f])
            for x in members:
                if not natural_le(S, ef, x):
                    continue
                if not any(
                    natural_le(S, e, e2) and natural_le(S, f, f2) and t[e2, f2] == x
                    for e2 in members
                    for f2 in members
                ):
                    return False
    return True


def drazin(S, a):
    """Drazin index and inverse of ``a``; every element of a finite semigroup has one."""
    a = S.check(a)
    t = S.table
    powers = [None, a]
    for _ in range(S.order + 1):
        powers.append(int(t[powers[-1], a]))
    index = None
    for n in range(1, S.order + 2):
        if S.H[powers[n], powers[n + 1]]:
            index = n
            break
    if index is None:
        raise EquivalenceMismatch("no power of a lies in a group", {"table": t.tolist(), "a": a})
    an, an1 = powers[index], powers[index + 1]
    found = [
        x
        for x in range(S.order)
        if t[x, a] == t[a, x] and S.mul(x, a, x) == x and t[x, an1] == an
    ]
    payload = {"table": t.tolist(), "a": a, "index": index, "found": found}
    if len(found) != 1:
        raise EquivalenceMismatch("Drazin inverse is not unique", payload)
    x = found[0]
    # the index is minimal for the Drazin identities as well
    if index > 1 and any(
        t[y, a] == t[a, y] and S.mul(y, a, y) == y and t[y, powers[index]] == powers[index - 1]
        for y in range(S.order)
    ):
        raise EquivalenceMismatch("Drazin index is not minimal", payload)
    for j in (1, 2):
        nat = natural_inverse(S, a, j)
        if nat.decomposition is None or nat.decomposition.inverse != x:
            raise EquivalenceMismatch(f"Drazin inverse differs from {j}-natural inverse",
                                      dict(payload, natural=nat.to_dict()))
        if nat.decomposition.M != S.mul(a, x):
            raise EquivalenceMismatch("aa^D is not the greatest idempotent", payload)
    return index, x
