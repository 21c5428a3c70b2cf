"""Finite semigroups given by Cayley tables, and Green's preorders on them.

Elements are dense 0-based integers. The Cayley table is the only source of
truth: ``table[i, j]`` is the product ``i*j``. Transformation semigroups act on
the right, so ``(x*y)[p] = y[x[p]]``.
"""

from collections import deque
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from geninv import kernels
from geninv.errors import (
    AssociativityViolation,
    ClosureTooLarge,
    InputError,
    NotIdempotent,
    OutOfRangeEntry,
)

KINDS = ("L", "R", "H")
# below this order, preorder queries scan S^1 directly instead of caching ideals
SCAN_LIMIT = 64
DEFAULT_CLOSURE_CAP = 10000


class Semigroup:
    """An immutable finite semigroup.

    Use :func:`build_from_cayley` or :func:`build_from_transformations` rather
    than calling the constructor, which trusts its input.
    """

    def __init__(self, table, identity=None, adjoined=False, labels=None):
        t = np.array(table, dtype=np.int32, copy=True)
        t.setflags(write=False)
        self.table = t
        self.identity = identity
        self.adjoined = adjoined
        # optional human-readable names, e.g. transformation images
        self.labels = labels

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __repr__(self):
        return f"Semigroup(order={self.order}, identity={self.identity})"

    def __eq__(self, other):
        return isinstance(other, Semigroup) and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash(self.table.tobytes())

    def mul(self, *xs):
        """Product of one or more elements, left to right."""
        t = self.table
        acc = xs[0]
        for x in xs[1:]:
            acc = int(t[acc, x])
        return int(acc)

    def power(self, a, k):
        acc = a
        for _ in range(k - 1):
            acc = int(self.table[acc, a])
        return acc

    def check(self, a):
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.order):
            raise InputError(f"element {a!r} is not in 0..{self.order - 1}")
        return int(a)

    # -- cached derived structure -------------------------------------------------

    @cached_property
    def _green(self):
        L, R = kernels.green_matrices(self.table)
        for m in (L, R):
            m.setflags(write=False)
        return L, R

    @property
    def leq_L(self):
        return self._green[0]

    @property
    def leq_R(self):
        return self._green[1]

    @cached_property
    def leq_H(self):
        m = self.leq_L & self.leq_R
        m.setflags(write=False)
        return m

    @cached_property
    def H(self):
        """Boolean matrix of the H equivalence."""
        m = self.leq_H & self.leq_H.T
        m.setflags(write=False)
        return m

    @cached_property
    def idempotents(self):
        t = self.table
        return tuple(int(e) for e in range(self.order) if t[e, e] == e)

    @cached_property
    def is_idempotent(self):
        t = self.table
        return t[np.arange(self.order), np.arange(self.order)] == np.arange(self.order)

    @cached_property
    def commute(self):
        """``commute[x, y]`` is true iff ``xy = yx``."""
        m = self.table == self.table.T
        m.setflags(write=False)
        return m

    @cached_property
    def sharp(self):
        """Group inverse of every element, ``-1`` where none exists."""
        s = kernels.group_inverses(self.table, self.leq_L, self.leq_R)
        s.setflags(write=False)
        return s


# -- construction -----------------------------------------------------------------


def _find_identity(t):
    n = t.shape[0]
    ar = np.arange(n)
    for e in range(n):
        if np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar):
            return e
    return None


def build_from_cayley(order, table, labels=None):
    """Validate a Cayley table and wrap it as a :class:`Semigroup`.

    An identity already present in the table is detected; none is adjoined.
    """
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise InputError(f"table is not a rectangular integer array: {exc}") from None
    if order < 1:
        raise InputError("order must be positive")
    if t.shape != (order, order):
        raise InputError(f"table has shape {t.shape}, expected ({order}, {order})")
    bad = np.argwhere((t < 0) | (t >= order))
    if len(bad):
        i, j = (int(v) for v in bad[0])
        raise OutOfRangeEntry(f"table[{i}][{j}] = {int(t[i, j])} is outside 0..{order - 1}")
    t = t.astype(np.int32)
    triple = kernels.first_nonassociative(t)
    if triple is not None:
        raise AssociativityViolation(triple)
    return Semigroup(t, identity=_find_identity(t), labels=labels)


def build_from_transformations(degree, generators, cap=DEFAULT_CLOSURE_CAP):
    """Close a list of transformations of ``{0..degree-1}`` under composition.

    Elements are numbered in breadth-first discovery order: the generators
    first (input order, duplicates dropped), then right multiples by each
    generator in turn.
    """
    if degree < 1:
        raise InputError("degree must be positive")
    if not generators:
        raise InputError("at least one generator is required")
    gens = []
    for g in generators:
        g = tuple(int(v) for v in g)
        if len(g) != degree or any(not 0 <= v < degree for v in g):
            raise InputError(f"generator {list(g)} is not a total map on 0..{degree - 1}")
        gens.append(g)

    index = {}
    elements = []
    queue = deque()
    for g in gens:
        if g not in index:
            index[g] = len(elements)
            elements.append(g)
            queue.append(g)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(g[p] for p in x)
            if y not in index:
                if len(elements) >= cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)

    n = len(elements)
    arr = np.asarray(elements, dtype=np.int64)  # n x degree
    # composite[x, y, p] = y[x[p]]
    composite = arr[np.arange(n)[None, :, None], arr[:, None, :]]
    keys = {e: i for i, e in enumerate(elements)}
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        for j in range(n):
            table[i, j] = keys[tuple(composite[i, j].tolist())]
    return Semigroup(table, identity=_find_identity(table), labels=[list(e) for e in elements])


def adjoin_identity(S):
    """Return S^1: S itself when it is a monoid, else S with a new identity."""
    if S.identity is not None:
        return S
    n = S.order
    t = np.empty((n + 1, n + 1), dtype=np.int32)
    t[:n, :n] = S.table
    t[n, :] = np.arange(n + 1)
    t[:, n] = np.arange(n + 1)
    labels = None if S.labels is None else list(S.labels) + ["1"]
    return Semigroup(t, identity=n, adjoined=True, labels=labels)


# -- Green's preorders ------------------------------------------------------------


def leq(S, kind, a, b):
    """Green preorder test ``a <=_kind b`` computed over S^1."""
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    a, b = S.check(a), S.check(b)
    if kind == "H":
        return leq(S, "L", a, b) and leq(S, "R", a, b)
    if S.order > SCAN_LIMIT:
        m = S.leq_L if kind == "L" else S.leq_R
        return bool(m[a, b])
    if a == b:  # x = 1 in S^1
        return True
    t = S.table
    if kind == "L":
        return any(t[x, b] == a for x in range(S.order))
    return any(t[b, x] == a for x in range(S.order))


def green_class(S, kind, a):
    """Sorted members of the ``kind``-class of ``a``."""
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}, got {kind!r}")
    a = S.check(a)
    m = {"L": S.leq_L, "R": S.leq_R, "H": S.leq_H}[kind]
    return tuple(int(b) for b in np.flatnonzero(m[a] & m[:, a]))


def green_classes(S, kind):
    """Partition of S into ``kind``-classes, ordered by least member."""
    seen = set()
    out = []
    for a in range(S.order):
        if a in seen:
            continue
        cls = green_class(S, kind, a)
        seen.update(cls)
        out.append(cls)
    return out


# -- idempotents ------------------------------------------------------------------


@dataclass(frozen=True)
class IdempotentPoset:
    """Idempotents of a semigroup under ``e <= f  iff  ef = fe = e``."""

    elements: tuple
    leq: np.ndarray  # leq[i, j] compares elements[i] and elements[j]

    def __post_init__(self):
        object.__setattr__(self, "_pos", {e: i for i, e in enumerate(self.elements)})

    def le(self, e, f):
        return bool(self.leq[self._pos[e], self._pos[f]])

    def maximal(self, subset=None):
        members = list(self.elements if subset is None else sorted(subset))
        out = []
        for e in members:
            if not any(f != e and self.le(e, f) for f in members):
                out.append(e)
        return tuple(out)

    def greatest(self, subset=None):
        members = list(self.elements if subset is None else sorted(subset))
        top = self.maximal(members)
        if len(top) == 1 and all(self.le(e, top[0]) for e in members):
            return top[0]
        return None


def natural_le(S, e, f):
    t = S.table
    return t[e, f] == e and t[f, e] == e


def idempotent_poset(S):
    cached = S.__dict__.get("_poset")
    if cached is not None:
        return cached
    elems = S.idempotents
    k = len(elems)
    rel = np.zeros((k, k), dtype=bool)
    if k:
        E = np.array(elems)
        t = S.table
        rel = (t[E[:, None], E[None, :]] == E[:, None]) & (t[E[None, :], E[:, None]] == E[:, None])
    # partial-order axioms
    assert rel.diagonal().all()
    assert not (rel & rel.T & ~np.eye(k, dtype=bool)).any()
    assert not ((rel.astype(int) @ rel.astype(int) > 0) & ~rel).any()
    rel.setflags(write=False)
    S.__dict__["_poset"] = poset = IdempotentPoset(elems, rel)
    return poset


# -- commutants and corners -------------------------------------------------------


def commutant(S, A):
    """Sorted elements commuting with every member of ``A``."""
    A = [S.check(a) for a in A]
    mask = np.ones(S.order, dtype=bool)
    for a in A:
        mask &= S.commute[:, a]
    return tuple(int(x) for x in np.flatnonzero(mask))


def bicommutant(S, A):
    return commutant(S, commutant(S, A))


def corner_monoid(S, e):
    """The local monoid ``eSe`` and its unit ``e``."""
    e = S.check(e)
    if S.table[e, e] != e:
        raise NotIdempotent(f"element {e} is not idempotent")
    t = S.table
    members = sorted({int(t[t[e, s], e]) for s in range(S.order)})
    return tuple(members), e


# -- serialization ----------------------------------------------------------------


def load_semigroup(obj, cap=DEFAULT_CLOSURE_CAP):
    """Build a semigroup from the JSON input schema (already parsed)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("semigroup input must be an object with a 'kind' field")
    kind = obj["kind"]
    if kind == "cayley":
        for field in ("order", "table"):
            if field not in obj:
                raise InputError(f"cayley input is missing field '{field}'")
        return build_from_cayley(int(obj["order"]), obj["table"])
    if kind == "transformations":
        for field in ("degree", "generators"):
            if field not in obj:
                raise InputError(f"transformations input is missing field '{field}'")
        return build_from_transformations(int(obj["degree"]), obj["generators"], cap=cap)
    raise InputError(f"unknown semigroup kind {kind!r}")


def dump_semigroup(S):
    return {"kind": "cayley", "order": S.order, "table": S.table.tolist()}
