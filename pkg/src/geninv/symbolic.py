"""Two infinite presented semigroups generated by ``a``, ``e``, ``f``.

Both satisfy ``e = e^2 = ea = ae`` and ``f = f^2 = fa = af``. In model A the
idempotents commute (``ef = fe``); in model B they form a left-zero band
(``ef = e``, ``fe = f``). Elements are kept in canonical form: a power
``a^n`` (n >= 1) or an idempotent word, so equality is syntactic.

No finite Cayley table can stand in for model A: in a finite semigroup every
element has a greatest idempotent below it, and model A's point is that ``a``
does not.
"""

import random
from dataclasses import dataclass

from geninv.errors import InputError
from geninv.inverses import SigmaSet

KINDS = ("L", "R", "H")


@dataclass(frozen=True, order=True)
class SymElement:
    # rank orders idempotent words before powers in sorted output
    rank: int
    n: int = 0

    def __str__(self):
        if self.rank == _POWER:
            return "a" if self.n == 1 else f"a^{self.n}"
        return _NAMES[self.rank]

    @property
    def is_power(self):
        return self.rank == _POWER


_E, _F, _EF, _POWER = 0, 1, 2, 3
_NAMES = {_E: "E", _F: "F", _EF: "EF"}
_LETTERS = {_E: frozenset("e"), _F: frozenset("f"), _EF: frozenset("ef")}
_FROM_LETTERS = {v: k for k, v in _LETTERS.items()}

E = SymElement(_E)
F = SymElement(_F)
EF = SymElement(_EF)


def Power(n):
    if n < 1:
        raise InputError(f"powers start at a^1, got exponent {n}")
    return SymElement(_POWER, n)


A = Power(1)


def mul_A(x, y):
    """Product in the model with commuting idempotents."""
    if x.is_power and y.is_power:
        return Power(x.n + y.n)
    if x.is_power:
        return y
    if y.is_power:
        return x
    return SymElement(_FROM_LETTERS[_LETTERS[x.rank] | _LETTERS[y.rank]])


def mul_B(x, y):
    """Product in the model where ``ef = e`` and ``fe = f``."""
    if EF in (x, y):
        raise InputError("EF is not an element of model B (ef reduces to e)")
    if x.is_power and y.is_power:
        return Power(x.n + y.n)
    if x.is_power:
        return y
    return x


@dataclass(frozen=True)
class Model:
    name: str
    mul: object
    idempotents: tuple

    def product(self, *xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = self.mul(acc, x)
        return acc

    def check(self, x):
        if not isinstance(x, SymElement) or (not x.is_power and x not in self.idempotents):
            raise InputError(f"{x} is not an element of {self.name}")
        return x

    def shapes(self, max_exponent=5):
        """Idempotent words and powers up to ``max_exponent``."""
        return list(self.idempotents) + [Power(k) for k in range(1, max_exponent + 1)]


MODEL_A = Model("paper-example-A", mul_A, (E, F, EF))
MODEL_B = Model("paper-example-B", mul_B, (E, F))
MODELS = {m.name: m for m in (MODEL_A, MODEL_B)}


def get_model(name):
    try:
        return MODELS[name]
    except KeyError:
        raise InputError(f"unknown model {name!r}; choose from {sorted(MODELS)}") from None


def parse_element(model, text):
    text = text.strip()
    names = {str(i): i for i in model.idempotents}
    if text in names:
        return names[text]
    if text == "a":
        return A
    if text.startswith("a^"):
        try:
            return Power(int(text[2:]))
        except ValueError:
            pass
    raise InputError(f"cannot parse element {text!r} of {model.name}")


def _multipliers(x, y):
    # S^1 multipliers that can matter: the identity (None), every idempotent
    # word, a^1 (all powers act alike on idempotents) and the one power that
    # can carry a^n to a^m
    out = [None, A]
    if x.is_power and y.is_power and x.n > y.n:
        out.append(Power(x.n - y.n))
    return out


def sym_leq(model, kind, x, y):
    """Decide ``x <=_kind y`` by finite case analysis over multiplier shapes."""
    if kind not in KINDS:
        raise InputError(f"kind must be one of {KINDS}")
    x, y = model.check(x), model.check(y)
    if kind == "H":
        return sym_leq(model, "L", x, y) and sym_leq(model, "R", x, y)
    for z in _multipliers(x, y) + list(model.idempotents):
        if z is None:
            prod = y
        elif kind == "L":
            prod = model.mul(z, y)
        else:
            prod = model.mul(y, z)
        if prod == x:
            return True
    return False


def sym_H(model, x, y):
    return sym_leq(model, "H", x, y) and sym_leq(model, "H", y, x)


def bounded_leq(model, kind, x, y, max_exponent=20):
    """Brute-force ``<=_kind`` over multipliers with exponent <= ``max_exponent``."""
    if kind == "H":
        return bounded_leq(model, "L", x, y, max_exponent) and bounded_leq(model, "R", x, y, max_exponent)
    if x == y:
        return True
    for z in model.shapes(max_exponent):
        if (model.mul(z, y) if kind == "L" else model.mul(y, z)) == x:
            return True
    return False


def sanity_check_leq(model, trials=200, seed=0, max_exponent=20):
    """Compare :func:`sym_leq` with :func:`bounded_leq` on random pairs.

    Exponents of x and y stay below ``max_exponent`` so the bounded scan is exact.
    Returns the list of disagreements.
    """
    rng = random.Random(seed)
    pool = model.shapes(max_exponent - 1)
    bad = []
    for _ in range(trials):
        x, y = rng.choice(pool), rng.choice(pool)
        for kind in KINDS:
            if sym_leq(model, kind, x, y) != bounded_leq(model, kind, x, y, max_exponent):
                bad.append((kind, str(x), str(y)))
    return bad


def commutes(model, x, y):
    return model.mul(x, y) == model.mul(y, x)


def in_commutant(model, x, of):
    return commutes(model, x, of)


def in_bicommutant(model, x, of):
    """``x`` commutes with all of ``{of}'``.

    Every power commutes with every element, and an element commutes with all
    powers iff it commutes with ``a``, so ``{of}'`` is represented by its
    idempotent members together with ``a`` and ``a^2``.
    """
    reps = [z for z in model.shapes(2) if commutes(model, z, of)]
    return all(commutes(model, x, z) for z in reps)


def natural_le(model, e, f):
    return model.mul(e, f) == e and model.mul(f, e) == e


def _sigma0(model, a):
    return [e for e in model.idempotents if sym_H(model, model.product(e, a, e), e)]


def sym_sigma(model, j, a=A):
    """Sigma_j(a) over the (finite) idempotent set of the model."""
    if j not in (0, 1, 2):
        raise InputError("j must be 0, 1 or 2")
    a = model.check(a)
    members = _sigma0(model, a)
    if j == 1:
        members = [e for e in members if in_commutant(model, e, a)]
    elif j == 2:
        members = [e for e in members if in_bicommutant(model, e, a)]
    members = tuple(sorted(members))
    maximal = tuple(e for e in members if not any(f != e and natural_le(model, e, f) for f in members))
    greatest = None
    if len(maximal) == 1 and all(natural_le(model, e, maximal[0]) for e in members):
        greatest = maximal[0]
    return SigmaSet(j, members, maximal, greatest)


def sym_inverse_along(model, a, d, max_exponent=20):
    """The unique ``b`` with ``bab = b`` and ``b H d``, or None.

    Candidates are the idempotent words and powers up to ``max_exponent``;
    a power is never a solution since ``a^k a a^k = a^(2k+1)``.
    """
    a, d = model.check(a), model.check(d)
    found = [
        b
        for b in model.shapes(max_exponent)
        if model.product(b, a, b) == b and sym_H(model, b, d)
    ]
    if len(found) > 1:
        raise AssertionError(f"inverse along {d} is not unique: {found}")
    if not found:
        return None
    b = found[0]
    assert model.product(b, a, d) == d == model.product(d, a, b)
    return b


def sym_tau(model, j, a=A, max_exponent=20):
    """Pairs ``(b, ab)`` for outer inverses of ``a`` in {a}' (j=1) or {a}'' (j=2)."""
    keep = in_commutant if j == 1 else in_bicommutant
    pairs = []
    for b in model.shapes(max_exponent):
        if model.product(b, a, b) == b and keep(model, b, a):
            pairs.append((b, model.mul(a, b)))
    return sorted(pairs, key=lambda p: p[1])


def associativity_failures(model, max_exponent=5):
    shapes = model.shapes(max_exponent)
    bad = []
    for x in shapes:
        for y in shapes:
            for z in shapes:
                if model.mul(model.mul(x, y), z) != model.mul(x, model.mul(y, z)):
                    bad.append((str(x), str(y), str(z)))
    return bad


def example_report(model):
    """Sigma sets, maximal inverses and tau pairs for the generator ``a``."""
    sigmas = {j: sym_sigma(model, j) for j in (0, 1, 2)}
    s_top = sigmas[2]

    def names(xs):
        return [str(x) for x in xs]

    along = {str(e): sym_inverse_along(model, A, e) for e in model.idempotents}
    return {
        "model": model.name,
        "element": "a",
        "idempotents": names(model.idempotents),
        "sigma": {
            str(j): {
                "members": names(s.members),
                "maximal": names(s.maximal),
                "greatest": None if s.greatest is None else str(s.greatest),
            }
            for j, s in sigmas.items()
        },
        "maximal": names(s_top.maximal),
        "greatest": None if s_top.greatest is None else str(s_top.greatest),
        "naturally_invertible": s_top.greatest is not None,
        "inverse_along": {k: None if v is None else str(v) for k, v in along.items()},
        "tau": {
            str(j): [[str(b), str(e)] for b, e in sym_tau(model, j)] for j in (1, 2)
        },
    }
