"""Theorem-verification sweep over the test corpora.

A check takes one corpus item and returns ``(passes, failures)`` where each
failure is a JSON-ready payload in the standard input formats, so it can be
replayed through the CLI. Reports are deterministic given the configuration;
wall-clock time lives only in the text summary.
"""

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from geninv import kernels, operator, ring
from geninv.enumeration import (
    EnumerationConfig,
    block_corpus,
    enumerate_semigroups,
    matrix_corpus,
    matrix_pair_corpus,
    transformation_corpus,
    worker_count,
)
from geninv.errors import GenInvError, InputError, NotInSigma1, NotInvertibleAlong
from geninv.inverses import check_sigma_lemmas, drazin, sigma, tau
from geninv.rational import RationalMatrix
from geninv.semigroup import dump_semigroup, natural_le

SUITES = ("semigroup", "matrix", "operator")


def _fail(item, message, **extra):
    return dict(item.payload(), message=message, **extra)


# -- corpus items --------------------------------------------------------------------


@dataclass
class SemigroupItem:
    S: object
    source: str

    def payload(self):
        return {"semigroup": dump_semigroup(self.S), "source": self.source}


@dataclass
class MatrixItem:
    A: RationalMatrix
    source: str

    def payload(self):
        return {"matrix": self.A.to_json(), "source": self.source}


@dataclass
class PairItem:
    a: RationalMatrix
    d: RationalMatrix
    source: str

    def payload(self):
        return {"a": self.a.to_json(), "d": self.d.to_json(), "source": self.source}


@dataclass
class BlockItem:
    X: RationalMatrix
    Y: RationalMatrix
    source: str

    def payload(self):
        return {"x": self.X.to_json(), "y": self.Y.to_json(), "source": self.source}


# -- semigroup checks ----------------------------------------------------------------


def _sweep(S):
    return kernels.pair_sweep(S.table, S.leq_L, S.leq_R, S.sharp)


def check_equivalence(item):
    """Existence criteria for a^{||d} agree; definition, lemma and both formulas give one b."""
    S = item.S
    w = _sweep(S)
    cond = w["cond"]
    exists = cond == 31
    bad = ~((cond == 0) | exists)
    bad |= exists & ((w["def_count"] != 1) | (w["lemma_count"] != 1))
    bad |= ~exists & ((w["def_count"] != 0) | (w["lemma_count"] != 0))
    same = (w["b_def"] == w["b_lemma"]) & (w["b_def"] == w["formula_r"]) & (w["b_def"] == w["formula_l"])
    bad |= exists & ~same
    fails = [
        _fail(item, "inverse-along criteria disagree", a=int(a), d=int(d), conditions=int(cond[a, d]))
        for a, d in zip(*np.nonzero(bad))
    ]
    return S.order * S.order - len(fails), fails


def check_bicommutant(item):
    """a^{||d} lies in {a, d}''; and commutes with a and d whenever ad = da."""
    S = item.S
    w = _sweep(S)
    exists = w["cond"] == 31
    bad = exists & ((w["bicomm_bad"] != 0) | w["cor_bad"])
    fails = [_fail(item, "bicommutant property fails", a=int(a), d=int(d)) for a, d in zip(*np.nonzero(bad))]
    return int(exists.sum()) - len(fails), fails


def _per_element(item, fn):
    passes, fails = 0, []
    for a in item.S:
        try:
            msg = fn(item.S, a)
        except GenInvError as exc:
            msg = f"{type(exc).__name__}: {exc}"
        if msg:
            fails.append(_fail(item, msg, a=a))
        else:
            passes += 1
    return passes, fails


def _tau_ok(S, a):
    for j in (1, 2):
        pairs = tau(S, a, j)
        if sorted(e for _, e in pairs) != list(sigma(S, a, j).members):
            return f"tau image differs from Sigma_{j}"
    return None


def _drazin_natural_ok(S, a):
    # drazin() itself compares a^D with both natural inverses and M = aa^D
    _, x = drazin(S, a)
    M = S.mul(a, x)
    if not all(natural_le(S, f, M) for f in sigma(S, a, 1).members):
        return "aa^D does not dominate Sigma_1(a)"
    return None


def _lemmas_ok(S, a):
    rep = check_sigma_lemmas(S, a)
    if rep.ok:
        return None
    return "sigma lemmas fail: " + json.dumps(
        {"commuting": rep.commuting_lemma_failures, "band": rep.band_failures, "corner": rep.corner_failures},
        sort_keys=True,
        default=int,
    )


def _nesting_ok(S, a):
    s0, s1, s2 = (set(sigma(S, a, j).members) for j in range(3))
    if not (s2 <= s1 <= s0 <= set(S.idempotents)):
        return "Sigma_2 <= Sigma_1 <= Sigma_0 fails"
    return None


def check_tau(item):
    return _per_element(item, _tau_ok)


def check_drazin_natural(item):
    return _per_element(item, _drazin_natural_ok)


def check_lemmas(item):
    return _per_element(item, _lemmas_ok)


def check_nesting(item):
    return _per_element(item, _nesting_ok)


# -- matrix checks -------------------------------------------------------------------


def _single(item, fn):
    try:
        msg = fn(item)
    except GenInvError as exc:
        msg = f"{type(exc).__name__}: {exc}"
    return (0, [_fail(item, msg)]) if msg else (1, [])


def _unit_criterion(item):
    # invert_along compares u, v, rank(dad) = rank(d) and the ring forms of the
    # semigroup criteria, then certifies every formula and the perturbed associate
    try:
        rep = ring.invert_along(item.a, item.d)
    except NotInvertibleAlong:
        return None
    return None if rep.ok else f"failed certificates {[n for n, p in rep.certificates if not p]}"


def _quasipolarity(item):
    A = item.A
    ring.drazin_matrix(A)
    ring.spectral_idempotent(A)
    return None


def _core_decomposition(item):
    rep = ring.natural_core_decomposition_matrix(item.A)
    if not (rep.y ** item.A.rows).is_zero():
        return "y^n != 0"
    return None


def _sigma2(item):
    rep = ring.sigma2_greatest_check(item.A)
    return None if rep.certificates.ok else f"failed {rep.certificates.failed()}"


def _bicommutant_poly(item):
    return None if ring.bicommutant_matches_polynomials(item.A) else "{A}'' differs from polynomials in A"


def _nilpotent_sigma1(item):
    if item.A.is_nilpotent():
        ring.nilpotent_sigma1_certificate(item.A)
    return None


def _rosenblum(item):
    operator.rosenblum_block(item.X, item.Y)
    T = RationalMatrix.block_diag(item.X, item.Y)
    rep = ring.natural_core_decomposition_matrix(T)
    # any other valid split must coincide
    if ring.core_decomposition_is_unique(T, rep.x, rep.y) is not True:
        return "decomposition does not re-derive"
    if ring.core_decomposition_is_unique(T, T, RationalMatrix.zeros(T.rows)) is False:
        return "a second valid decomposition exists"
    return None


# -- operator checks -----------------------------------------------------------------


def _fitting(item):
    operator.fitting_decomposition(item.A)
    return None


def _inclusions(item):
    T = item.A
    M = T @ ring.drazin_matrix(T).inverse
    operator.check_inclusions(T, M)
    operator.check_inclusions(T, RationalMatrix.zeros(T.rows))
    nil = T.is_nilpotent()
    for piece in ring.spectral_pieces(T):
        P = piece.P
        try:
            operator.check_inclusions(T, P)
        except NotInSigma1:
            continue
        if nil and not P.is_zero():
            return "nonzero idempotent accepted below a nilpotent"
    return None


def _core_range(item):
    T = item.A
    Kv = operator.core_range(T)
    M = T @ ring.drazin_matrix(T).inverse
    if Kv != operator.Subspace.column_space(M):
        return "K_nu != R(M)"
    return None


def _svep(item):
    T = item.A
    K = operator.hyperrange(T)
    if operator.Subspace.kernel(T).intersect(K).dim:
        return "N(T) meets R(T^n)"
    return None


def _wrap(fn):
    def check(item):
        return _single(item, fn)

    check.__name__ = fn.__name__.lstrip("_")
    check.__doc__ = fn.__doc__
    return check


CHECKS = {
    "semigroup": {
        "equivalence": check_equivalence,
        "bicommutant": check_bicommutant,
        "tau-bijection": check_tau,
        "drazin-natural": check_drazin_natural,
        "sigma-lemmas": check_lemmas,
        "sigma-nesting": check_nesting,
    },
    "pair": {"unit-criterion": _wrap(_unit_criterion)},
    "matrix": {
        "quasipolarity": _wrap(_quasipolarity),
        "core-decomposition": _wrap(_core_decomposition),
        "sigma2-greatest": _wrap(_sigma2),
        "bicommutant-polynomials": _wrap(_bicommutant_poly),
        "nilpotent-sigma1": _wrap(_nilpotent_sigma1),
    },
    "block": {"rosenblum": _wrap(_rosenblum)},
    "operator": {
        "fitting": _wrap(_fitting),
        "inclusions": _wrap(_inclusions),
        "core-range": _wrap(_core_range),
        "svep": _wrap(_svep),
    },
}


def _kind(item):
    return {SemigroupItem: "semigroup", PairItem: "pair", MatrixItem: "matrix", BlockItem: "block"}[type(item)]


# -- corpora -------------------------------------------------------------------------


@dataclass(frozen=True)
class SuiteConfig:
    suite: str = "all"
    order: int = 3
    seed: int = 0
    trials: int = 20
    threads: int | None = None

    def __post_init__(self):
        if self.suite not in SUITES + ("all",):
            raise InputError(f"suite must be one of {SUITES + ('all',)}, got {self.suite!r}")
        if not 1 <= self.order <= 4:
            raise InputError(f"order must be in 1..4, got {self.order}")
        if self.trials < 0:
            raise InputError("trials must be non-negative")

    def to_dict(self):
        return {"suite": self.suite, "order": self.order, "seed": self.seed, "trials": self.trials}


def semigroup_corpus(order, seed, trials):
    items = []
    for n in range(1, order + 1):
        for i, S in enumerate(enumerate_semigroups(EnumerationConfig(n))):
            items.append(SemigroupItem(S, f"order-{n}#{i}"))
    for i, S in enumerate(transformation_corpus(trials, seed)):
        items.append(SemigroupItem(S, f"transformations-seed-{seed}#{i}"))
    return items


def build_corpus(config):
    """Corpus items for the requested suite, in a fixed order."""
    items = []
    want = SUITES if config.suite == "all" else (config.suite,)
    seed, trials = config.seed, config.trials
    if "semigroup" in want:
        items += semigroup_corpus(config.order, seed, trials)
    if "matrix" in want:
        items += [PairItem(a, d, f"pairs-seed-{seed}#{i}") for i, (a, d) in enumerate(matrix_pair_corpus(trials, seed))]
        items += [MatrixItem(A, f"matrices-seed-{seed}#{i}") for i, A in enumerate(matrix_corpus(trials, seed))]
        items += [BlockItem(X, Y, f"blocks-seed-{seed}#{i}") for i, (X, Y) in enumerate(block_corpus(trials, seed))]
    if "operator" in want:
        ops = matrix_corpus(trials, seed + 1)
        items += [_OperatorItem(A, f"operators-seed-{seed + 1}#{i}") for i, A in enumerate(ops)]
    return items


class _OperatorItem(MatrixItem):
    pass


def _item_kind(item):
    return "operator" if isinstance(item, _OperatorItem) else _kind(item)


# -- running -------------------------------------------------------------------------


@dataclass
class SuiteReport:
    config: dict
    counts: dict = field(default_factory=dict)  # check -> {"pass": n, "fail": m}
    counterexamples: list = field(default_factory=list)
    items: int = 0
    seconds: float = 0.0

    @property
    def failures(self):
        return sum(c["fail"] for c in self.counts.values())

    @property
    def ok(self):
        return self.failures == 0

    def to_dict(self):
        return {
            "config": self.config,
            "items": self.items,
            "checks": {k: self.counts[k] for k in sorted(self.counts)},
            "failures": self.failures,
            "counterexamples": self.counterexamples,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, default=int)

    def summary(self):
        lines = [f"{self.items} corpus items, {self.failures} failures, {self.seconds:.1f}s"]
        for name in sorted(self.counts):
            c = self.counts[name]
            lines.append(f"  {name:26s} pass {c['pass']:7d}  fail {c['fail']:5d}")
        return "\n".join(lines)


def _run_item(args):
    item, names = args
    kind = _item_kind(item)
    out = []
    for name, fn in CHECKS[kind].items():
        if names is not None and name not in names:
            continue
        out.append((name, *fn(item)))
    return out


def run_suite(corpus, checks=None, config=None, threads=None):
    """Run the named checks (all when None) over ``corpus``; results merged in corpus order."""
    start = time.perf_counter()
    if checks is not None:
        known = {n for group in CHECKS.values() for n in group}
        unknown = sorted(set(checks) - known)
        if unknown:
            raise InputError(f"unknown checks {unknown}")
        checks = frozenset(checks)
    tasks = [(item, checks) for item in corpus]
    workers = worker_count(threads)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_run_item, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        results = [_run_item(t) for t in tasks]
    report = SuiteReport(config=config.to_dict() if config else {})
    report.items = len(corpus)
    for per_item in results:
        for name, passes, fails in per_item:
            c = report.counts.setdefault(name, {"pass": 0, "fail": 0})
            c["pass"] += passes
            c["fail"] += len(fails)
            report.counterexamples += [dict(f, check=name) for f in fails]
    report.seconds = time.perf_counter() - start
    return report


def verify(config, checks=None):
    return run_suite(build_corpus(config), checks, config, threads=config.threads)
