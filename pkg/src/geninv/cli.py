"""Command-line entry point: ``geninv {sg,mat,op,verify} ...``.

A short human summary goes to standard output; ``--out FILE`` writes the full
JSON report (``--out -`` prints it instead). Exit codes: 0 success, 1 the
requested inverse does not exist, 2 input error, 3 invariant violation.
"""

import argparse
import json
import sys
from pathlib import Path

from geninv import __version__, kernels, operator, ring
from geninv.errors import GenInvError, InputError, InvariantViolation, NotInvertibleAlong, PreconditionFailed
from geninv.inverses import drazin, group_inverse, inverse_along, natural_inverse, sigma
from geninv.rational import RationalMatrix
from geninv.semigroup import (
    commutant,
    green_classes,
    idempotent_poset,
    load_semigroup,
)
from geninv.suite import SuiteConfig, verify
from geninv.symbolic import MODELS, example_report, get_model

EXIT_OK, EXIT_NONE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class Result:
    def __init__(self, report, summary, code=EXIT_OK):
        self.report = report
        self.summary = summary
        self.code = code


def _read_json(path, what):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path!r}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path!r} is not valid JSON: {exc}") from None


def load_matrix(path, field="--in"):
    try:
        if str(path).lower().endswith(".csv"):
            try:
                return RationalMatrix.from_csv(Path(path).read_text())
            except OSError as exc:
                raise InputError(f"cannot read matrix file {path!r}: {exc.strerror}") from None
        return RationalMatrix.from_json(_read_json(path, "matrix"))
    except InputError as exc:
        raise InputError(f"{field}: {exc}") from None


def _load_sg(path):
    try:
        return load_semigroup(_read_json(path, "semigroup"))
    except InputError as exc:
        raise InputError(f"--in: {exc}") from None


def _element(S, value, field):
    try:
        return S.check(value)
    except InputError as exc:
        raise InputError(f"{field}: {exc}") from None


def _fmt(M):
    return "[" + "; ".join(" ".join(str(x) for x in r) for r in M.tolist()) + "]"


# -- sg --------------------------------------------------------------------------------


def sg_analyze(args):
    S = _load_sg(args.in_)
    poset = idempotent_poset(S)
    classes = {k: [list(c) for c in green_classes(S, k)] for k in ("L", "R", "H")}
    report = {
        "order": S.order,
        "identity": S.identity,
        "idempotents": list(S.idempotents),
        "green_classes": classes,
        "idempotent_order": [[e, f] for e in poset.elements for f in poset.elements if e != f and poset.le(e, f)],
        "group_inverses": {str(a): (None if S.sharp[a] < 0 else int(S.sharp[a])) for a in S},
        "commutants": {str(a): list(commutant(S, [a])) for a in S},
    }
    summary = (
        f"order {S.order}, {len(S.idempotents)} idempotents, "
        f"{len(classes['L'])} L-classes, {len(classes['R'])} R-classes, {len(classes['H'])} H-classes"
    )
    return Result(report, summary)


def sg_invert_along(args):
    S = _load_sg(args.in_)
    a, d = _element(S, args.a, "--a"), _element(S, args.d, "--d")
    rep = inverse_along(S, a, d)
    report = dict(rep.to_dict(), a=a, d=d)
    if not rep.exists:
        return Result(report, f"{a} is not invertible along {d}", EXIT_NONE)
    return Result(report, f"inverse of {a} along {d} is {rep.witness}")


def sg_sigma(args):
    S = _load_sg(args.in_)
    a = _element(S, args.a, "--a")
    s = sigma(S, a, args.j)
    report = dict(s.to_dict(), a=a)
    return Result(report, f"Sigma_{args.j}({a}) = {list(s.members)}, maximal {list(s.maximal)}, greatest {s.greatest}")


def sg_natural(args):
    S = _load_sg(args.in_)
    a = _element(S, args.a, "--a")
    nat = natural_inverse(S, a, args.j)
    report = dict(nat.to_dict(), a=a)
    if not nat.exists:
        return Result(report, f"{a} has no {args.j}-natural inverse (maximal: {list(nat.sigma.maximal)})", EXIT_NONE)
    dec = nat.decomposition
    return Result(report, f"{args.j}-natural inverse of {a} is {dec.inverse} (M = {dec.M}, core {dec.core})")


def sg_drazin(args):
    S = _load_sg(args.in_)
    a = _element(S, args.a, "--a")
    index, x = drazin(S, a)
    report = {
        "a": a,
        "index": index,
        "inverse": x,
        "group_inverse": group_inverse(S, a).witness,
        "index_convention": "elements of a subgroup report index 1",
    }
    return Result(report, f"Drazin index {index}, inverse {x}")


def sg_example(args):
    report = example_report(get_model(args.model))
    s = report["sigma"]
    summary = (
        f"{report['model']}: Sigma_0 = {s['0']['members']}, Sigma_1 = {s['1']['members']}, "
        f"Sigma_2 = {s['2']['members']}; maximal {report['maximal']}, greatest {report['greatest']}"
    )
    return Result(report, summary)


# -- mat -------------------------------------------------------------------------------


def mat_invert_along(args):
    a, d = load_matrix(args.a, "--a"), load_matrix(args.d, "--d")
    try:
        rep = ring.invert_along(a, d)
    except NotInvertibleAlong as exc:
        return Result(exc.report.to_dict(), "a is not invertible along d (u = da + I - dd^- is singular)", EXIT_NONE)
    return Result(rep.to_dict(), f"inverse along d: {_fmt(rep.witness)}")


def mat_drazin(args):
    A = load_matrix(args.in_)
    rep = ring.drazin_matrix(A)
    out = rep.to_dict()
    out["spectral_idempotent"] = ring.spectral_idempotent(A).to_json()
    return Result(out, f"index {rep.index}, A^D = {_fmt(rep.inverse)}")


def mat_core_decomp(args):
    A = load_matrix(args.in_)
    rep = ring.natural_core_decomposition_matrix(A)
    return Result(rep.to_dict(), f"x = {_fmt(rep.x)}, y = {_fmt(rep.y)}, M = {_fmt(rep.M)}")


def mat_sigma2(args):
    A = load_matrix(args.in_)
    rep = ring.sigma2_greatest_check(A)
    if not rep.certificates.ok:
        raise InvariantViolation(f"Sigma_2 check failed {rep.certificates.failed()}", rep.to_dict())
    return Result(rep.to_dict(), f"{len(rep.members)} members of Sigma_2 generated, greatest {_fmt(rep.M)}")


# -- op --------------------------------------------------------------------------------


def op_local_spectral(args):
    T = load_matrix(args.in_)
    report = operator.local_spectral_report(T)
    summary = (
        f"dim {T.rows}: hyperrange {report['hyperrange']['dim']}, hyperkernel {report['hyperkernel']['dim']}, "
        f"core range {report['core_range']['dim']}"
    )
    return Result(report, summary)


def op_rosenblum(args):
    X, Y = load_matrix(args.x, "--x"), load_matrix(args.y, "--y")
    rep = operator.rosenblum_block(X, Y)
    return Result(rep.to_dict(), f"x = {_fmt(rep.x)}, y = {_fmt(rep.y)}, M = {_fmt(rep.M)}")


# -- verify ----------------------------------------------------------------------------


def run_verify(args):
    config = SuiteConfig(suite=args.suite, order=args.order, seed=args.seed, trials=args.trials, threads=args.threads)
    rep = verify(config)
    summary = f"backend {kernels.BACKEND}\n" + rep.summary()
    return Result(rep.to_dict(), summary, EXIT_OK if rep.ok else EXIT_INVARIANT)


# -- parser ----------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="geninv", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"geninv {__version__}")
    top = p.add_subparsers(dest="group", required=True)

    def leaf(sub, name, fn, help_):
        q = sub.add_parser(name, help=help_)
        q.set_defaults(fn=fn)
        q.add_argument("--out", help="write the JSON report here ('-' for stdout)")
        return q

    sg = top.add_parser("sg", help="finite semigroups").add_subparsers(dest="cmd", required=True)
    q = leaf(sg, "analyze", sg_analyze, "Green classes, idempotent order, commutants")
    q.add_argument("--in", dest="in_", required=True)
    q = leaf(sg, "invert-along", sg_invert_along, "inverse of a along d")
    q.add_argument("--in", dest="in_", required=True)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--d", type=int, required=True)
    q = leaf(sg, "sigma", sg_sigma, "Sigma_j(a)")
    q.add_argument("--in", dest="in_", required=True)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--j", type=int, choices=(0, 1, 2), default=2)
    q = leaf(sg, "natural", sg_natural, "j-natural inverse")
    q.add_argument("--in", dest="in_", required=True)
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--j", type=int, choices=(0, 1, 2), default=2)
    q = leaf(sg, "drazin", sg_drazin, "Drazin index and inverse")
    q.add_argument("--in", dest="in_", required=True)
    q.add_argument("--a", type=int, required=True)
    q = leaf(sg, "example", sg_example, "symbolic example models")
    q.add_argument("--model", required=True, choices=sorted(MODELS))

    mat = top.add_parser("mat", help="rational matrices").add_subparsers(dest="cmd", required=True)
    q = leaf(mat, "invert-along", mat_invert_along, "inverse of a along d via the unit criterion")
    q.add_argument("--a", required=True)
    q.add_argument("--d", required=True)
    for name, fn, h in (
        ("drazin", mat_drazin, "Drazin index, inverse and spectral idempotent"),
        ("core-decomp", mat_core_decomp, "natural core decomposition"),
        ("sigma2", mat_sigma2, "greatest element of Sigma_2 against generated candidates"),
    ):
        leaf(mat, name, fn, h).add_argument("--in", dest="in_", required=True)

    op = top.add_parser("op", help="finite-dimensional operators").add_subparsers(dest="cmd", required=True)
    leaf(op, "local-spectral", op_local_spectral, "hyperrange, hyperkernel, H0, K, Fitting, core range").add_argument(
        "--in", dest="in_", required=True
    )
    q = leaf(op, "rosenblum", op_rosenblum, "core decomposition of diag(X, Y)")
    q.add_argument("--x", required=True)
    q.add_argument("--y", required=True)

    q = top.add_parser("verify", help="theorem-verification sweep")
    q.set_defaults(fn=run_verify)
    q.add_argument("--suite", choices=("semigroup", "matrix", "operator", "all"), default="all")
    q.add_argument("--order", type=int, default=3)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--trials", type=int, default=20)
    q.add_argument("--threads", type=int, default=None, help="worker processes (default: GENINV_THREADS or 1)")
    q.add_argument("--out", help="write the JSON report here ('-' for stdout)")
    return p


def _emit(report, out):
    text = json.dumps(report, sort_keys=True, indent=2, default=int) + "\n"
    if out == "-":
        sys.stdout.write(text)
    elif out:
        Path(out).write_text(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        res = args.fn(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        _emit({"error": "invariant violation", "message": str(exc), "counterexample": exc.payload}, args.out or "-")
        return EXIT_INVARIANT
    except (InputError, PreconditionFailed) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GenInvError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.out != "-":
        print(res.summary)
    _emit(res.report, args.out)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
