"""Command-line interface.

Exit status: 0 the property holds, 1 it fails, 2 usage or parse error,
3 a survey produced specimens for review, 70 internal error.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

from .errors import (
    CapExceeded,
    InvalidParameters,
    NilmapsError,
    NotApplicable,
    NotNilpotent,
    NotOriginPreserving,
    ParseError,
    ShapeMismatch,
    SingularMatrix,
)
from .jacobian import PolyMatrix3, char_coeffs, is_nilpotent, jacobian_of
from .maps import conjugate, format_map, linear_dependence, parse_map, residuals
from .normalform import (
    OriginViolation,
    Prop31Params,
    Theorem22Params,
    classify,
    gen_prop31,
    gen_thm22,
    gen_thm33,
    lemma21_branch_check,
    lemma21_extract,
    regenerate,
)
from .poly import QQ, MultiPoly, format_poly, parse_field, parse_poly, parse_unipoly
from .search import PRESETS, Sampled, SearchSpace, preset, run_survey, space_size

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REVIEW, EXIT_INTERNAL = 0, 1, 2, 3, 70


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# output


def _fmt(value, field=QQ):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, MultiPoly):
        return format_poly(value)
    if isinstance(value, PolyMatrix3):
        return ";".join(",".join(str(e) for e in row) for row in value.rows)
    return str(value)


def _emit(records, human=False, title=None, out=None):
    """Print (key, value) records as key=value lines, or as aligned text."""
    out = out or sys.stdout
    if not human:
        for k, v in records:
            print(f"{k}={_fmt(v)}", file=out)
        return
    if title:
        print(title, file=out)
    width = max((len(k) for k, _ in records), default=0)
    for k, v in records:
        print(f"  {k.replace('_', ' '):<{width}}  {_fmt(v)}", file=out)


def _read_map(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_map(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args):
    try:
        H = _read_map(args.mapfile)
        res = residuals(H)
    except ShapeMismatch as exc:
        raise UsageError(f"shape error: {exc}") from exc
    J = jacobian_of(H)
    nil = is_nilpotent(J)
    recs = [("field", H.field.name), ("shape", H.shape), ("nilpotent", nil)]
    recs += [(f"residual_{k}", r) for k, r in enumerate(res, 1)]
    recs += [(f"c{k}", c) for k, c in enumerate(char_coeffs(J), 1)]
    title = "JH is nilpotent" if nil else "JH is not nilpotent"
    _emit(recs, args.human, title)
    return EXIT_OK if nil else EXIT_FAIL


def cmd_depend(args):
    H = _read_map(args.mapfile)
    w = linear_dependence(H)
    recs = [("dependent", w is not None), ("witness", str(w) if w else None)]
    title = "u, v, h are linearly dependent" if w else "u, v, h are linearly independent"
    _emit(recs, args.human, title)
    return EXIT_OK if w else EXIT_FAIL


def _classification_records(res):
    recs = [("variant", res.variant)]
    if res.params is not None:
        recs += list(res.params.items())
    if res.conjugator is not None:
        recs.append(("conjugator", res.conjugator))
    if res.witness is not None:
        recs.append(("witness", str(res.witness)))
    if res.reason:
        recs.append(("reason", res.reason))
    recs += list(res.gating.items())
    return recs


def cmd_classify(args):
    try:
        H = _read_map(args.mapfile)
        res = classify(H)
    except ShapeMismatch as exc:
        print(f"shape mismatch: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NotNilpotent as exc:
        print(f"not nilpotent: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NotOriginPreserving as exc:
        print(f"not origin preserving: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if res.variant.startswith("NormalForm"):
        again = regenerate(res)
        if not again.same_map(H):
            raise AssertionError("regenerated map differs from the input")
    _emit(_classification_records(res), args.human, f"classified as {res.variant}")
    return EXIT_FAIL if res.variant == "NoMatch" else EXIT_OK


_FAMILY_KEYS = {
    "thm22": ("g", "a", "v1", "c0", "l1", "l2", "lt2"),
    "prop31": ("g", "a", "u1", "c0", "l1", "l2", "lt2"),
    "thm33": ("g", "a", "u1", "c0", "l1", "l2", "lt2", "shear"),
}


def _parse_assignments(lines, source):
    out = {}
    for n, raw in enumerate(lines, 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected key=value", line=n, text=source)
        k, v = (s.strip() for s in line.split("=", 1))
        out[k] = v
    return out


def _gen_params(args):
    values = {}
    if args.params:
        values.update(_parse_assignments(Path(args.params).read_text().splitlines(), args.params))
    values.update(_parse_assignments(args.set or [], "-p"))
    field = parse_field(values.pop("field", args.field))
    allowed = _FAMILY_KEYS[args.family]
    unknown = sorted(set(values) - set(allowed))
    if unknown:
        raise UsageError(f"unknown parameter(s) for {args.family}: {', '.join(unknown)}")
    if "g" not in values:
        raise InvalidParameters({"g": "missing"})
    kwargs = {k: v for k, v in values.items() if k != "shear"}
    kwargs["g"] = parse_unipoly(kwargs["g"], field)
    kwargs = {k: (field.convert(v) if k != "g" else v) for k, v in kwargs.items()}
    return field, kwargs, values.get("shear", "1")


def cmd_gen(args):
    field, kwargs, shear = _gen_params(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", OriginViolation)
        if args.family == "thm22":
            H = gen_thm22(Theorem22Params(**kwargs))
        elif args.family == "prop31":
            H = gen_prop31(Prop31Params(**kwargs))
        else:
            H, _ = gen_thm33(Prop31Params(**kwargs), field.convert(shear))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    sys.stdout.write(format_map(H))
    return EXIT_OK


def cmd_lemma21(args):
    field = parse_field(args.field)
    Q = parse_poly(args.poly, field)
    branch = lemma21_branch_check(Q)
    recs = []
    try:
        res = lemma21_extract(Q)
    except NotApplicable as exc:
        recs += [("applicable", False), ("reason", str(exc))]
        ok = False
    else:
        recs += [("applicable", True), ("r", res.r), ("leading", res.leading),
                 ("shift", str(res.shift)), ("outer", str(res.outer))]
        ok = True
    recs += [("qy_divides_qx", branch.qy_divides_qx),
             ("quotient", branch.quotient),
             ("constant_c", branch.c)]
    title = "Q is a polynomial in y + a(x)" if ok else "Q is not a polynomial in y + a(x)"
    _emit(recs, args.human, title)
    return EXIT_OK if ok else EXIT_FAIL


def _parse_matrix(text, field):
    rows = [r for r in text.replace(" ", "").split(";") if r]
    mat = [[field.convert(c) for c in r.split(",")] for r in rows]
    if len(mat) != 3 or any(len(r) != 3 for r in mat):
        raise UsageError("matrix must be three rows of three entries, e.g. '1,0,0;1,1,0;0,0,1'")
    return PolyMatrix3(mat, field)


def cmd_conjugate(args):
    H = _read_map(args.mapfile)
    T = _parse_matrix(args.matrix, H.field)
    try:
        out = conjugate(H, T)
    except SingularMatrix as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(format_map(out))
    return EXIT_OK


def _search_space(args):
    mode = "exhaustive"
    if args.sample is not None:
        if args.seed is None:
            raise UsageError("--seed is required with --sample")
        mode = Sampled(args.sample, args.seed)
    if args.preset:
        if any(x is not None for x in (args.shape, args.u, args.v, args.h)):
            raise UsageError("--preset cannot be combined with explicit supports")
        return preset(args.preset, mode)
    if args.shape is None:
        raise UsageError("give --preset or --shape with supports")
    required = {c: getattr(args, f"require_{c}") or "" for c in ("u", "v", "h")}
    coeffs = args.coeffs.split(",") if args.coeffs else None
    return SearchSpace.build(args.shape, args.field, u=args.u or "", v=args.v or "",
                             h=args.h or "", required=required, coefficients=coeffs,
                             mode=mode, cap=args.cap)


def cmd_search(args):
    try:
        space = _search_space(args)
    except CapExceeded as exc:
        raise UsageError(f"space too large: {exc.size} candidates exceed cap {exc.cap}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = run_survey(space, workers=args.workers)
    recs = [("shape", space.shape), ("field", space.field.name)]
    recs += list(space.describe().items())
    recs.append(("mode", "exhaustive" if space.mode == "exhaustive"
                 else f"sampled({space.mode.n},{space.mode.seed})"))
    if space.mode == "exhaustive":
        recs.append(("size", space_size(space)))
    recs += report.records()
    recs.append(("specimens", len(report.specimens)))
    if args.out and report.specimens:
        for p in report.write_specimens(args.out):
            recs.append(("specimen_file", str(p)))
    _emit(recs, args.human, "survey")
    if report.specimens:
        print(f"review: {len(report.specimens)} nilpotent independent maps matched no "
              "normal form", file=sys.stderr)
        return EXIT_REVIEW
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser():
    parser = argparse.ArgumentParser(prog="nilmaps",
                                     description="Polynomial maps of K^3 with nilpotent Jacobian.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_map(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("mapfile", help="map file ('-' for stdin)")
        p.add_argument("--human", action="store_true", help="human-readable output")
        return p

    with_map("check", "nilpotency, residuals and characteristic coefficients").set_defaults(func=cmd_check)
    with_map("depend", "linear dependence of u, v, h").set_defaults(func=cmd_depend)
    with_map("classify", "recognize a normal form").set_defaults(func=cmd_classify)
    p = with_map("conjugate", "print T^-1 H T")
    p.add_argument("--matrix", "-T", required=True, help="rows separated by ';', e.g. '1,0,0;1,1,0;0,0,1'")
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("gen", help="generate a normal-form map")
    p.add_argument("family", choices=sorted(_FAMILY_KEYS))
    p.add_argument("params", nargs="?", help="parameter file of key=value lines")
    p.add_argument("-p", "--set", action="append", metavar="KEY=VALUE", help="override a parameter")
    p.add_argument("--field", default="Q")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("lemma21", help="shift extraction Q = G(y + a(x))")
    p.add_argument("poly", help="polynomial in x and y")
    p.add_argument("--field", default="Q")
    p.add_argument("--human", action="store_true")
    p.set_defaults(func=cmd_lemma21)

    p = sub.add_parser("search", help="survey a finite space of maps")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--shape", choices=["A", "B", "C", "GENERAL"])
    p.add_argument("--field", default="GF(7)")
    for c in ("u", "v", "h"):
        p.add_argument(f"--{c}", help=f"comma-separated monomials of {c}")
        p.add_argument(f"--require-{c}", help=f"monomials of {c} with nonzero coefficient")
    p.add_argument("--coeffs", help="comma-separated coefficient set (default: the whole field)")
    p.add_argument("--cap", type=int, default=10**8)
    p.add_argument("--sample", type=int, metavar="N", help="sample N candidates instead of enumerating")
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="directory for specimen map files")
    p.add_argument("--human", action="store_true")
    p.set_defaults(func=cmd_search)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InvalidParameters as exc:
        for k, v in exc.problems.items():
            print(f"invalid parameter {k}: {v}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NilmapsError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
