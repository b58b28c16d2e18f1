"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 computation error,
4 negative answer from a check (refuted Levi-flatness, failed leaf family,
non-degenerate point).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import List, Optional

from . import __version__
from .constructions import EXAMPLE_NAMES, RationalMap, pullback, worked_example
from .errors import LeviflatError, ParseError, SchemaError
from .geometry import (
    ProjectiveContext,
    bihomogenize,
    degenerate_locus_generators,
    dehomogenize,
    segre_report,
)
from .hermitian import (
    coefficient_matrix,
    hermitian_report,
    holomorphic_decomposition,
    rank_signature,
)
from .levi import LeviConfig, Verdict, certificate_summary, certify_leviflat, check_leaf_family, parse_family
from .polyio import SCHEMA_VERSION, format_coefficient, format_poly, from_json, parse, parse_point, to_json

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_COMPUTE, EXIT_NEGATIVE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_poly(args):
    if args.poly is not None:
        text = args.poly
    elif args.input is not None:
        with open(args.input, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    stripped = text.strip()
    if not stripped:
        raise UsageError("no polynomial given (use stdin, --input or --poly)")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON input: {exc}") from None
        if isinstance(doc, dict) and "terms" not in doc and "polynomial" in doc:
            doc = doc["polynomial"]
        p = from_json(doc)
        if args.vars is not None and args.vars != p.num_vars:
            raise SchemaError(f"document has {p.num_vars} variables, --vars says {args.vars}")
        return p
    return parse(stripped, args.vars)


def _floats(text: str, n: int, what: str) -> List[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"{what} must be {n} comma-separated numbers") from None
    if len(values) != n:
        raise UsageError(f"{what} must be {n} comma-separated numbers")
    return values


# -- commands: each returns (exit code, outputs dict, text lines, result polynomial) ----


def cmd_parse(args):
    p = _read_poly(args)
    return EXIT_OK, {"text": format_poly(p)}, [format_poly(p)], p


def cmd_bihomogenize(args):
    rho = _read_poly(args)
    ctx = ProjectiveContext(rho.num_vars, args.chart)
    P = bihomogenize(rho, ctx, allow_imaginary=args.allow_imaginary)
    return EXIT_OK, {"text": format_poly(P)}, [format_poly(P)], P


def cmd_dehomogenize(args):
    P = _read_poly(args)
    rho = dehomogenize(P, args.chart)
    return EXIT_OK, {"text": format_poly(rho)}, [format_poly(rho)], rho


def cmd_matrix(args):
    P = _read_poly(args)
    form = coefficient_matrix(P, args.normalize_imaginary, args.full_basis)
    lines = ["basis: " + ", ".join(_mono(m) for m in form.basis)]
    if form.normalized:
        lines.append("note: imaginary-valued input multiplied by -i")
    width = max((len(format_coefficient(c)) for row in form.matrix for c in row), default=1)
    for row in form.matrix:
        lines.append("  ".join(format_coefficient(c).rjust(width) for c in row))
    return EXIT_OK, form.to_json(), lines, None


def cmd_rank(args):
    P = _read_poly(args)
    form = coefficient_matrix(P, args.normalize_imaginary, args.full_basis)
    inertia = rank_signature(form)
    out = {"rank": inertia.rank, "positives": inertia.positives,
           "negatives": inertia.negatives, "basis_size": form.size,
           "normalized": form.normalized}
    lines = [f"rank {inertia.rank}", f"signature ({inertia.positives},{inertia.negatives})"]
    return EXIT_OK, out, lines, None


def cmd_decompose(args):
    P = _read_poly(args)
    report = hermitian_report(P, args.normalize_imaginary, args.full_basis)
    D = holomorphic_decomposition(coefficient_matrix(P, args.normalize_imaginary, args.full_basis))
    lines = [f"rank {D.rank}", f"signature ({len(D.plus)},{len(D.minus)})"]
    for sign, polys, weights in (("+", D.plus, D.plus_weights), ("-", D.minus, D.minus_weights)):
        for p, w in zip(polys, weights):
            factor = "" if w == 1 else f"{w} * "
            lines.append(f"{sign} {factor}|{format_poly(p)}|^2")
    return EXIT_OK, report, lines, None


def cmd_segre(args):
    P = _read_poly(args)
    point = parse_point(args.point)
    report = segre_report(P, point)
    lines = [report["segre_polynomial"]]
    if report["degenerate"]:
        lines.append("degenerate: Segre variety is the whole space")
    return EXIT_OK, report, lines, None


def cmd_degen(args):
    P = _read_poly(args)
    if args.point is not None:
        point = parse_point(args.point)
        report = segre_report(P, point)
        ok = report["degenerate"]
        lines = [f"algebraic degenerate singularity: {'yes' if ok else 'no'}"]
        return (EXIT_OK if ok else EXIT_NEGATIVE), {"point": report["point"], "degenerate": ok}, lines, None
    rep = degenerate_locus_generators(P, reduce=args.reduce)
    lines = [f"rank {rep.rank}, projective dimension {rep.n}", "generators (in w):"]
    lines += ["  " + format_poly(g).replace("z", "w") for g in rep.generators]
    if rep.dimension_bound is not None:
        lines.append(f"degenerate locus has projective dimension >= {rep.dimension_bound}"
                     f" (affine cone >= {rep.dimension_bound + 1})")
    return EXIT_OK, rep.to_json(), lines, None


def cmd_leviflat(args):
    rho = _read_poly(args)
    kw = {"seed": args.seed, "samples": args.samples}
    if args.box:
        kw["box"] = tuple(_floats(args.box, 2, "--box"))
    if args.thresholds:
        kw["surface_tol"], kw["gradient_tol"], kw["refute_tol"] = _floats(
            args.thresholds, 3, "--thresholds")
    cert = certify_leviflat(rho, LeviConfig(**kw))
    code = EXIT_NEGATIVE if cert.verdict is Verdict.REFUTED else EXIT_OK
    return code, cert.to_json(), certificate_summary(cert).splitlines(), None


def cmd_pullback(args):
    k = args.vars
    if k is None:
        k = max(parse(args.f).num_vars, parse(args.g).num_vars)
    f, g = parse(args.f, k), parse(args.g, k)
    curve = parse(args.curve, 1)
    Q = pullback(RationalMap(f, g), curve)
    return EXIT_OK, {"text": format_poly(Q)}, [format_poly(Q)], Q


def cmd_example(args):
    if args.list or args.name is None:
        return EXIT_OK, {"names": list(EXAMPLE_NAMES)}, list(EXAMPLE_NAMES), None
    rec = worked_example(args.name)
    poly = rec.affine if args.affine and rec.affine is not None else rec.polynomial
    return EXIT_OK, rec.to_json(), [format_poly(poly)], poly


def cmd_leaf_check(args):
    P = _read_poly(args)
    family = parse_family(args.family, P.num_vars, args.param)
    ok = check_leaf_family(P, family)
    lines = [f"leaf family contained in the hypersurface: {'yes' if ok else 'no'}"]
    return (EXIT_OK if ok else EXIT_NEGATIVE), {"contained": ok}, lines, None


def _mono(m) -> str:
    parts = [f"z{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m, 1) if e]
    return "*".join(parts) or "1"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--vars", type=int, metavar="K", help="number of variables z1..zK")
    common.add_argument("--json", action="store_true", help="emit a JSON run report")
    common.add_argument("--input", metavar="FILE", help="read the polynomial from FILE")
    common.add_argument("--poly", metavar="TEXT", help="polynomial given inline")
    common.add_argument("--timing", action="store_true", help="include wall time in JSON reports")

    parser = _Parser(prog="leviflat", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version",
                        version=f"leviflat {__version__} (schema_version {SCHEMA_VERSION})")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, "canonicalize a polynomial")
    p = add("bihomogenize", cmd_bihomogenize, "bihomogenize an affine polynomial")
    p.add_argument("--chart", type=int, help="position of the homogenizing variable (default last)")
    p.add_argument("--allow-imaginary", action="store_true")
    p = add("dehomogenize", cmd_dehomogenize, "set a homogeneous coordinate to 1")
    p.add_argument("--chart", type=int, help="coordinate to set to 1 (default last)")
    for name, func, help_ in (("matrix", cmd_matrix, "Hermitian coefficient matrix"),
                              ("rank", cmd_rank, "rank and signature"),
                              ("decompose", cmd_decompose, "signed sum of squared moduli")):
        p = add(name, func, help_)
        p.add_argument("--normalize-imaginary", action="store_true")
        p.add_argument("--full-basis", action="store_true")
    p = add("segre", cmd_segre, "Segre polynomial at a point")
    p.add_argument("--point", required=True, help="comma-separated exact coordinates")
    p = add("degen", cmd_degen, "degenerate singularities")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--point", help="test one point")
    g.add_argument("--locus", action="store_true", help="generators of the degenerate locus")
    p.add_argument("--reduce", action="store_true", help="row-reduce the generators")
    p = add("leviflat", cmd_leviflat, "certify or refute Levi-flatness")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--box", help="LO,HI bounds for every real coordinate")
    p.add_argument("--thresholds", help="RESIDUAL,GRADIENT,REFUTE")
    p = add("pullback", cmd_pullback, "pull a real curve back by f/g")
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--curve", required=True, help="real curve polynomial in z1 and ~z1")
    p = add("example", cmd_example, "print a worked example")
    p.add_argument("name", nargs="?", choices=EXAMPLE_NAMES)
    p.add_argument("--list", action="store_true")
    p.add_argument("--affine", action="store_true", help="print the affine form when available")
    p = add("leaf-check", cmd_leaf_check, "check a real one-parameter family of leaves")
    p.add_argument("--family", required=True, help="e.g. 'z1 = -(t*z2 + t^2*z3)'")
    p.add_argument("--param", default="t")
    return parser


def _join_negative_values(argv: List[str]) -> List[str]:
    # argparse mistakes "--box -1,1" for two options
    out: List[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--box", "--thresholds"):
            value = next(it, None)
            out.append(a if value is None else f"{a}={value}")
        else:
            out.append(a)
    return out


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    start = time.perf_counter()
    try:
        code, outputs, lines, poly = args.func(args)
    except UsageError as exc:
        print(f"leviflat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ParseError, SchemaError) as exc:
        print(f"leviflat: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"leviflat: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LeviflatError, ValueError, ZeroDivisionError, IndexError, KeyError) as exc:
        print(f"leviflat: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if args.json:
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "inputs": {k: v for k, v in sorted(vars(args).items())
                       if k not in ("func", "json", "timing", "command") and v is not None},
            "outputs": outputs,
            "seed": getattr(args, "seed", None),
            "exit_code": code,
        }
        if poly is not None:
            report["polynomial"] = to_json(poly)
        if args.timing:
            report["timing"] = time.perf_counter() - start
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
