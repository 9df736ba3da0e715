"""Command line front end.

Exit codes: 0 success, 1 verification failure (a JSON counterexample is
printed), 2 parse or usage error, 3 domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import verify as V
from .grothendieck import GrothParams, groth_determinant, groth_direct
from .parser import ParseError, parse_poly
from .pushforward import PushforwardSpec, cohom_table, kt_table, pushforward_cohom, pushforward_K, x_names
from .residue import BinomFactor, FactoredRational, residue_sum
from .ring import LaurentPoly, VarTable
from .symfun import Partition, schur

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3

SUITE_NAMES = list(V.SUITES)

# default ranges for `verify` without --full; --full uses the suites' own defaults
QUICK = {
    "pushforward-oracle": {"rs": range(1, 4), "max_degree": 2, "points": 4},
    "groth-det": {"rs": range(1, 3), "lam_max": 2},
    "specializations": {"rs": range(1, 3)},
    "theorem-det": {"families": 12},
}


class DomainError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def _positive(name, value):
    if value is None:
        raise DomainError(f"--{name} is required")
    if value < 1:
        raise DomainError(f"--{name} must be positive, got {value}")
    return value


def _partition(text: str | None, r: int | None) -> tuple[Partition, int]:
    if text is None:
        raise DomainError("--lambda is required")
    lam = Partition.parse(text)
    r = len(lam) if r is None else r
    if r < 1:
        raise DomainError("r must be positive")
    return lam.padded(r), r


def _emit(poly: LaurentPoly, fmt: str) -> str:
    return poly.dumps() if fmt == "json" else str(poly)


# ---------------------------------------------------------------------------
# commands


def cmd_residue(args) -> str:
    r = _positive("r", args.r)
    xs = x_names(r)
    table = VarTable.build(torus=xs, residue=["u"])
    g = parse_poly(args.g or "1", table)
    u = table.var("u")
    den = tuple(BinomFactor(u * x.inverse_monomial()) for x in table.vars(xs))
    res = residue_sum(FactoredRational(g * u.inverse_monomial(), den), "u")
    return _emit(res.numerator, args.format)


def cmd_pushforward(args) -> str:
    r = _positive("r", args.r)
    d = 0 if args.d is None else args.d
    if not 0 <= d <= r:
        raise DomainError(f"need 0 <= d <= r, got d={d}, r={r}")
    table = kt_table(r, d)
    g = parse_poly(args.g or "1", table)
    bad = g.variables() & set(f"u{i}" for i in range(1, d + 1))
    if bad:
        raise DomainError(f"g must not involve residue variables {sorted(bad)}")
    return _emit(pushforward_K(PushforwardSpec.from_poly(r, d, g)), args.format)


def cmd_pushforward_cohom(args) -> str:
    r = _positive("r", args.r)
    d = 0 if args.d is None else args.d
    if not 0 <= d <= r:
        raise DomainError(f"need 0 <= d <= r, got d={d}, r={r}")
    f = parse_poly(args.g or "1", cohom_table(r, d))
    return _emit(pushforward_cohom(f, r, d), args.format)


def cmd_groth(args) -> str:
    lam, r = _partition(args.lam, args.r)
    params = GrothParams.make(lam, r, b=args.b, alpha=args.alpha, beta=args.beta, order=args.alpha_order)
    fn = groth_determinant if args.method == "determinant" else groth_direct
    return _emit(fn(params), args.format)


def cmd_schur(args) -> str:
    lam, r = _partition(args.lam, args.r)
    table = VarTable.build(torus=x_names(r))
    return _emit(schur(lam, table.vars(x_names(r)), table), args.format)


def _suite_kwargs(name: str, args) -> dict:
    kw = {} if args.full else dict(QUICK.get(name, {}))
    rs = [args.r] if args.r is not None else None
    ds = [args.d] if args.d is not None else None
    lams = [Partition.parse(args.lam)] if args.lam is not None else None
    if rs is None and lams is not None and name in ("groth-det", "specializations"):
        rs = [len(lams[0])]
    if rs is not None:
        kw["rs"] = rs
    if name in ("pushforward-oracle", "recursion", "order") and ds is not None:
        kw["ds"] = ds
    if name in ("pushforward-oracle", "boundary", "theorem-det", "groth-det", "order"):
        kw["seed"] = args.seed
    if name in ("groth-det", "specializations") and lams is not None:
        kw["lams"] = lams
    if name == "groth-det":
        kw["order"] = args.alpha_order
        kw["b"] = args.b
        kw["beta"] = args.beta
        if args.alpha_given:
            kw["alpha_modes"] = (args.alpha,)
    return kw


def cmd_verify(args) -> tuple[str, int]:
    names = SUITE_NAMES if args.suite == "all" else [args.suite]
    report = V.Report()
    for name in names:
        report.counts.setdefault(name, 0)
        V.run_checks(V.SUITES[name](**_suite_kwargs(name, args)), report)
        if not report.ok:
            dump = {"ok": False, "counterexample": report.failure.dump()}
            return json.dumps(dump, indent=2, sort_keys=True), EXIT_VERIFY
    if args.format == "json":
        return json.dumps({"ok": True, "checks": report.counts}, sort_keys=True), EXIT_OK
    lines = [f"{name}: {report.counts[name]} checks passed" for name in names]
    return "\n".join(lines), EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="flagres", description="Iterated-residue push-forwards and Grothendieck determinants.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *flags):
        if "r" in flags:
            sp.add_argument("--r", type=int, help="rank of E / number of x variables")
        if "d" in flags:
            sp.add_argument("--d", type=int, help="rank of the sub-bundle V")
        if "g" in flags:
            sp.add_argument("--g", help="polynomial expression")
        if "lambda" in flags:
            sp.add_argument("--lambda", dest="lam", help="partition, e.g. 2,1,0")
        if "params" in flags:
            sp.add_argument("--b", default="sym", help="'sym' or comma-separated rationals")
            sp.add_argument("--alpha", default=None, help="'0' or 'sym'")
            sp.add_argument("--beta", default="sym", help="'sym' or comma-separated rationals (beta_0 first)")
            sp.add_argument("--alpha-order", type=int, default=4, help="truncation order in alpha")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--format", choices=("text", "json"), default="text")

    sp = sub.add_parser("residue", help="Res_{u=0,inf} g(u) / prod(1 - u/x) du/u")
    common(sp, "r", "g")
    sp.set_defaults(run=cmd_residue)

    sp = sub.add_parser("pushforward", help="K-theoretic push-forward of g(Y1..Yd) from Fl(E; d)")
    common(sp, "r", "d", "g")
    sp.set_defaults(run=cmd_pushforward)

    sp = sub.add_parser("pushforward-cohom", help="cohomological push-forward of f(z1..zd)")
    common(sp, "r", "d", "g")
    sp.set_defaults(run=cmd_pushforward_cohom)

    sp = sub.add_parser("groth", help="refined shifted factorial Grothendieck polynomial")
    common(sp, "r", "lambda", "params")
    sp.add_argument("--method", choices=("direct", "determinant"), default="direct")
    sp.set_defaults(run=cmd_groth)

    sp = sub.add_parser("schur", help="Schur polynomial")
    common(sp, "r", "lambda")
    sp.set_defaults(run=cmd_schur)

    sp = sub.add_parser("verify", help="run identity suites")
    sp.add_argument("suite", choices=SUITE_NAMES + ["all"])
    common(sp, "r", "d", "lambda", "params")
    sp.add_argument("--full", action="store_true", help="use the full acceptance ranges")
    sp.set_defaults(run=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if hasattr(args, "alpha"):
        args.alpha_given = args.alpha is not None
        if args.alpha is None:
            args.alpha = "0"
    try:
        out = args.run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ZeroDivisionError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    code = EXIT_OK
    if isinstance(out, tuple):
        out, code = out
    print(out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
