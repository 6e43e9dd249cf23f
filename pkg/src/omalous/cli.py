"""Command-line interface: ``omalous <tangent|check|search|rr|slope|catalog>``.

Exit codes: 0 success (or omalous), 1 well-formed but not omalous,
2 usage or validation error, 3 I/O failure. All output is JSON on stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CatalogRanges, catalog_json, json_number
from .chern import canonical_class, tangent_data
from .chow import BlowupPlane, CICY3Fold, Hypersurface3Fold, ProductPP, parse_class
from .errors import OmalousError
from .monad import cohomology_data, monad_from_json
from .polarization import default_polarization, degree
from .riemann_roch import (
    VANISHING_NOTE,
    BlowupSheafData,
    TwistSpec,
    euler_char,
    monad_dimensions,
    todd_euler_char,
)
from .search import hypersurface_solutions, is_omalous, product_solutions

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(payload) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _add_variety_flags(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--hypersurface", type=int, metavar="D", help="threefold of degree D in P4")
    g.add_argument("--cicy", type=int, nargs="+", metavar="N D", help="ambient N then degrees")
    g.add_argument("--blowup", type=int, metavar="N", help="P2 blown up at N points")
    g.add_argument("--product", type=int, nargs=2, metavar=("N", "M"), help="P^N x P^M")


def _variety(args):
    if args.hypersurface is not None:
        return Hypersurface3Fold(args.hypersurface)
    if args.cicy is not None:
        if len(args.cicy) < 2:
            raise OmalousError("--cicy needs the ambient dimension followed by the degrees")
        return CICY3Fold(args.cicy[0], tuple(args.cicy[1:]))
    if args.blowup is not None:
        return BlowupPlane(args.blowup)
    if args.product is not None:
        return ProductPP(*args.product)
    return None


def _read_monad(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OmalousError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise OmalousError(f"{path} is not valid JSON: {exc}") from None
    return monad_from_json(data)


def cmd_tangent(args) -> int:
    X = _variety(args)
    T = tangent_data(X)
    _emit(
        {
            "schema": "1",
            "variety": X.to_json(),
            "rank": T.rank,
            "c1": str(T.c1),
            "c2": str(T.c2),
            "total_chern": str(T.total_chern),
            "canonical": str(canonical_class(X)),
        }
    )
    return EXIT_OK


def cmd_check(args) -> int:
    monad = _read_monad(args.monad)
    report = is_omalous(cohomology_data(monad), monad.variety)
    _emit(report.to_json())
    return EXIT_OK if report.omalous else EXIT_NEGATIVE


def cmd_search(args) -> int:
    if args.family == "hypersurface":
        rows = [
            {"d": d, "l": l, "c": c, **tag.to_json()}
            for d, l, c, tag in hypersurface_solutions(args.d_max)
        ]
    else:
        rows = [
            {"a": a, "b": b, "c": c, **tag.to_json()}
            for a, b, c, tag in product_solutions(args.n, args.m, args.bound)
        ]
    _emit(rows)
    return EXIT_OK


def cmd_rr(args) -> int:
    if args.r is not None:
        _emit({"schema": "1", **monad_dimensions(args.n, args.r).to_json()})
        return EXIT_OK
    r, a, k = args.sheaf
    a_vec = tuple(args.a_vec) if args.a_vec is not None else (0,) * args.n
    q_vec = tuple(args.q_vec) if args.q_vec is not None else (0,) * args.n
    sheaf = BlowupSheafData(r, a, a_vec, k)
    twist = TwistSpec(args.twist, q_vec)
    if sheaf.n != args.n or len(q_vec) != args.n:
        raise OmalousError(f"--a-vec and --q-vec must have length n = {args.n}")
    chi = euler_char(sheaf, twist)
    payload = {"schema": "1", "n": args.n, "chi": chi, "todd_chi": json_number(todd_euler_char(sheaf, twist))}
    if chi <= 0:
        payload["h1"] = -chi
        payload["note"] = VANISHING_NOTE
    _emit(payload)
    return EXIT_OK


def cmd_slope(args) -> int:
    if args.monad:
        monad = _read_monad(args.monad)
        X, bundle = monad.variety, cohomology_data(monad)
    else:
        X = _variety(args)
        if X is None:
            raise OmalousError("give a variety flag (for the tangent bundle) or --monad")
        bundle = tangent_data(X)
    pol = parse_class(X, args.pol) if args.pol else default_polarization(X).divisor
    deg = degree(bundle.c1, X, pol)
    if bundle.rank == 0:
        raise OmalousError("slope is undefined for rank 0")
    _emit(
        {
            "schema": "1",
            "variety": X.to_json(),
            "polarization": str(pol),
            "rank": bundle.rank,
            "degree": json_number(deg),
            "slope": json_number(deg / bundle.rank),
        }
    )
    return EXIT_OK


def cmd_catalog(args) -> int:
    ranges = CatalogRanges.from_env()
    overrides = ",".join(
        f"{key}={value}"
        for key, value in (
            ("d_max", args.d_max),
            ("blowup_n", args.blowup_n),
            ("blowup_r", args.blowup_r),
            ("product_n", args.product_n),
            ("product_m", args.product_m),
        )
        if value is not None
    )
    if overrides:
        ranges = CatalogRanges.parse(overrides, base=ranges)
    text = catalog_json(ranges)
    try:
        Path(args.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        sys.stderr.write(f"omalous catalog: cannot write {args.out}: {exc.strerror}\n")
        return EXIT_IO
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="omalous", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("tangent", help="Chern data of the tangent bundle")
    _add_variety_flags(p)
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("check", help="omality report for a monad JSON file")
    p.add_argument("--monad", required=True, metavar="FILE")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("search", help="enumerate omalous families")
    fam = p.add_subparsers(dest="family", required=True, parser_class=_Parser)
    h = fam.add_parser("hypersurface")
    h.add_argument("--d-max", type=int, required=True)
    h.set_defaults(func=cmd_search)
    q = fam.add_parser("product")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--bound", type=int, required=True)
    q.set_defaults(func=cmd_search)

    p = sub.add_parser("rr", help="Riemann-Roch on the blown-up plane")
    p.add_argument("--n", type=int, required=True, help="number of blown-up points")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--r", type=int, help="rank: print monad dimensions")
    which.add_argument("--sheaf", type=int, nargs=3, metavar=("R", "A", "K"))
    p.add_argument("--a-vec", type=int, nargs="+")
    p.add_argument("--twist", type=int, default=0, metavar="P")
    p.add_argument("--q-vec", type=int, nargs="+")
    p.set_defaults(func=cmd_rr)

    p = sub.add_parser("slope", help="degree and slope w.r.t. a polarization")
    _add_variety_flags(p, required=False)
    p.add_argument("--monad", metavar="FILE", help="use the monad's cohomology bundle")
    p.add_argument("--pol", help="polarization class, e.g. 'h1 + h2'")
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("catalog", help="write the full catalog as JSON")
    p.add_argument("--out", required=True)
    p.add_argument("--d-max", type=int)
    p.add_argument("--blowup-n", metavar="LO:HI")
    p.add_argument("--blowup-r", metavar="LO:HI")
    p.add_argument("--product-n", metavar="LO:HI")
    p.add_argument("--product-m", metavar="LO:HI")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except OmalousError as exc:
        sys.stderr.write(f"omalous: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
