"""Command-line front end.

Subcommands: ``list`` (registry dump), ``verify`` (one identity at one
parameter point), ``sweep`` (grids of parameter points), ``constants``
(closed-form constants as certified balls), ``oeis-check`` (sequence
generators against bundled b-files).

Exit codes: 0 when nothing failed (REFUTED records are failures unless
their id is marked --expect-refuted; INCONCLUSIVE always fails), 1 on
verification failure, 2 on usage errors.  BINETKIT_PRECISION overrides
the default working precision.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from gmpy2 import mpq

from . import harness, oeis
from .balls import ball_from_quad, ball_sqrt, const_pi
from .quadratic import ALPHA, QuadElement, q_pow
from .records import VerificationRecord

_FORMATS = ("text", "json", "csv")


def _default_prec() -> int:
    env = os.environ.get("BINETKIT_PRECISION")
    if env:
        try:
            val = int(env)
        except ValueError:
            raise SystemExit(f"BINETKIT_PRECISION must be an integer, got {env!r}")
        if val < 16:
            raise SystemExit("BINETKIT_PRECISION must be at least 16")
        return val
    return harness.DEFAULT_PREC


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="binetkit",
        description="verify finite and infinite binomial-reciprocal identities",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--tol", default="1/1000000000000000000000000000000",
                       help="comparison tolerance (rational, default 10^-30)")
        p.add_argument("--prec", type=int, default=None,
                       help="working precision in bits (default 256)")
        p.add_argument("--max-terms", type=int, default=10**6,
                       help="series term budget before INCONCLUSIVE")
        p.add_argument("--format", choices=_FORMATS, default="text")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--expect-refuted", action="append", default=[],
                       metavar="ID", help="ids whose REFUTED records are expected")

    p_list = sub.add_parser("list", help="list registered identities")
    p_list.add_argument("--format", choices=_FORMATS, default="text")

    p_verify = sub.add_parser("verify", help="verify one identity instance")
    p_verify.add_argument("id")
    p_verify.add_argument("--param", action="append", default=[], metavar="K=V",
                          help="parameter assignment; repeatable, rationals as p/q")
    p_verify.add_argument("--variant", default=None,
                          help="closed-form variant where applicable")
    common(p_verify)

    p_sweep = sub.add_parser("sweep", help="verify identities over a grid")
    p_sweep.add_argument("ids", nargs="*", help="identity ids (comma- or space-separated)")
    p_sweep.add_argument("--all", action="store_true",
                         help="sweep the full registry over its default grids")
    p_sweep.add_argument("--grid", action="append", default=[], metavar="K=SPEC",
                         help="axis spec: k=a..b or k=v1,v2,...; repeatable")
    common(p_sweep)

    p_const = sub.add_parser("constants", help="print the closed-form constants")
    p_const.add_argument("--prec", type=int, default=None)

    p_oeis = sub.add_parser("oeis-check", help="cross-check a generator against a b-file")
    p_oeis.add_argument("anum", help="sequence id, e.g. A000045")
    p_oeis.add_argument("--terms", type=int, default=51,
                        help="number of leading fixture entries to check")
    p_oeis.add_argument("--fetch", action="store_true",
                        help="fetch the b-file over HTTP instead of the bundled fixture")
    p_oeis.add_argument("--format", choices=_FORMATS, default="text")
    p_oeis.add_argument("--output", default=None)

    return parser


def _parse_param_value(raw: str):
    if raw in harness._Z_TOKENS:
        return raw
    try:
        return int(raw)
    except ValueError:
        pass
    try:
        return mpq(raw)
    except ValueError:
        return raw


def _parse_params(pairs: Sequence[str]) -> dict:
    out: dict = {}
    for pair in pairs:
        if "=" not in pair:
            raise SystemExit(f"--param expects K=V, got {pair!r}")
        key, _, raw = pair.partition("=")
        out[key.strip()] = _parse_param_value(raw.strip())
    return out


def _parse_grid(specs: Sequence[str]) -> dict:
    grid: dict = {}
    for spec in specs:
        if "=" not in spec:
            raise SystemExit(f"--grid expects K=SPEC, got {spec!r}")
        key, _, body = spec.partition("=")
        body = body.strip()
        if ".." in body:
            lo_s, _, hi_s = body.partition("..")
            grid[key.strip()] = list(range(int(lo_s), int(hi_s) + 1))
        else:
            grid[key.strip()] = [_parse_param_value(tok) for tok in body.split(",")]
    return grid


def _settings(args) -> harness.VerifySettings:
    prec = args.prec if args.prec is not None else _default_prec()
    return harness.VerifySettings(
        tol=mpq(args.tol), prec=prec, max_terms=args.max_terms
    )


def _emit(payload: bytes, output: Optional[str]) -> None:
    if output:
        with open(output, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload.decode())


def _records_exit(records: list[VerificationRecord], args) -> int:
    payload = harness.report(records, args.format)
    _emit(payload, args.output)
    return 1 if harness.failure_count(records, args.expect_refuted) else 0


def _cmd_list(args) -> int:
    lines = []
    for ident in sorted(harness.REGISTRY):
        desc = harness.REGISTRY[ident]
        params = ",".join(desc.param_schema)
        lines.append(f"{ident:15s} {desc.mode:6s} params=({params}) :: {desc.statement}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_verify(args) -> int:
    params = _parse_params(args.param)
    if args.variant is not None:
        params["variant"] = args.variant
    try:
        record = harness.run_identity(args.id, params, _settings(args))
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"error: {exc}")
    return _records_exit([record], args)


def _cmd_sweep(args) -> int:
    settings = _settings(args)
    ids: list[str] = []
    for token in args.ids:
        ids.extend(t for t in token.split(",") if t)
    try:
        if args.all:
            records = harness.default_records(settings=settings)
        elif args.grid:
            if not ids:
                raise SystemExit("sweep needs identity ids (or --all)")
            records = harness.sweep(ids, _parse_grid(args.grid), settings)
        else:
            if not ids:
                raise SystemExit("sweep needs identity ids (or --all)")
            records = harness.default_records(ids, settings=settings)
    except (KeyError, ValueError) as exc:
        raise SystemExit(f"error: {exc}")
    return _records_exit(records, args)


def _constants_table(prec: int):
    pi = const_pi(prec)

    def quad_ball(q: QuadElement):
        return ball_from_quad(q, prec)

    sqrt_cot = ball_sqrt(quad_ball(QuadElement(mpq(1), mpq(2, 5), mpq(5))))
    alpha5 = ball_sqrt(quad_ball(q_pow(ALPHA, 5) / QuadElement(mpq(0), mpq(1), mpq(5))))
    alpha1 = ball_sqrt(quad_ball(ALPHA / QuadElement(mpq(0), mpq(1), mpq(5))))
    sqrt5 = ball_sqrt(ball_from_quad(QuadElement(mpq(5), mpq(0), mpq(5)), prec))
    entries = [
        ("pi", pi),
        ("sqrt(5)", sqrt5),
        ("phi (golden ratio)", quad_ball(ALPHA)),
        ("log(phi)", None),
        ("sqrt(phi^3/sqrt(5)) = cot(pi/5)", sqrt_cot),
        ("sum F(2j-1)/C(2j,j) = 3/5 + (4pi/25) sqrt(phi^5/sqrt(5))",
         mpq(3, 5) + pi * alpha5 * mpq(4, 25)),
        ("sum L(2j-1)/C(2j,j) = 1 + (4pi/5) sqrt(phi/sqrt(5))",
         1 + pi * alpha1 * mpq(4, 5)),
        ("sum F(2j)/(j C(2j,j)) = (2pi/5) sqrt(phi/sqrt(5))", pi * alpha1 * mpq(2, 5)),
        ("sum L(2j)/(j C(2j,j)) = (2pi/5) sqrt(phi^5/sqrt(5))", pi * alpha5 * mpq(2, 5)),
        ("sum F(2j)/(j^2 C(2j,j)) = 4 pi^2 sqrt(5)/125", pi * pi * sqrt5 * mpq(4, 125)),
        ("sum L(2j)/(j^2 C(2j,j)) = pi^2/5", pi * pi / 5),
        ("sum 2^(j+1)/((2j+1) C(2j,j)) = pi", pi),
        ("sum (2^(2j+1)/((2j+1) C(2j,j))) F(2j)/3^(j+1) = (2/sqrt(5)) arctan(sqrt(5)/2)",
         None),
    ]
    from .balls import ball_arctan, ball_log

    entries[3] = ("log(phi)", ball_log(quad_ball(ALPHA)))
    entries[-1] = (
        entries[-1][0],
        2 * ball_arctan(quad_ball(QuadElement(mpq(0), mpq(1, 2), mpq(5)))) / sqrt5,
    )
    return entries


def _cmd_constants(args) -> int:
    prec = args.prec if args.prec is not None else _default_prec()
    lines = [f"{name} = {ball}" for name, ball in _constants_table(prec)]
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def _cmd_oeis(args) -> int:
    try:
        bfile = oeis.fetch_bfile(args.anum) if args.fetch else oeis.load_fixture(args.anum)
        start = bfile.first_index()
        record = oeis.cross_check(
            args.anum, index_range=range(start, start + args.terms), bfile=bfile
        )
    except (ValueError, FileNotFoundError, IndexError) as exc:
        raise SystemExit(f"error: {exc}")
    payload = harness.report([record], args.format)
    _emit(payload, args.output)
    from .records import Status

    return 0 if record.status is Status.VERIFIED_EXACT else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors
        return int(exc.code or 0)
    try:
        if args.command == "list":
            return _cmd_list(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "constants":
            return _cmd_constants(args)
        if args.command == "oeis-check":
            return _cmd_oeis(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            sys.stderr.write(exc.code + "\n")
            return 2
        return int(exc.code or 0)
    raise AssertionError("unreachable")


if __name__ == "__main__":
    raise SystemExit(main())
