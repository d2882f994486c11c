"""Command-line front end.

Subcommands: ``seq`` prints sequence tables, ``verify`` runs identity
sweeps, ``egf`` expands generating functions. Data goes to stdout, errors
to stderr. Values are always exact decimal strings (they outgrow every
fixed-width integer early), output is byte-deterministic for fixed
arguments, and the exit status is 0 for success/all-pass, 1 for a
verification, integrity, or integrality failure, and 2 for usage errors.

The optional ``--cache`` file for ``seq`` is an append-only tsv of term
records. Cached values are never trusted blindly: every lookup is checked
against recomputation and a conflict is an integrity failure, because a
sequence cache that can silently serve wrong math is worse than none.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable, Sequence

from .egf import (
    NonIntegralTermError,
    TruncatedSeries,
    egf_b_derangement,
    egf_r_derangement,
    series_exp,
    series_reciprocal_pole,
    term,
)
from .identities import IdentityId, IdentityReport, check_all, run_identity
from .sequences import b_derangement, b_stirling_k0, derangement, lah, r_derangement

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

SEQ_FAMILIES = ("derangement", "r-derangement", "b-derangement", "lah", "b-stirling-k0")
EGF_SERIES = ("r-derangement", "b-derangement", "exp", "pole")

# Arity of the params column in term records; lah rows carry n2 there.
_RECORD_ARITY = {
    "derangement": 0,
    "r-derangement": 1,
    "b-derangement": 0,
    "lah": 1,
    "b-stirling-k0": 1,
}

_DECIMAL = re.compile(r"0|[1-9][0-9]*")


class CacheFormatError(Exception):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class CacheIntegrityError(Exception):
    def __init__(self, key: tuple[str, str, int], cached: int, computed: int):
        family, params, n = key
        super().__init__(
            f"{family} params=[{params}] n={n}: cached {cached}, recomputed {computed}"
        )
        self.key = key
        self.cached = cached
        self.computed = computed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="derange",
        description="Exact derangement-family sequences, EGF expansion, and identity verification.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=("tsv", "jsonl"),
        default="tsv",
        help="output format (default: tsv)",
    )
    common.add_argument(
        "--cache",
        metavar="PATH",
        default=None,
        help="append-only term cache with conflict detection (seq only)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_seq = sub.add_parser(
        "seq", parents=[common], help="print a table of sequence values"
    )
    p_seq.add_argument("family", choices=SEQ_FAMILIES)
    p_seq.add_argument(
        "point",
        nargs="*",
        type=int,
        help="call-time arguments for the single-point form (lah N1 N2)",
    )
    p_seq.add_argument("--r", type=int, default=None, help="fixed r parameter")
    p_seq.add_argument("--from", dest="n_from", type=int, default=None)
    p_seq.add_argument("--to", dest="n_to", type=int, default=None)
    p_seq.set_defaults(handler=cmd_seq, parser=p_seq)

    p_verify = sub.add_parser(
        "verify", parents=[common], help="sweep identities and report verdicts"
    )
    p_verify.add_argument(
        "identity",
        help="identity name or 'all' (see --list for names)",
    )
    p_verify.add_argument("--r-max", dest="r_max", type=int, default=None)
    p_verify.add_argument("--n-max", dest="n_max", type=int, default=None)
    p_verify.add_argument("--order", type=int, default=None)
    p_verify.add_argument(
        "--advisory",
        action="append",
        default=[],
        metavar="IDENTITY",
        help="still report this identity but exclude it from the exit status",
    )
    p_verify.set_defaults(handler=cmd_verify, parser=p_verify)

    p_egf = sub.add_parser(
        "egf", parents=[common], help="expand a truncated generating function"
    )
    p_egf.add_argument("series", choices=EGF_SERIES)
    p_egf.add_argument("--r", type=int, default=None, help="r for r-derangement")
    p_egf.add_argument("--sign", type=int, default=None, help="+1 or -1 for exp")
    p_egf.add_argument("--m", type=int, default=None, help="pole factor in 1/(1-m*x)^p")
    p_egf.add_argument("--p", type=int, default=None, help="pole multiplicity")
    p_egf.add_argument("--order", type=int, required=True)
    p_egf.add_argument("--mode", choices=("coeffs", "terms"), required=True)
    p_egf.set_defaults(handler=cmd_egf, parser=p_egf)

    return parser


def _seq_records(args) -> list[tuple[str, tuple[int, ...], int, int]]:
    parser = args.parser
    family = args.family
    if family == "lah":
        if args.r is not None or args.n_from is not None or args.n_to is not None:
            parser.error("lah takes its two arguments positionally: seq lah N1 N2")
        if len(args.point) != 2:
            parser.error("lah requires exactly two arguments: seq lah N1 N2")
        n1, n2 = args.point
        if n1 < 0 or n2 < 0:
            parser.error("lah arguments must be nonnegative")
        return [("lah", (n2,), n1, lah(n1, n2))]

    if args.point:
        parser.error(f"{family} takes no positional arguments; use --from/--to")
    needs_r = family in ("r-derangement", "b-stirling-k0")
    if needs_r and args.r is None:
        parser.error(f"{family} requires --r")
    if not needs_r and args.r is not None:
        parser.error(f"{family} does not take --r")
    if args.r is not None and args.r < 0:
        parser.error("--r must be nonnegative")
    if args.n_to is None:
        parser.error("--to is required")
    n_from = 0 if args.n_from is None else args.n_from
    if n_from < 0 or args.n_to < n_from:
        parser.error("require 0 <= --from <= --to")

    value: Callable[[int], int]
    if family == "derangement":
        value = derangement
    elif family == "b-derangement":
        value = b_derangement
    elif family == "r-derangement":
        value = lambda n: r_derangement(n, args.r)
    else:
        value = lambda n: b_stirling_k0(n, args.r)
    params = (args.r,) if needs_r else ()
    return [(family, params, n, value(n)) for n in range(n_from, args.n_to + 1)]


def _parse_cache_line(line_no: int, line: str) -> tuple[tuple[str, str, int], int]:
    fields = line.split("\t")
    if len(fields) != 4:
        raise CacheFormatError(line_no, "expected 4 tab-separated fields")
    family, params_csv, n_text, value_text = fields
    if family not in SEQ_FAMILIES:
        raise CacheFormatError(line_no, f"unknown family {family!r}")
    if params_csv:
        parts = params_csv.split(",")
    else:
        parts = []
    if len(parts) != _RECORD_ARITY[family]:
        raise CacheFormatError(
            line_no, f"{family} records carry {_RECORD_ARITY[family]} parameter(s)"
        )
    for text in parts + [n_text, value_text]:
        if not _DECIMAL.fullmatch(text):
            raise CacheFormatError(line_no, f"field {text!r} is not a canonical decimal")
    return (family, params_csv, int(n_text)), int(value_text)


def _load_cache(path: str) -> dict[tuple[str, str, int], int]:
    cache: dict[tuple[str, str, int], int] = {}
    try:
        handle = open(path, encoding="utf-8")
    except FileNotFoundError:
        return cache
    with handle:
        for line_no, raw in enumerate(handle, start=1):
            key, value = _parse_cache_line(line_no, raw.rstrip("\n"))
            if key in cache and cache[key] != value:
                raise CacheIntegrityError(key, cache[key], value)
            cache[key] = value
    return cache


def _apply_cache(path: str, records) -> int:
    try:
        cache = _load_cache(path)
    except CacheFormatError as exc:
        print(f"derange: cache {path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CacheIntegrityError as exc:
        print(f"derange: cache integrity failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    misses = []
    for family, params, n, value in records:
        key = (family, ",".join(str(p) for p in params), n)
        if key in cache:
            if cache[key] != value:
                print(
                    "derange: cache integrity failure: "
                    f"{CacheIntegrityError(key, cache[key], value)}",
                    file=sys.stderr,
                )
                return EXIT_FAIL
        else:
            misses.append((family, params, n, value))
    if misses:
        with open(path, "a", encoding="utf-8") as handle:
            for family, params, n, value in misses:
                params_csv = ",".join(str(p) for p in params)
                handle.write(f"{family}\t{params_csv}\t{n}\t{value}\n")
    return EXIT_OK


def cmd_seq(args) -> int:
    records = _seq_records(args)
    if args.cache:
        status = _apply_cache(args.cache, records)
        if status != EXIT_OK:
            return status
    out = sys.stdout
    for family, params, n, value in records:
        if args.format == "tsv":
            params_csv = ",".join(str(p) for p in params)
            out.write(f"{family}\t{params_csv}\t{n}\t{value}\n")
        else:
            payload = {"family": family, "params": list(params), "n": n, "value": str(value)}
            out.write(json.dumps(payload, separators=(",", ":")) + "\n")
    return EXIT_OK


def _write_reports(out, fmt: str, reports: Sequence[IdentityReport]) -> None:
    if fmt == "tsv":
        for report in reports:
            out.write(f"# grid {report.id.value} {report.grid}\n")
        for report in reports:
            out.write(
                f"{report.id.value}\t{report.grid}\t{report.verdict}"
                f"\t{len(report.counterexamples)}\n"
            )
            for ce in report.counterexamples:
                out.write(f"\tcounterexample\t{ce.params}\t{ce.lhs}\t{ce.rhs}\n")
            for wit in report.witnesses:
                out.write(f"\twitness\t{wit.params}\t{wit.lhs}\t{wit.rhs}\n")
    else:
        grids = {report.id.value: report.grid for report in reports}
        out.write(json.dumps({"kind": "header", "grids": grids}, separators=(",", ":")) + "\n")
        for report in reports:
            payload = {
                "kind": "report",
                "identity": report.id.value,
                "grid": report.grid,
                "verdict": report.verdict,
                "counterexample_count": len(report.counterexamples),
                "counterexamples": [
                    {"params": ce.params, "lhs": ce.lhs, "rhs": ce.rhs}
                    for ce in report.counterexamples
                ],
                "witnesses": [
                    {"params": wit.params, "lhs": wit.lhs, "rhs": wit.rhs}
                    for wit in report.witnesses
                ],
            }
            out.write(json.dumps(payload, separators=(",", ":")) + "\n")


def cmd_verify(args) -> int:
    parser = args.parser
    by_name = {identity.value: identity for identity in IdentityId}
    advisory: set[IdentityId] = set()
    for name in args.advisory:
        if name not in by_name:
            parser.error(f"unknown advisory identity {name!r}")
        advisory.add(by_name[name])
    if args.identity == "all":
        reports = check_all(r_max=args.r_max, n_max=args.n_max, order=args.order)
    elif args.identity in by_name:
        reports = run_identity(
            by_name[args.identity], r_max=args.r_max, n_max=args.n_max, order=args.order
        )
    else:
        known = ", ".join(identity.value for identity in IdentityId)
        parser.error(f"unknown identity {args.identity!r}; choose 'all' or one of: {known}")
    _write_reports(sys.stdout, args.format, reports)
    failing = [
        report
        for report in reports
        if report.verdict == "fail" and report.id not in advisory
    ]
    return EXIT_FAIL if failing else EXIT_OK


def _egf_series(args) -> TruncatedSeries:
    parser = args.parser
    if args.order < 0:
        parser.error("--order must be nonnegative")

    def reject(*flags: tuple[str, object]) -> None:
        for flag, value in flags:
            if value is not None:
                parser.error(f"{args.series} does not take {flag}")

    if args.series == "r-derangement":
        reject(("--sign", args.sign), ("--m", args.m), ("--p", args.p))
        if args.r is None or args.r < 0:
            parser.error("r-derangement requires --r >= 0")
        return egf_r_derangement(args.r, args.order)
    if args.series == "b-derangement":
        reject(("--r", args.r), ("--sign", args.sign), ("--m", args.m), ("--p", args.p))
        return egf_b_derangement(args.order)
    if args.series == "exp":
        reject(("--r", args.r), ("--m", args.m), ("--p", args.p))
        if args.sign not in (1, -1):
            parser.error("exp requires --sign 1 or --sign -1")
        return series_exp(args.sign, args.order)
    reject(("--r", args.r), ("--sign", args.sign))
    if args.m is None or args.p is None:
        parser.error("pole requires --m and --p")
    if args.p < 1:
        parser.error("--p must be >= 1")
    return series_reciprocal_pole(args.m, args.p, args.order)


def cmd_egf(args) -> int:
    series = _egf_series(args)
    lines: list[tuple[int, str]] = []
    if args.mode == "coeffs":
        for n, coeff in enumerate(series.coeffs):
            lines.append((n, f"{coeff.numerator}/{coeff.denominator}"))
    else:
        try:
            for n in range(series.order + 1):
                lines.append((n, str(term(series, n))))
        except NonIntegralTermError as exc:
            print(f"derange: egf: {exc}", file=sys.stderr)
            return EXIT_FAIL
    out = sys.stdout
    for n, payload in lines:
        if args.format == "tsv":
            out.write(f"{n}\t{payload}\n")
        else:
            out.write(json.dumps({"n": n, "value": payload}, separators=(",", ":")) + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
