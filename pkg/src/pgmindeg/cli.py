"""Command-line entry point: ``pgmindeg <command> ...``.

Exit codes: 0 success, 1 input error, 2 partial scan, 3 internal invariant
violation.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .pcgroup import PresentationError

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL, EXIT_INTERNAL = 0, 1, 2, 3


def _load(path):
    from .pcp_format import read_pcp
    return read_pcp(path)


def cmd_mu(args) -> int:
    from .mindeg import minimal_degree, verify_certificate
    from .reports import emit_report

    P = _load(args.file)
    cert = minimal_degree(P, check=args.check)
    if args.verify:
        v = verify_certificate(P, cert)
        if not v:
            raise AssertionError(f"certificate failed verification: {v.reason}")
    print(f"{P.name}: mu = {cert.mu}")
    if args.certificate:
        emit_report(cert, args.format, args.certificate, order=P.order)
    return EXIT_OK


def cmd_check(args) -> int:
    from .pcgroup import consistency_check

    P = _load(args.file)
    v = consistency_check(P)
    if v:
        print(f"{P.name}: consistent, order {P.p}^{P.n}")
        return EXIT_OK
    print(f"{P.name}: inconsistent ({v.reason})")
    return EXIT_INPUT


def cmd_quotients(args) -> int:
    from .exceptional import distinguished_quotients
    from .reports import emit_report

    P = _load(args.file)
    rep = distinguished_quotients(P, check=args.check,
                                  abelian_shortcut=not args.no_abelian_shortcut,
                                  abelian_formula=not args.no_abelian_formula)
    text = emit_report(rep, args.format, args.report)
    if not args.report:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_scan(args) -> int:
    from .cache import ResultCache
    from .exceptional import scan_corpus
    from .pcp_format import default_cache_dir, read_manifest
    from .reports import emit_report

    manifest = read_manifest(args.manifest)
    manifest.validate(parse_files=True)
    cache_dir = args.cache or default_cache_dir()
    cache = ResultCache(cache_dir, namespace=manifest.corpus_id) if cache_dir else None

    def progress(gid, rep, secs):
        state = "failed" if rep is None else ("exceptional" if rep.exceptional else "ok")
        logging.info("%s %s %.2fs", gid, state, secs)

    report = scan_corpus(manifest, jobs=args.jobs, cache=cache, resume=args.resume,
                         timeout=args.timeout, limit=args.limit,
                         cyclic_skip=not args.no_cyclic_skip,
                         abelian_shortcut=not args.no_abelian_shortcut,
                         abelian_formula=not args.no_abelian_formula,
                         progress=progress)
    if report.exceptional_count != sum(r.exceptional for r in report.per_group):
        raise AssertionError("exceptional_count disagrees with per-group verdicts")
    text = emit_report(report, args.format, args.report, timing=args.timing)
    if not args.report:
        sys.stdout.write(text)
    print(f"{report.corpus_id}: {report.exceptional_count} exceptional of "
          f"{report.total_groups}" + (" (partial)" if report.partial else ""),
          file=sys.stderr)
    return EXIT_PARTIAL if report.partial else EXIT_OK


def cmd_bounds(args) -> int:
    from .exceptional import exceptional_bounds, group_count_p6

    try:
        b = exceptional_bounds(args.p)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    print(f"p = {args.p}")
    print(f"groups of order p^6:          {group_count_p6(args.p)}")
    print(f"shown non-exceptional (>=):   {b.nonexceptional_lower}")
    print(f"exceptional, upper bound:     {b.upper}")
    print(f"exceptional, conjectured:     {b.conjectured}")
    return EXIT_OK


def cmd_make(args) -> int:
    from dataclasses import replace

    from .builtins import builtin_group
    from .pcp_format import write_pcp

    P = builtin_group(args.spec)
    if args.name:
        P = replace(P, name=args.name)
    text = write_pcp(P)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgmindeg", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"pgmindeg {__version__}")
    ap.add_argument("-v", "--verbose", action="store_true", help="log per-group progress")
    sub = ap.add_subparsers(dest="command", required=True)

    fmt = dict(choices=["json", "csv", "text"], default="json")

    p = sub.add_parser("mu", help="minimal faithful permutation degree of a PCP file")
    p.add_argument("file")
    p.add_argument("--certificate", metavar="OUT", help="write the witnessing collection")
    p.add_argument("--format", **fmt)
    p.add_argument("--check", action="store_true", help="run the consistency check first")
    p.add_argument("--verify", action="store_true", help="re-verify the certificate")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("check", help="consistency check of a PCP file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("quotients", help="mu(G/N) for every normal subgroup N")
    p.add_argument("file")
    p.add_argument("--report", metavar="OUT")
    p.add_argument("--format", choices=["json", "csv", "text"], default="text")
    p.add_argument("--check", action="store_true")
    p.add_argument("--no-abelian-shortcut", action="store_true")
    p.add_argument("--no-abelian-formula", action="store_true",
                   help="search abelian quotients instead of reading off their invariants")
    p.set_defaults(func=cmd_quotients)

    p = sub.add_parser("scan", help="scan a corpus manifest for exceptional groups")
    p.add_argument("manifest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", metavar="DIR", help="result cache (default: $PGMINDEG_CACHE)")
    p.add_argument("--resume", action="store_true", help="reuse cached results")
    p.add_argument("--report", metavar="OUT")
    p.add_argument("--format", **fmt)
    p.add_argument("--timeout", type=float, default=None, help="seconds per group")
    p.add_argument("--limit", type=int, default=None, help="scan only the first N groups")
    p.add_argument("--timing", action="store_true", help="include wall time in the report")
    p.add_argument("--no-cyclic-skip", action="store_true")
    p.add_argument("--no-abelian-shortcut", action="store_true")
    p.add_argument("--no-abelian-formula", action="store_true",
                   help="search abelian quotients instead of reading off their invariants")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("bounds", help="group count and exceptional bounds for order p^6")
    p.add_argument("p", type=int)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("make", help="write a built-in group as a PCP file")
    p.add_argument("spec", help="e.g. 'abelian(5, {2,1})' or 'heisenberg(3)'")
    p.add_argument("-o", "--output")
    p.add_argument("--name")
    p.set_defaults(func=cmd_make)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (PresentationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
