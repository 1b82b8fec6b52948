"""Command-line front end.

    qschwarz series E4 --order 3 --format text
    qschwarz solve --k 5 --order 50
    qschwarz classify --k 13/5
    qschwarz verify rational-map-7-5 --order 200
    qschwarz verify all --order 200 [--numeric]

Exit status: 0 pass, 1 a check came out false, 2 usage or precondition error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import checks
from .classify import classify
from .config import SeriesCache, load_settings
from .errors import QSchwarzError
from .frobenius import r_from_k, solve
from .modforms import named_series
from .series import format_series, parse_rat, series_from_dict, series_to_dict

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _rat(text: str) -> Fraction:
    try:
        return parse_rat(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the series cache")
    common.add_argument("--config", help="path of a JSON config file")

    p = argparse.ArgumentParser(prog="qschwarz", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("series", parents=[common], help="print a named q-expansion")
    s.add_argument("name", help="E2, E4, eta, eta_pow:w or t")
    s.add_argument("--order", type=_positive_int)

    s = sub.add_parser("solve", parents=[common], help="Frobenius basis for r = (k+1)/6")
    s.add_argument("--k", type=_rat, required=True)
    s.add_argument("--order", type=_positive_int)

    s = sub.add_parser("classify", parents=[common], help="modularity class of the solutions for k")
    s.add_argument("--k", type=_rat, required=True)

    s = sub.add_parser("verify", parents=[common], help="run a named check")
    s.add_argument("check", choices=sorted(checks.CATALOG) + ["all"])
    s.add_argument("--order", type=_positive_int)
    s.add_argument("--k", type=_rat)
    s.add_argument("--r", type=_rat)
    s.add_argument("--tolerance", type=float)
    s.add_argument("--precision", type=_positive_int)
    s.add_argument("--terms", type=_positive_int)
    s.add_argument("--series", help="JSON series file to test instead of the computed one ('-' for stdin)")
    s.add_argument("--numeric", action="store_true", help="include numeric checks in 'verify all'")
    return p


def cmd_series(args, settings) -> int:
    order = args.order or settings.order
    cache = None if args.no_cache else SeriesCache(settings.cache_dir)
    payload = cache.get(args.name, order) if cache else None
    if payload is None:
        payload = series_to_dict(named_series(args.name, order).series)
        if cache:
            cache.put(args.name, order, payload)
    if args.format == "json":
        print(_dump(payload))
    else:
        print(format_series(series_from_dict(payload)))
    return EXIT_PASS


def cmd_solve(args, settings) -> int:
    order = args.order or settings.order
    r = r_from_k(args.k)
    basis = solve(r, order)
    if args.format == "json":
        print(_dump({"k": str(args.k), "r": str(r), "c": str(basis.c), "order": order,
                     "y1": series_to_dict(basis.y1), "y2": series_to_dict(basis.y2)}))
    else:
        print(f"k = {args.k}, r = {r}, c = {basis.c}")
        print(f"y1 = {format_series(basis.y1)}")
        print(f"y2 = ({format_series(basis.y2.log_part)}) L + {format_series(basis.y2.pure_part)}")
    return EXIT_PASS


def cmd_classify(args, settings) -> int:
    cls = classify(args.k)
    if args.format == "json":
        print(_dump(cls.to_dict()))
    else:
        extra = f" level={cls.level} group={cls.group}" if cls.level else ""
        if cls.weight is not None:
            extra += f" weight={cls.weight} depth={cls.depth}"
        print(f"k={cls.k} r={cls.r} {cls.tag.value} m={cls.m} n={cls.n}{extra}")
    return EXIT_PASS


def _load_series(source: str):
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    return series_from_dict(json.loads(text))


def cmd_verify(args, settings) -> int:
    order = args.order or settings.order
    params = dict(order=order, k=args.k, r=args.r, tolerance=args.tolerance or settings.tolerance,
                  precision=args.precision or settings.precision, terms=args.terms)
    if args.series:
        params["series"] = _load_series(args.series)
    if args.check == "all":
        names = [n for n, d in checks.CATALOG.items() if d.kind == "exact" or args.numeric]
        # 'all' runs every check at its default cases
        params.update(k=None, r=None, series=None)
    else:
        names = [args.check]
    reports = [checks.CATALOG[n].run(**params) for n in names]
    if args.format == "json":
        out = [r.to_dict() for r in reports]
        print(json.dumps(out if args.check == "all" else out[0]))
    else:
        for rep in reports:
            print(f"{'PASS' if rep.passed else 'FAIL'} {rep.check}")
            for row in rep.results:
                label = row.get("case") or row.get("gamma")
                print(f"    {'ok ' if row['pass'] else 'BAD'} {label} "
                      + " ".join(f"{k}={v}" for k, v in row.items() if k not in ("case", "pass")))
    return EXIT_PASS if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {"series": cmd_series, "solve": cmd_solve, "classify": cmd_classify, "verify": cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = load_settings(args.config)
        return COMMANDS[args.command](args, settings)
    except (QSchwarzError, ValueError, OSError) as exc:
        print(f"qschwarz: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
