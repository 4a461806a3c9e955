"""Command-line front end; every subcommand writes CSV or plain numbers."""
from __future__ import annotations

import argparse
import contextlib
import csv
import sys

from . import analysis, critzeta
from .errors import CapacityError, DegenerateZeroError, DomainError, InvalidArgumentError, NotFoundError
from .riesz import EvalConfig, RieszParams, evaluate

EXIT_OK, EXIT_ARGS, EXIT_CAPACITY, EXIT_NOT_FOUND = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"{self.prog}: error: {message}") from None


def _common(p: argparse.ArgumentParser, grid: bool = False, default_p: int = 1) -> None:
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--p", type=int, default=default_p)
    p.add_argument("--k", type=int, default=6, help="acceleration order (2..10)")
    p.add_argument("--mode", choices=("double-word", "compensated"), default="double-word")
    p.add_argument("--tail-eps", type=float, default=1e-16)
    if grid:
        p.add_argument("--from", dest="lo", type=float, default=0.0, help="lower log10 x")
        p.add_argument("--to", dest="hi", type=float, default=8.0, help="upper log10 x")
    p.add_argument("--out", default="-", help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rieszfunc", description="Generalised Riesz function S_{m,p}(x).")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate S_{m,p}(x)")
    _common(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=("taylor", "moebius", "accel"), default="accel")

    p = sub.add_parser("scan", help="log10x,value samples")
    _common(p, grid=True)
    p.add_argument("--step", type=float, default=0.01)

    p = sub.add_parser("extrema", help="kind,index,log10x,value of the extrema")
    _common(p, grid=True)
    p.add_argument("--step", type=float, default=analysis.GRID_STEP, help="bracketing grid step")

    p = sub.add_parser("first-zero", help="smallest positive zero of S")
    _common(p, default_p=2)
    p.add_argument("--from", dest="lo", type=float, default=-3.0, help="lower log10 x of the search")
    p.add_argument("--to", dest="hi", type=float, default=5.0, help="upper log10 x of the search")

    p = sub.add_parser("slope", help="log-log slope of extrema from an extrema CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--kind", choices=("max", "min"), required=True)
    p.add_argument("--first-index", type=int, default=1)
    p.add_argument("--last-index", type=int, default=None)
    p.add_argument("--out", default="-")

    p = sub.add_parser("zeros", help="compute the zeta zero cache")
    p.add_argument("--count", type=int, default=critzeta.MAX_ZEROS)
    p.add_argument("--out", required=True)

    for name, help_ in (("asym", "truncated oscillatory expansion"), ("compare", "S against its expansion")):
        p = sub.add_parser(name, help=help_)
        _common(p, grid=True, default_p=2)
        p.add_argument("--terms", type=int, default=5)
        p.add_argument("--step", type=float, default=0.01)
        p.add_argument("--zeros", default=None, help=f"zero cache file (default: ${critzeta.ZERO_CACHE_ENV} or bundled)")
    return ap


@contextlib.contextmanager
def _output(path: str):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="") as fh:
            yield fh


def _fmt(v) -> str:
    return format(v, ".17g") if isinstance(v, float) else str(v)


def _write_rows(fh, header, rows) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _run(args) -> None:
    if args.command == "slope":
        with open(args.input, newline="") as fh:
            records = analysis.read_extrema_csv(fh)
        fit = analysis.fit_slope([r for r in records if r.kind == args.kind], args.first_index, args.last_index)
        with _output(args.out) as fh:
            _write_rows(fh, ["slope", "intercept", "residual_rms", "n_points"],
                        [[fit.slope, fit.intercept, fit.residual_rms, fit.n_points]])
        return
    if args.command == "zeros":
        zeros = critzeta.find_zero_ordinates(args.count)
        critzeta.write_zero_cache(zeros, args.out)
        print(f"wrote {len(zeros)} zeros to {args.out}", file=sys.stderr)
        return

    params = RieszParams(args.m, args.p)
    cfg = EvalConfig(accel_order=args.k, tail_eps=args.tail_eps, summation_mode=args.mode)
    if args.command == "eval":
        res = evaluate(params, args.x, args.method, cfg)
        with _output(args.out) as fh:
            _write_rows(fh, ["value", "error_estimate", "n_head_terms", "n_tail_terms"],
                        [[res.value, res.error_estimate, res.n_head_terms, res.n_tail_terms]])
    elif args.command == "scan":
        points = analysis.scan(params, args.lo, args.hi, args.step, cfg)
        with _output(args.out) as fh:
            analysis.write_samples_csv(points, fh)
    elif args.command == "extrema":
        records = analysis.find_extrema(params, args.lo, args.hi, cfg, step=args.step)
        with _output(args.out) as fh:
            analysis.write_extrema_csv(records, fh)
    elif args.command == "first-zero":
        x0 = analysis.find_first_zero(params, cfg, log10x_lo=args.lo, log10x_hi=args.hi)
        with _output(args.out) as fh:
            print(_fmt(x0), file=fh)
    elif args.command in ("asym", "compare"):
        spec = critzeta.AsymptoticSpec(params, args.terms)
        zeros = critzeta.cached_zeros(args.terms, args.zeros)
        terms = critzeta.asymptotic_terms(spec, zeros)
        asym = lambda x: critzeta.eval_asymptotic(spec, x, terms)  # noqa: E731
        points = analysis.scan(params, args.lo, args.hi, args.step, cfg, func=asym)
        with _output(args.out) as fh:
            if args.command == "asym":
                analysis.write_samples_csv(points, fh)
            else:
                rows = []
                for pt in points:
                    exact = evaluate(params, pt.x, "accel", cfg).value
                    rows.append([pt.log10x, exact, pt.value, exact - pt.value])
                _write_rows(fh, ["log10x", "exact", "asym", "diff"], rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code not in (0, None) and not isinstance(exc.code, int):
            print(exc.code, file=sys.stderr)
        return EXIT_OK if exc.code in (0, None) else EXIT_ARGS
    try:
        _run(args)
    except (InvalidArgumentError, OSError) as exc:
        print(f"rieszfunc {args.command}: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (CapacityError, DomainError, DegenerateZeroError) as exc:
        print(f"rieszfunc {args.command}: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except NotFoundError as exc:
        print(f"rieszfunc {args.command}: {exc}", file=sys.stderr)
        return EXIT_NOT_FOUND
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
