"""Grid scans, extrema and zero location, and log-log slope fits of S_{m,p}."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, TextIO

from .errors import InvalidArgumentError, NotFoundError
from .numtheory import MobiusTable
from .riesz import EvalConfig, RieszParams, deriv, eval_accelerated

GRID_STEP = 0.01
ROOT_TOL = 1e-6
ZERO_REL_TOL = 1e-8

RealFn = Callable[[float], float]


@dataclass(frozen=True)
class SamplePoint:
    x: float
    log10x: float
    value: float


@dataclass(frozen=True)
class ExtremumRecord:
    kind: str  # "max" or "min"
    index: int
    log10x: float
    value: float


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual_rms: float
    n_points: int


def _log_grid(lo: float, hi: float, step: float) -> list[float]:
    if not lo < hi:
        raise InvalidArgumentError(f"need lo < hi, got {lo}, {hi}")
    if not step > 0:
        raise InvalidArgumentError("step must be positive")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + j * step for j in range(count)]


def _value_fn(params, cfg, table) -> RealFn:
    return lambda x: eval_accelerated(params, x, cfg, table).value


def _deriv_fn(params, cfg, table) -> RealFn:
    return lambda x: deriv(params, x, cfg, table).value


def scan(
    params: RieszParams,
    log10x_lo: float,
    log10x_hi: float,
    step: float,
    cfg: EvalConfig | None = None,
    table: MobiusTable | None = None,
    func: RealFn | None = None,
) -> list[SamplePoint]:
    """S at x = 10^(lo + j*step), j = 0, 1, ... while the exponent stays <= hi."""
    f = func or _value_fn(params, cfg, table)
    points = []
    for u in _log_grid(log10x_lo, log10x_hi, step):
        x = 10.0**u
        points.append(SamplePoint(x, math.log10(x), f(x)))
    return points


def _bisect(f: RealFn, a: float, b: float, fa: float, width: float) -> tuple[float, float]:
    """Shrink a sign-change bracket [a, b] until it is narrower than ``width``."""
    for _ in range(200):
        if b - a <= width:
            return a, b
        c = 0.5 * (a + b)
        fc = f(c)
        if fc == 0.0:
            return c, c
        if (fc < 0.0) == (fa < 0.0):
            a, fa = c, fc
        else:
            b = c
    raise ArithmeticError("bisection did not converge")


def locate_extrema(
    func: RealFn,
    dfunc: RealFn,
    log10x_lo: float,
    log10x_hi: float,
    step: float = GRID_STEP,
    tol: float = ROOT_TOL,
) -> list[ExtremumRecord]:
    """Extrema of ``func`` from sign changes of ``dfunc`` on a log10 x grid.

    Numbering of maxima and minima (each from 1) starts at the first grid
    point where ``func`` is negative; if it never is, at the lower end.
    """
    grid = _log_grid(log10x_lo, log10x_hi, step)
    start = 0
    for i, u in enumerate(grid):
        if func(10.0**u) < 0.0:
            start = i
            break
    du = lambda u: dfunc(10.0**u)  # noqa: E731
    records: list[ExtremumRecord] = []
    counts = {"max": 0, "min": 0}
    a, da = grid[start], du(grid[start])
    for b in grid[start + 1 :]:
        db = du(b)
        if da != 0.0 and (db == 0.0 or (da < 0.0) != (db < 0.0)):
            kind = "max" if da > 0.0 else "min"
            lo, hi = _bisect(du, a, b, da, tol)
            u = 0.5 * (lo + hi)
            counts[kind] += 1
            records.append(ExtremumRecord(kind, counts[kind], u, func(10.0**u)))
        a, da = b, db
    return records


def find_extrema(
    params: RieszParams,
    log10x_lo: float,
    log10x_hi: float,
    cfg: EvalConfig | None = None,
    table: MobiusTable | None = None,
    step: float = GRID_STEP,
    tol: float = ROOT_TOL,
) -> list[ExtremumRecord]:
    """Maxima and minima of S_{m,p} in [10^lo, 10^hi] as zeros of S'."""
    return locate_extrema(
        _value_fn(params, cfg, table), _deriv_fn(params, cfg, table), log10x_lo, log10x_hi, step, tol
    )


def find_first_zero(
    params: RieszParams | None = None,
    cfg: EvalConfig | None = None,
    table: MobiusTable | None = None,
    func: RealFn | None = None,
    log10x_lo: float = -3.0,
    log10x_hi: float = 5.0,
    step: float = GRID_STEP,
) -> float:
    """Smallest positive zero of S (or of an injected ``func``) in (0, 10^hi]."""
    if func is None:
        if params is None:
            raise InvalidArgumentError("either params or func is required")
        func = _value_fn(params, cfg, table)
    grid = [10.0**u for u in _log_grid(log10x_lo, log10x_hi, step)]
    a, fa = grid[0], func(grid[0])
    if fa == 0.0:
        return a
    for b in grid[1:]:
        fb = func(b)
        if fb == 0.0:
            return b
        if (fa < 0.0) != (fb < 0.0):
            while b - a > ZERO_REL_TOL * a:
                c = 0.5 * (a + b)
                fc = func(c)
                if fc == 0.0:
                    return c
                if (fc < 0.0) == (fa < 0.0):
                    a, fa = c, fc
                else:
                    b = c
            return 0.5 * (a + b)
        a, fa = b, fb
    raise NotFoundError(f"no sign change of S in (0, 1e{log10x_hi:g}]")


def fit_slope(records: Sequence[ExtremumRecord], first_index: int = 1,
              last_index: int | None = None) -> SlopeFit:
    """Least-squares line through (log10 x, log10 |S|) of same-kind extrema."""
    rows = [r for r in records if r.index >= first_index and (last_index is None or r.index <= last_index)]
    if len(rows) < 2:
        raise InvalidArgumentError(f"need at least 2 extrema with index >= {first_index}, got {len(rows)}")
    if len({r.kind for r in rows}) != 1:
        raise InvalidArgumentError("fit_slope needs records of a single kind")
    xs = [r.log10x for r in rows]
    ys = [math.log10(abs(r.value)) for r in rows]
    n = len(rows)
    mx, my = math.fsum(xs) / n, math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(xs, ys))
    if sxx == 0.0:
        raise InvalidArgumentError("all extrema share one abscissa")
    slope = sxy / sxx
    intercept = my - slope * mx
    rms = math.sqrt(math.fsum((y - intercept - slope * x) ** 2 for x, y in zip(xs, ys)) / n)
    return SlopeFit(slope, intercept, rms, n)


# -- CSV ------------------------------------------------------------------------------------

def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_samples_csv(points: Iterable[SamplePoint], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["log10x", "value"])
    for pt in points:
        w.writerow([_fmt(pt.log10x), _fmt(pt.value)])


def write_extrema_csv(records: Iterable[ExtremumRecord], fh: TextIO) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["kind", "index", "log10x", "value"])
    for r in records:
        w.writerow([r.kind, r.index, _fmt(r.log10x), _fmt(r.value)])


def read_extrema_csv(fh: TextIO) -> list[ExtremumRecord]:
    reader = csv.DictReader(fh)
    missing = {"kind", "index", "log10x", "value"} - set(reader.fieldnames or ())
    if missing:
        raise InvalidArgumentError(f"extrema CSV lacks columns {sorted(missing)}")
    return [ExtremumRecord(row["kind"], int(row["index"]), float(row["log10x"]), float(row["value"]))
            for row in reader]
