"""Evaluators for the generalised Riesz function

    S_{m,p}(x) = sum_{j>=0} (-1)^(j-1) x^j / (j! zeta(m j + p)).

Three routes are provided and used as mutual oracles:

* ``eval_taylor``      the power series itself (small x only),
* ``eval_moebius``     sum_n mu(n)/n^p (1 - exp(-x/n^m)) - 1/zeta(p), summed directly,
* ``eval_accelerated`` the same Mobius series with its tail n >= N = ceil(x^(1/m))
  rewritten through the Kummer functions f_k and Mobius-weighted tail
  coefficients lambda_r, which is what makes x ~ 1e8 affordable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kummer
from .errors import CapacityError, DomainError, InvalidArgumentError
from .numtheory import (
    BINARY64_UNIT,
    DOUBLE_WORD_UNIT,
    MobiusTable,
    default_table_limit,
    inverse_zeta_dw,
    mobius_tail_by_difference,
    mobius_weighted_tail,
    shared_table,
    zeta_minus_one,
)

TAYLOR_MAX_X = 40.0
SUMMATION_MODES = ("compensated", "double-word")


@dataclass(frozen=True)
class RieszParams:
    m: int = 2
    p: int = 1

    def __post_init__(self):
        for name in ("m", "p"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise InvalidArgumentError(f"{name} must be an integer >= 1, got {v!r}")
            object.__setattr__(self, name, int(v))

    def shifted(self, dp: int) -> "RieszParams":
        return RieszParams(self.m, self.p + dp)


@dataclass(frozen=True)
class EvalConfig:
    """Knobs of the accelerated scheme.

    ``summation_mode="double-word"`` forms the Mobius tail coefficients that
    cannot be summed directly as 1/zeta(s) minus a head sum carried in
    double-word arithmetic; ``"compensated"`` does the same subtraction in
    binary64 (exactly rounded sums, but a ~1e-16 absolute floor).
    """

    accel_order: int = 6
    tail_eps: float = 1e-16
    summation_mode: str = "double-word"

    def __post_init__(self):
        k = self.accel_order
        if isinstance(k, bool) or int(k) != k or not 2 <= k <= 10:
            raise InvalidArgumentError(f"accel_order must be an integer in 2..10, got {k!r}")
        if not self.tail_eps > 0:
            raise InvalidArgumentError("tail_eps must be positive")
        if self.summation_mode not in SUMMATION_MODES:
            raise InvalidArgumentError(f"summation_mode must be one of {SUMMATION_MODES}")


@dataclass(frozen=True)
class EvalResult:
    value: float
    n_head_terms: int
    n_tail_terms: int
    error_estimate: float
    cutoff: int = 0


def cutoff(x: float, m: int) -> int:
    """N = ceil(x^(1/m)), at least 1, corrected for rounding of the root."""
    N = max(1, math.ceil(x ** (1.0 / m)))
    while N > 1 and (N - 1) ** m >= x:
        N -= 1
    while N**m < x:
        N += 1
    return N


def _table_for(x: float, m: int, table: MobiusTable | None) -> MobiusTable:
    return table if table is not None else shared_table(default_table_limit(x, m))


def _check_x(x: float) -> float:
    x = float(x)
    if not x >= 0.0 or math.isinf(x):
        raise DomainError(f"x must be finite and >= 0, got {x}")
    return x


# -- Taylor series ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _inv_zeta_minus_one(s: int) -> float:
    if s == 1:
        return -1.0
    zm1 = zeta_minus_one(s)
    return -zm1 / (1.0 + zm1)


def eval_taylor(params: RieszParams, x: float, eps: float = 1e-17) -> EvalResult:
    """Power series in x, for 0 <= x <= 40.

    Summed as -exp(-x) + sum_j (-1)^(j-1) x^j/j! (1/zeta(mj+p) - 1): the
    subtracted exponential series removes the huge alternating terms, since
    1/zeta(s) - 1 ~ -2^-s.
    """
    x = _check_x(x)
    if x > TAYLOR_MAX_X:
        raise DomainError(
            f"eval_taylor is limited to x <= {TAYLOR_MAX_X}; use eval_moebius or eval_accelerated"
        )
    m, p = params.m, params.p
    terms = [-math.exp(-x)]
    power = 1.0  # x^j / j!
    partial = terms[0]
    j = 0
    while True:
        term = (-1.0 if j % 2 == 0 else 1.0) * power * _inv_zeta_minus_one(m * j + p)
        terms.append(term)
        partial += term
        a = abs(term)
        if j > x and a < eps * abs(partial) and a < eps:
            break
        j += 1
        power *= x / j
        if power == 0.0:
            break
    value = math.fsum(terms)
    err = BINARY64_UNIT * 4 * math.fsum(abs(t) for t in terms)
    return EvalResult(value, j + 1, 0, err)


# -- direct Mobius series --------------------------------------------------------

def eval_moebius(
    params: RieszParams, x: float, eps: float = 1e-15, table: MobiusTable | None = None
) -> EvalResult:
    """sum_{n<=M} mu(n)/n^p (1 - exp(-x/n^m)) - 1/zeta(p) summed directly.

    M is the first index with x * sum_{n>M} n^-(m+p) below eps.
    """
    x = _check_x(x)
    m, p = params.m, params.p
    z_hi, z_lo = inverse_zeta_dw(p)
    if x == 0.0:
        return EvalResult(-(z_hi + z_lo), 0, 0, 0.0)
    s = m + p
    M = max(1, math.ceil(((s - 1) * eps / x) ** (-1.0 / (s - 1))))
    if table is None:
        table = shared_table(max(default_table_limit(x, m), M))
    if M > table.limit:
        raise CapacityError(f"direct Mobius series for x={x:g} needs a table up to {M}", M)
    n, mu = table.window(1, M)
    terms = mu * n**-p * -np.expm1(-x / n**m)
    value = math.fsum(np.concatenate([terms, [-z_hi, -z_lo]]))
    bound = x * M ** (1.0 - s) / (s - 1)
    err = bound + BINARY64_UNIT * (1.0 + math.fsum(np.abs(terms)))
    return EvalResult(value, M, 0, err)


# -- accelerated scheme ------------------------------------------------------------

def _tail_power_sum(
    s: int, N: int, eps: float, table: MobiusTable, double_word: bool
) -> tuple[float, float]:
    """sum_{n>=N} mu(n)/n^s to absolute accuracy ~eps where affordable.

    Sums directly when the table reaches the truncation point; otherwise
    takes whichever of (a) the direct sum cut at the table limit or (b) the
    1/zeta(s)-minus-head difference promises the smaller error.
    """
    if s > 1:
        try:
            return mobius_weighted_tail(s, N, eps, table)
        except CapacityError:
            pass
    unit = DOUBLE_WORD_UNIT if double_word else BINARY64_UNIT
    diff_err = 4.0 * unit * (1.0 + math.log(N + 1.0))
    if s > 1:
        L = table.limit
        direct_err = L ** (1.0 - s) / (s - 1.0)
        if direct_err < diff_err and N <= L:
            value, _ = mobius_weighted_tail(s, N, direct_err * 1.0000001, table)
            return value, direct_err
    return mobius_tail_by_difference(s, N, table, double_word), diff_err


def lambda_coeff(
    r: int,
    params: RieszParams,
    N: int,
    eps: float = 1e-16,
    table: MobiusTable | None = None,
    double_word: bool = True,
) -> float:
    """lambda_r = -N^(m r) sum_{n>=N} mu(n)/n^(m r + p), to absolute accuracy ~eps.

    The Mobius-weighted tail is summed directly; the form
    N^(mr) (sum_{n<N} mu(n)/n^(mr+p) - 1/zeta(mr+p)) is only used (in
    double-word arithmetic) when direct summation cannot reach ``eps`` within
    the table.
    """
    return _lambda_with_error(r, params, N, eps, _table_for(N**params.m, params.m, table), double_word)[0]


def _lambda_with_error(r, params, N, eps, table, double_word):
    if r < 0 or int(r) != r:
        raise InvalidArgumentError(f"r must be a non-negative integer, got {r!r}")
    scale = float(N) ** (params.m * r)
    tau, err = _tail_power_sum(params.m * r + params.p, N, eps / scale, table, double_word)
    return -scale * tau, scale * err


def _t1_cutoff(k: int, s1: int, x: float, target: float) -> float:
    """Smallest M (as float) where the T1 remainder bound drops below target."""
    D = kummer.delta_ratio_bound(k)
    logb = math.log(D) - math.lgamma(k + 1) + k * math.log(x) - math.log(s1 - 1) - math.log(target)
    return math.exp(logb / (s1 - 1))


def tail_terms(params: RieszParams, x: float, cfg: EvalConfig, table: MobiusTable) -> dict:
    """The two pieces T1 (Kummer part) and T2 (lambda part) of the tail n >= N."""
    m, p, k = params.m, params.p, cfg.accel_order
    N = cutoff(x, m)
    XN = x / N**m
    s1 = m * k + p
    kf = math.factorial(k)

    def block(lo: int, hi: int) -> np.ndarray:
        n, mu = table.window(lo, hi)
        X = x / n**m
        return mu * n**-p * X**k * kummer.delta_k(k, X) / kummer.e_partial(k, X) / kf

    t1_terms = np.zeros(0)
    M = N - 1
    if x > 0.0:
        first = block(N, 2 * N)
        scale = math.fsum(np.abs(first))
        target = cfg.tail_eps * (scale if scale > 0 else 1.0)
        M = max(2 * N, math.ceil(_t1_cutoff(k, s1, x, target)))
        if M > table.limit:
            raise CapacityError(f"accelerated tail for x={x:g}, k={k} needs a table up to {M}", M)
        t1_terms = np.concatenate([first, block(2 * N + 1, M)])
    t1 = math.fsum(t1_terms)
    t1_bound = kummer.delta_ratio_bound(k) / kf * x**k * M ** (1.0 - s1) / (s1 - 1) if x > 0 else 0.0

    # lambda_0 = sum_{n<N} mu/n^p - 1/zeta(p) is the constant of the head sum
    double_word = cfg.summation_mode == "double-word"
    tol = cfg.tail_eps * float(N) ** (1 - p) / k
    lambdas, lam_err, t2_parts = [], 0.0, []
    for r in range(k):
        w = XN**r / math.factorial(r)
        if r > 0 and w == 0.0:
            lambdas.append(0.0)
            continue
        lam, err = _lambda_with_error(r, params, N, tol / max(w, 1e-300), table, double_word)
        lambdas.append(lam)
        lam_err += w * err
        if r > 0:
            t2_parts.append((-XN) ** r / math.factorial(r) * lam)
    t2 = math.fsum(t2_parts)
    return {
        "N": N,
        "M": M,
        "T1": t1,
        "T2": t2,
        "lambdas": lambdas,
        "t1_terms": t1_terms,
        "error": t1_bound + lam_err + BINARY64_UNIT * (math.fsum(np.abs(t1_terms)) + math.fsum(np.abs(t2_parts))),
    }


def eval_accelerated(
    params: RieszParams,
    x: float,
    cfg: EvalConfig | None = None,
    table: MobiusTable | None = None,
) -> EvalResult:
    """S_{m,p}(x) = head + T1 + T2 with head = sum_{n<N} mu/n^p (1 - e^-X_n) - 1/zeta(p).

    The head is formed as lambda_0 - sum_{n<N} mu(n)/n^p exp(-X_n), which is
    the same quantity without the O(1) cancellation against 1/zeta(p).
    """
    cfg = cfg or EvalConfig()
    x = _check_x(x)
    m, p = params.m, params.p
    table = _table_for(x, m, table)
    parts = tail_terms(params, x, cfg, table)
    N = parts["N"]
    if N > 1:
        n, mu = table.window(1, N - 1)
        decay = mu * n**-p * np.exp(-x / n**m)
    else:
        decay = np.zeros(0)
    head = math.fsum(np.concatenate([[parts["lambdas"][0]], -decay]))
    value = math.fsum([head, parts["T1"], parts["T2"]])
    err = parts["error"] + BINARY64_UNIT * math.fsum(np.abs(decay))
    return EvalResult(value, N - 1, parts["M"] - N + 1, err, N)


def deriv(
    params: RieszParams,
    x: float,
    cfg: EvalConfig | None = None,
    table: MobiusTable | None = None,
) -> EvalResult:
    """S'_{m,p}(x) = -S_{m,p+m}(x)."""
    res = eval_accelerated(params.shifted(params.m), x, cfg, table)
    return EvalResult(-res.value, res.n_head_terms, res.n_tail_terms, res.error_estimate, res.cutoff)


def evaluate(params: RieszParams, x: float, method: str = "accel", cfg: EvalConfig | None = None,
             table: MobiusTable | None = None) -> EvalResult:
    cfg = cfg or EvalConfig()
    if method == "taylor":
        return eval_taylor(params, x)
    if method == "moebius":
        return eval_moebius(params, x, table=table)
    if method == "accel":
        return eval_accelerated(params, x, cfg, table)
    raise InvalidArgumentError(f"unknown method {method!r}")
