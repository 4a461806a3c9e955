"""Mobius sieve, real zeta values and Mobius-weighted Dirichlet sums."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import dword
from .errors import CapacityError, DomainError, InvalidArgumentError

# unit roundoff of the two summation modes, used in error estimates
BINARY64_UNIT = 2.0**-53
DOUBLE_WORD_UNIT = 2.0**-104


@dataclass(frozen=True, eq=False)
class MobiusTable:
    """mu(n) for 1 <= n <= limit.

    ``mu`` has length ``limit + 1`` with ``mu[0] == 0`` so it can be indexed
    by n directly. The table itself is never mutated; ``_cache`` only holds
    derived read-only arrays.
    """

    limit: int
    mu: np.ndarray = field(repr=False)
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def values(self) -> np.ndarray:
        return self.mu[1:]

    def __getitem__(self, n: int) -> int:
        if not 1 <= n <= self.limit:
            raise IndexError(n)
        return int(self.mu[n])

    def squarefree(self) -> tuple[np.ndarray, np.ndarray]:
        """Indices n with mu(n) != 0 (as float64) and the matching signs."""
        try:
            return self._cache["sqf"]
        except KeyError:
            idx = np.flatnonzero(self.mu)
            out = (idx.astype(np.float64), self.mu[idx].astype(np.float64))
            out[0].flags.writeable = False
            out[1].flags.writeable = False
            self._cache["sqf"] = out
            return out

    def window(self, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
        """Squarefree n in [lo, hi] and mu(n), both float64."""
        n, mu = self.squarefree()
        i = np.searchsorted(n, lo, side="left")
        j = np.searchsorted(n, hi, side="right")
        return n[i:j], mu[i:j]


def mobius_sieve(limit: int) -> MobiusTable:
    """Build mu(1..limit) with an Eratosthenes-style sieve."""
    if int(limit) != limit or limit < 1:
        raise InvalidArgumentError(f"sieve limit must be a positive integer, got {limit!r}")
    limit = int(limit)
    mu = np.ones(limit + 1, dtype=np.int8)
    mu[0] = 0
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for q in range(2, math.isqrt(limit) + 1):
        if is_prime[q]:
            is_prime[q * q :: q] = False
    for q in np.flatnonzero(is_prime):
        q = int(q)
        mu[q::q] *= -1
        qq = q * q
        if qq <= limit:
            mu[qq::qq] = 0
    mu.flags.writeable = False
    return MobiusTable(limit, mu)


_TABLES: dict[int, MobiusTable] = {}


# largest table shared_table will build on its own; bigger ones must be sieved explicitly
AUTO_TABLE_MAX = 5 * 10**7


def shared_table(limit: int) -> MobiusTable:
    """Process-wide table with at least ``limit`` entries (grown on demand)."""
    if limit > AUTO_TABLE_MAX:
        raise CapacityError(
            f"a Mobius table up to {limit} exceeds the automatic limit {AUTO_TABLE_MAX}; pass an explicit table",
            limit,
        )
    best = max(_TABLES.values(), key=lambda t: t.limit, default=None)
    if best is not None and best.limit >= limit:
        return best
    table = mobius_sieve(limit)
    _TABLES.clear()
    _TABLES[limit] = table
    return table


def default_table_limit(x_max: float, m: int) -> int:
    return max(10**6, 32 * math.ceil(max(x_max, 1.0) ** (1.0 / m)))


# -- zeta at real arguments ------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """B_2, B_4, ..., B_{2*count} as exact fractions."""
    b = [Fraction(1)]
    for n in range(1, 2 * count + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * b[j]
        b.append(-acc / (n + 1))
    return tuple(b[2 * j] for j in range(1, count + 1))


def _em_coefficients(count: int) -> list[float]:
    return [float(b / math.factorial(2 * j)) for j, b in enumerate(bernoulli_even(count), 1)]


_EM6 = _em_coefficients(6)


def _em_tail(s: float, M: int) -> list[float]:
    """Euler-Maclaurin corrections for sum_{n>=M} n^-s, through B_12."""
    terms = [M ** (1.0 - s) / (s - 1.0), 0.5 * M**-s]
    rising = s
    power = M ** (-s - 1.0)
    for j, c in enumerate(_EM6, 1):
        terms.append(c * rising * power)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= M * M
    return terms


def zeta_real(s: float) -> float:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation."""
    if not s > 1.0:
        raise DomainError(f"zeta_real needs s > 1, got {s}")
    M = math.ceil(max(30.0, 2.0 * s))
    n = np.arange(1, M, dtype=np.float64)
    return math.fsum(np.concatenate([n**-s, _em_tail(s, M)]))


def zeta_minus_one(s: float) -> float:
    """zeta(s) - 1 without the cancellation of forming zeta(s) first."""
    if not s > 1.0:
        raise DomainError(f"zeta_minus_one needs s > 1, got {s}")
    M = math.ceil(max(30.0, 2.0 * s))
    n = np.arange(2, M, dtype=np.float64)
    return math.fsum(np.concatenate([n**-s, _em_tail(s, M)]))


@lru_cache(maxsize=None)
def zeta_decimal(s: int, digits: int = 50) -> Decimal:
    """zeta(s) for integer s >= 2 in decimal arithmetic (~``digits`` digits)."""
    if int(s) != s or s < 2:
        raise DomainError(f"zeta_decimal needs an integer s >= 2, got {s}")
    M, J = 64, 16
    with localcontext() as ctx:
        ctx.prec = digits + 10
        Ms = Decimal(M)
        acc = sum(Decimal(n) ** -s for n in range(M - 1, 0, -1))
        acc += Ms ** (1 - s) / (s - 1) + Ms**-s / 2
        rising = Decimal(s)
        for j, b in enumerate(bernoulli_even(J), 1):
            coeff = Decimal(b.numerator) / Decimal(b.denominator) / math.factorial(2 * j)
            acc += coeff * rising * Ms ** (-s - 2 * j + 1)
            rising *= (s + 2 * j - 1) * (s + 2 * j)
        return +acc


@lru_cache(maxsize=None)
def inverse_zeta_dw(s: int) -> tuple[float, float]:
    """1/zeta(s) as a double-word pair; the pole value 1/zeta(1) = 0."""
    if s == 1:
        return 0.0, 0.0
    with localcontext() as ctx:
        ctx.prec = 60
        return dword.from_decimal(1 / zeta_decimal(s))


# -- Mobius-weighted sums -----------------------------------------------------------

def mobius_weighted_partial(s: float, N: int, table: MobiusTable) -> float:
    """sum_{n=1}^{N-1} mu(n) / n^s, correctly rounded from the float terms."""
    if N - 1 > table.limit:
        raise InvalidArgumentError(f"need mu(n) up to {N - 1}, table has {table.limit}")
    if N <= 1:
        return 0.0
    n, mu = table.window(1, N - 1)
    return math.fsum(mu * n**-s)


def _dw_terms(s: int, table: MobiusTable) -> tuple[np.ndarray, np.ndarray]:
    key = ("dw", s)
    if key not in table._cache:
        n, mu = table.squarefree()
        hi, lo = dword.recip_powers(n, s)
        table._cache[key] = (mu * hi, mu * lo)
    return table._cache[key]


def mobius_weighted_partial_dw(s: int, N: int, table: MobiusTable) -> tuple[float, float]:
    """Double-word sum_{n=1}^{N-1} mu(n) / n^s for integer s."""
    if N - 1 > table.limit:
        raise InvalidArgumentError(f"need mu(n) up to {N - 1}, table has {table.limit}")
    if N <= 1:
        return 0.0, 0.0
    hi, lo = _dw_terms(s, table)
    k = int(np.searchsorted(table.squarefree()[0], N - 1, side="right"))
    head = math.fsum(np.concatenate([hi[:k], lo[:k]]))
    rest = math.fsum(np.concatenate([hi[:k], lo[:k], [-head]]))
    return head, rest


def tail_cutoff(s: float, eps: float) -> int:
    """Smallest M with sum_{n>M} n^-s <= M^(1-s)/(s-1) <= eps."""
    return max(1, math.ceil(((s - 1.0) * eps) ** (-1.0 / (s - 1.0))))


def mobius_weighted_tail(s: float, N: int, eps: float, table: MobiusTable) -> tuple[float, float]:
    """Direct sum_{n=N}^{M} mu(n)/n^s truncated once the remainder bound is below eps.

    Returns ``(value, bound)``; raises CapacityError naming the limit that
    would have been needed.
    """
    if not s > 1.0:
        raise DomainError(f"tail needs s > 1, got {s}")
    if not eps > 0.0:
        raise InvalidArgumentError("eps must be positive")
    N = max(int(N), 1)
    M = max(tail_cutoff(s, eps), N)
    if M > table.limit:
        raise CapacityError(
            f"tail of mu(n)/n^{s} from {N} to eps={eps:g} needs a table up to {M}", M
        )
    n, mu = table.window(N, M)
    bound = M ** (1.0 - s) / (s - 1.0)
    return math.fsum(mu * n**-s), bound


def mobius_tail_by_difference(s: int, N: int, table: MobiusTable, double_word: bool = True) -> float:
    """sum_{n>=N} mu(n)/n^s as 1/zeta(s) minus the head, s an integer.

    For s == 1 this uses sum mu(n)/n = 0. Absolute error roughly
    DOUBLE_WORD_UNIT (or BINARY64_UNIT without double-word head sums).
    """
    z_hi, z_lo = inverse_zeta_dw(s)
    if double_word:
        h_hi, h_lo = mobius_weighted_partial_dw(s, N, table)
        return math.fsum([z_hi, z_lo, -h_hi, -h_lo])
    if s == 1:
        return -mobius_weighted_partial(1, N, table)
    return math.fsum([z_hi, -mobius_weighted_partial(s, N, table)])
