import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszfunc.errors import CapacityError, DomainError, InvalidArgumentError
from rieszfunc.numtheory import (
    inverse_zeta_dw,
    mobius_sieve,
    mobius_tail_by_difference,
    mobius_weighted_partial,
    mobius_weighted_partial_dw,
    mobius_weighted_tail,
    zeta_decimal,
    zeta_minus_one,
    zeta_real,
)


def mu_by_factorisation(n: int) -> int:
    sign, d = 1, 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            sign = -sign
        d += 1
    return -sign if n > 1 else sign


def test_sieve_small_values():
    assert list(mobius_sieve(6).values) == [1, -1, -1, 0, -1, 1]
    assert list(mobius_sieve(1).values) == [1]


def test_sieve_rejects_zero():
    with pytest.raises(InvalidArgumentError):
        mobius_sieve(0)


def test_sieve_matches_trial_factorisation(small_table):
    expected = [mu_by_factorisation(n) for n in range(1, small_table.limit + 1)]
    assert small_table.values.tolist() == expected


def test_sieve_multiplicative_exhaustive():
    t = mobius_sieve(3000)
    for a in range(1, 3001):
        for b in range(1, 3000 // a + 1):
            if math.gcd(a, b) == 1:
                assert t[a * b] == t[a] * t[b]


def test_prime_values_are_minus_one(small_table):
    for q in (2, 3, 5, 7, 9973):
        assert small_table[q] == -1


def test_mobius_series_approaches_inverse_zeta2(table):
    # tail sum_{n>1e6} n^-2 < 1e-6
    assert abs(mobius_weighted_partial(2, table.limit + 1, table) - 6 / math.pi**2) < 1e-6


def test_zeta_real_values():
    assert zeta_real(2) == pytest.approx(math.pi**2 / 6, rel=4e-16)
    assert zeta_real(4) == pytest.approx(math.pi**4 / 90, rel=4e-16)
    assert zeta_real(60) == 1.0 + 2.0**-60 or zeta_real(60) == 1.0
    assert zeta_minus_one(60) == pytest.approx(2.0**-60 + 3.0**-60, rel=1e-15)


def test_zeta3_against_brute_force():
    n = np.arange(1, 10**6 + 1, dtype=np.float64)
    partial = math.fsum(n**-3.0)
    # integral bounds: 1/(2(M+1)^2) < tail < 1/(2 M^2)
    lo = partial + 1 / (2 * (10**6 + 1) ** 2)
    hi = partial + 1 / (2 * 10**12)
    assert lo - 1e-15 <= zeta_real(3) <= hi + 1e-15
    assert zeta_real(3) == pytest.approx(1.2020569032, abs=1e-10)


def test_zeta_real_domain():
    with pytest.raises(DomainError):
        zeta_real(1.0)
    with pytest.raises(DomainError):
        zeta_real(0.5)


def test_zeta_decimal_matches_closed_forms():
    from decimal import Decimal, getcontext

    getcontext().prec = 50
    pi = Decimal("3.14159265358979323846264338327950288419716939937510")
    assert abs(zeta_decimal(2) - pi**2 / 6) < Decimal("1e-40")
    assert abs(zeta_decimal(4) - pi**4 / 90) < Decimal("1e-40")
    hi, lo = inverse_zeta_dw(2)
    assert hi == pytest.approx(6 / math.pi**2, rel=2e-16)
    assert inverse_zeta_dw(1) == (0.0, 0.0)


def test_partial_sums(table):
    assert mobius_weighted_partial(2, 1, table) == 0.0
    assert mobius_weighted_partial(2, 4, table) == pytest.approx(1 - 1 / 4 - 1 / 9, abs=1e-16)
    # tail beyond 1e4 is below 1e-12
    assert abs(mobius_weighted_partial(4, 10**4, table) - 90 / math.pi**4) < 1e-12


def test_partial_needs_big_enough_table(small_table):
    with pytest.raises(InvalidArgumentError):
        mobius_weighted_partial(2, small_table.limit + 2, small_table)


def test_double_word_partial_agrees_with_float(table):
    hi, lo = mobius_weighted_partial_dw(3, 5000, table)
    assert abs(lo) <= abs(hi) * 2**-52
    assert hi + lo == pytest.approx(mobius_weighted_partial(3, 5000, table), abs=1e-16)


def test_tail_full_series(table):
    for s, eps in ((3, 1e-12), (4, 1e-14), (6, 1e-16)):
        value, bound = mobius_weighted_tail(s, 1, eps, table)
        assert bound <= eps
        assert abs(value - 1 / zeta_real(s)) < eps + 2e-16


def test_tail_matches_difference(table):
    value, _ = mobius_weighted_tail(4, 100, 1e-15, table)
    ref = 1 / zeta_real(4) - mobius_weighted_partial(4, 100, table)
    assert abs(value - ref) < 1e-15 + 1e-15


def test_tail_is_bounded_by_triangle_inequality(table):
    for s, N, eps in ((3, 10, 1e-12), (5, 100, 1e-22), (8, 7, 1e-30)):
        value, bound = mobius_weighted_tail(s, N, eps, table)
        n = np.arange(N, table.limit + 1, dtype=np.float64)
        assert abs(value) <= math.fsum(n**-float(s)) + bound


def test_tail_capacity_error_names_limit(small_table):
    with pytest.raises(CapacityError) as exc:
        mobius_weighted_tail(3, 10, 1e-16, small_table)
    assert exc.value.required_limit > small_table.limit
    assert str(exc.value.required_limit) in str(exc.value)


def test_tail_difference_form_in_double_word(table):
    direct, _ = mobius_weighted_tail(5, 300, 1e-22, table)
    assert mobius_tail_by_difference(5, 300, table) == pytest.approx(direct, rel=1e-12)
    # sum mu(n)/n = 0
    assert mobius_tail_by_difference(1, 2, table) == pytest.approx(-1.0, abs=1e-30)


@pytest.mark.parametrize("s", range(3, 14))
@pytest.mark.parametrize("N", [2, 10, 100])
def test_partial_plus_tail(table, s, N):
    # smallest bound the 1e6 table supports for s = 3 is ~5e-13
    eps = 1e-12 if s == 3 else 1e-15
    tail, _ = mobius_weighted_tail(s, N, eps, table)
    assert abs(mobius_weighted_partial(s, N, table) + tail - 1 / zeta_real(s)) <= eps + 4e-16


@settings(max_examples=40, deadline=None)
@given(a=st.integers(1, 400), b=st.integers(1, 400))
def test_multiplicative_property(small_table, a, b):
    if math.gcd(a, b) == 1 and a * b <= small_table.limit:
        assert small_table[a * b] == small_table[a] * small_table[b]


def test_shared_table_refuses_huge_limits():
    from rieszfunc.numtheory import AUTO_TABLE_MAX, shared_table
    with pytest.raises(CapacityError) as info:
        shared_table(AUTO_TABLE_MAX + 1)
    assert info.value.required_limit == AUTO_TABLE_MAX + 1
