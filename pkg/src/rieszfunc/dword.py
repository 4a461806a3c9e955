"""Double-word (hi + lo) helpers built on error-free transformations.

Only what the tail sums need: exact splitting, products of a double-word by
a double, reciprocals, and correctly rounded sums of many double-words.
Everything works elementwise on numpy arrays as well as on scalars.
"""
from __future__ import annotations

import math
from decimal import Decimal

import numpy as np

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def split(a):
    c = _SPLITTER * a
    hi = c - (c - a)
    return hi, a - hi


def two_prod(a, b):
    p = a * b
    ah, al = split(a)
    bh, bl = split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def mul_d(hi, lo, b):
    """(hi + lo) * b for a plain double b."""
    p, e = two_prod(hi, b)
    e = e + lo * b
    return two_sum(p, e)


def recip_d(b):
    """Double-word reciprocal of a double (or array of doubles)."""
    q = 1.0 / b
    p, e = two_prod(q, b)
    # 1 - q*b exactly equals -(p - 1) - e; p - 1 is exact near 1
    r = (1.0 - p) - e
    return two_sum(q, r / b)


def recip_powers(n: np.ndarray, s: int):
    """Double-word approximation of n**-s, relative error ~ s * 2**-104."""
    n = np.asarray(n, dtype=np.float64)
    hi, lo = recip_d(n)
    q_hi, q_lo = hi, lo
    for _ in range(s - 1):
        a, b = two_prod(hi, q_hi)
        b = b + hi * q_lo + lo * q_hi
        hi, lo = two_sum(a, b)
    return hi, lo


def from_decimal(value: Decimal) -> tuple[float, float]:
    hi = float(value)
    lo = float(value - Decimal(hi))
    return hi, lo


def fsum_parts(*parts) -> float:
    """Correctly rounded sum of every element of every given array/scalar."""
    chunks = []
    for part in parts:
        arr = np.asarray(part, dtype=np.float64).ravel()
        chunks.append(arr)
    return math.fsum(np.concatenate(chunks)) if chunks else 0.0
