"""Exponential partial sums e_k, the functions f_k = exp(-z) 1F1(1; k+1; z),
the correction polynomials g_k and their difference Delta_k = f_k - g_k.

All functions accept scalars or numpy arrays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import DomainError

F_REL_TOL = 1e-18
F_DOMAIN = 1.5


@dataclass(frozen=True)
class Polynomial:
    """Real polynomial, coefficients in ascending degree."""

    coefficients: tuple[float, ...]
    exact: tuple[Fraction, ...] = ()

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, z):
        acc = np.zeros_like(np.asarray(z, dtype=np.float64)) if np.ndim(z) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * z + c
        return acc


def _check_order(k: int, lowest: int) -> None:
    if int(k) != k or k < lowest:
        raise DomainError(f"order must be an integer >= {lowest}, got {k!r}")


def e_partial(k: int, z):
    """sum_{r=0}^{k-1} z^r / r! by Horner's rule (e_0 is the empty sum)."""
    _check_order(k, 0)
    if k == 0:
        return np.zeros_like(z, dtype=np.float64) if np.ndim(z) else 0.0
    acc = 1.0
    for r in range(k - 1, 0, -1):
        acc = 1.0 + acc * z / r
    return acc * np.ones_like(z, dtype=np.float64) if np.ndim(z) else float(acc)


def f_kummer(k: int, z):
    """exp(-z) * sum_j z^j k!/(k+j)!  for |z| <= 1.5.

    The series is summed until the next term is below 1e-18 of the
    running sum, which for |z| <= 1.5 is reached within ~20 terms.
    """
    _check_order(k, 0)
    arr = np.asarray(z, dtype=np.float64)
    if np.any(np.abs(arr) > F_DOMAIN):
        raise DomainError(f"f_kummer is restricted to |z| <= {F_DOMAIN}")
    if k == 0:
        # exp(-z) * exp(z)
        return np.ones_like(arr) if np.ndim(z) else 1.0
    term = np.ones_like(arr)
    acc = np.ones_like(arr)
    j = 0
    while True:
        j += 1
        term = term * arr / (k + j)
        acc = acc + term
        if np.all(np.abs(term) <= F_REL_TOL * np.abs(acc)):
            break
    out = np.exp(-arr) * acc
    return out if np.ndim(z) else float(out)


@lru_cache(maxsize=None)
def g_poly(k: int) -> Polynomial:
    """g_k with 1/e_k(z) = e_k(-z) + z^k g_k(z) / (k! e_k(z)).

    Formed exactly as k! (1 - e_k(z) e_k(-z)) / z^k in rational arithmetic.
    """
    _check_order(k, 2)
    e_pos = [Fraction(1, math.factorial(r)) for r in range(k)]
    e_neg = [c if r % 2 == 0 else -c for r, c in enumerate(e_pos)]
    prod = [Fraction(0)] * (2 * k - 1)
    for i, a in enumerate(e_pos):
        for j, b in enumerate(e_neg):
            prod[i + j] += a * b
    residual = [-c for c in prod]
    residual[0] += 1
    if any(residual[:k]):
        raise ArithmeticError(f"low-order terms of 1 - e_{k}(z)e_{k}(-z) did not cancel")
    exact = tuple(math.factorial(k) * c for c in residual[k:])
    while len(exact) > 1 and exact[-1] == 0:
        exact = exact[:-1]
    return Polynomial(tuple(float(c) for c in exact), exact)


def delta_k(k: int, z):
    """f_k(z) - g_k(z)."""
    return f_kummer(k, z) - g_poly(k)(z)


def delta_ratio_bound(k: int) -> float:
    """Majorant of |Delta_k(z) / e_k(z)| on 0 <= z <= 1 (f_k <= 1, e_k >= 1)."""
    return 1.0 + sum(abs(c) for c in g_poly(k).coefficients)
