"""Zeta on the critical strip, its critical-line zeros, and the oscillatory
large-x expansion of S_{m,p} built from them:

    S_{m,p}(x) ~ (2/m) x^(-c0) sum_k |A_k| cos(gamma_k/m * log x + psi_k),
    c0 = (p - 1/2)/m,  A_k = Gamma(c0 - i gamma_k/m) / zeta'(1/2 + i gamma_k),
    psi_k = pi + arg A_k.
"""
from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import DegenerateZeroError, DomainError, InvalidArgumentError
from .numtheory import bernoulli_even
from .riesz import RieszParams

ZERO_CACHE_ENV = "RIESZ_ZERO_CACHE"
MAX_ZEROS = 30
T_MAX = 200.0

_EM_COEFFS = [float(b / math.factorial(2 * j)) for j, b in enumerate(bernoulli_even(6), 1)]


def _check_envelope(sigma: float, t: float) -> None:
    if not (0.0 < sigma <= 2.0) or abs(t) > T_MAX:
        raise DomainError(f"zeta_complex is limited to 0 < sigma <= 2, |t| <= {T_MAX}; got ({sigma}, {t})")
    if sigma == 1.0 and t == 0.0:
        raise DomainError("pole of zeta at s = 1")


def _em_zeta(s: complex, derivative: bool):
    t = abs(s.imag)
    M = max(30, math.ceil(2 * t))
    n = np.arange(1, M, dtype=np.float64)
    logn = np.log(n)
    powers = np.exp(-s * logn)
    logM = math.log(M)
    Ms = cmath.exp(-s * logM)  # M^-s
    z = powers.sum() + M * Ms / (s - 1) + 0.5 * Ms
    dz = -(logn * powers).sum()
    dz += -logM * M * Ms / (s - 1) - M * Ms / (s - 1) ** 2 - 0.5 * logM * Ms
    # B_2j/(2j)! * s(s+1)...(s+2j-2) * M^(-s-2j+1)
    rising = s
    drising = 1.0 + 0j  # derivative of the rising factorial
    power = Ms / M
    for j, c in enumerate(_EM_COEFFS, 1):
        z += c * rising * power
        dz += c * (drising - logM * rising) * power
        a, b = s + 2 * j - 1, s + 2 * j
        drising = drising * a * b + rising * (a + b)
        rising = rising * a * b
        power /= M * M
    return (z, dz) if derivative else z


def zeta_complex(sigma: float, t: float) -> complex:
    """zeta(sigma + i t) by Euler-Maclaurin summation (B_2 .. B_12)."""
    _check_envelope(sigma, t)
    return complex(_em_zeta(complex(sigma, t), False))


def zeta_prime_complex(sigma: float, t: float) -> complex:
    """zeta'(sigma + i t) from the term-wise differentiated Euler-Maclaurin formula."""
    _check_envelope(sigma, t)
    return complex(_em_zeta(complex(sigma, t), True)[1])


# -- complex gamma -----------------------------------------------------------------

_LANCZOS_G = 7
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def log_gamma_complex(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2 (Lanczos, g = 7)."""
    z = complex(z) - 1
    a = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        a += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return 0.5 * math.log(2 * math.pi) + (z + 0.5) * cmath.log(t) - t + cmath.log(a)


def gamma_complex(z: complex) -> complex:
    """Gamma(z) for Re z > 0; reflection is used for Re z < 1/2."""
    z = complex(z)
    if not z.real > 0:
        raise DomainError(f"gamma_complex needs Re(z) > 0, got {z}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cmath.exp(log_gamma_complex(1 - z)))
    return cmath.exp(log_gamma_complex(z))


# -- zeros on the critical line -----------------------------------------------------

def rs_theta(t: float) -> float:
    """Riemann-Siegel theta from its Stirling expansion (valid for t >= 10)."""
    return (
        t / 2 * math.log(t / (2 * math.pi)) - t / 2 - math.pi / 8
        + 1 / (48 * t) + 7 / (5760 * t**3) + 31 / (80640 * t**5)
    )


def _rotation(t: float) -> complex:
    """exp(i theta(t)); below t = 10 taken straight from Gamma(1/4 + i t/2)."""
    if t >= 10.0:
        return cmath.exp(1j * rs_theta(t))
    g = gamma_complex(complex(0.25, t / 2))
    return g / abs(g) * cmath.exp(-0.5j * t * math.log(math.pi))


def hardy_z(t: float) -> float:
    """Z(t) = exp(i theta(t)) zeta(1/2 + i t), real for real t."""
    return (_rotation(t) * zeta_complex(0.5, t)).real


@dataclass(frozen=True)
class ZetaZero:
    index: int
    gamma: float
    zeta_prime: complex


def _bisect_root(f, a: float, b: float, fa: float, tol: float) -> float:
    while b - a > tol:
        c = 0.5 * (a + b)
        if c <= a or c >= b:
            break
        fc = f(c)
        if fc == 0.0:
            return c
        if (fc < 0) == (fa < 0):
            a, fa = c, fc
        else:
            b = c
    return 0.5 * (a + b)


def find_zero_ordinates(count: int, step: float = 0.1, tol: float = 1e-12) -> list[ZetaZero]:
    """First ``count`` ordinates gamma_k from sign changes of Z(t), t >= 1."""
    if int(count) != count or count < 1:
        raise InvalidArgumentError(f"count must be a positive integer, got {count!r}")
    if count > MAX_ZEROS:
        raise DomainError(f"at most {MAX_ZEROS} zeros are supported, asked for {count}")
    zeros: list[ZetaZero] = []
    a, fa = 1.0, hardy_z(1.0)
    j = 1
    while len(zeros) < count:
        b = 1.0 + j * step
        fb = hardy_z(b)
        if fb == 0.0 or (fa < 0) != (fb < 0):
            g = b if fb == 0.0 else _bisect_root(hardy_z, a, b, fa, tol)
            zeros.append(ZetaZero(len(zeros) + 1, g, zeta_prime_complex(0.5, g)))
        a, fa = b, fb
        j += 1
    return zeros


def argument_principle_count(T: float, sigma_lo: float = 0.05, sigma_hi: float = 2.0,
                             t_lo: float = 1.0, panels_per_unit: int = 4, order: int = 16) -> float:
    """(1/2 pi i) * contour integral of zeta'/zeta around [sigma_lo, sigma_hi] x [t_lo, T].

    Composite Gauss-Legendre on each side; the result should be close to an
    integer, the number of zeros inside.
    """
    nodes, weights = np.polynomial.legendre.leggauss(order)
    corners = [complex(sigma_lo, t_lo), complex(sigma_hi, t_lo), complex(sigma_hi, T),
               complex(sigma_lo, T), complex(sigma_lo, t_lo)]
    total = 0j
    for a, b in zip(corners, corners[1:]):
        panels = max(4, math.ceil(abs(b - a) * panels_per_unit))
        for i in range(panels):
            za = a + (b - a) * i / panels
            zb = a + (b - a) * (i + 1) / panels
            half = (zb - za) / 2
            mid = (za + zb) / 2
            for x, w in zip(nodes, weights):
                s = mid + half * x
                z, dz = _em_zeta(s, True)
                total += w * half * dz / z
    return (total / (2j * math.pi)).real


def riemann_von_mangoldt(T: float) -> float:
    u = T / (2 * math.pi)
    return u * math.log(u) - u + 7 / 8


# -- zero cache file ---------------------------------------------------------------

def _packaged_cache() -> Path:
    return Path(str(resources.files("rieszfunc") / "data" / "zeta_zeros.txt"))


def default_cache_path() -> Path:
    env = os.environ.get(ZERO_CACHE_ENV)
    return Path(env) if env else _packaged_cache()


def write_zero_cache(zeros: list[ZetaZero], path: str | os.PathLike) -> None:
    lines = [f"{z.index} {z.gamma:.16e} {z.zeta_prime.real:.16e} {z.zeta_prime.imag:.16e}\n" for z in zeros]
    Path(path).write_text("".join(lines))


def read_zero_cache(path: str | os.PathLike) -> list[ZetaZero]:
    zeros = []
    for line in Path(path).read_text().splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        idx, g, re_, im_ = line.split()
        zeros.append(ZetaZero(int(idx), float(g), complex(float(re_), float(im_))))
    return zeros


_LOADED: dict[str, list[ZetaZero]] = {}


def cached_zeros(count: int, path: str | os.PathLike | None = None) -> list[ZetaZero]:
    """First ``count`` zeros from the cache file, recomputing if it is short or missing."""
    path = Path(path) if path is not None else default_cache_path()
    key = str(path)
    zeros = _LOADED.get(key)
    if zeros is None and path.exists():
        zeros = read_zero_cache(path)
    if zeros is None or len(zeros) < count:
        zeros = find_zero_ordinates(count)
    _LOADED[key] = zeros
    return zeros[:count]


# -- asymptotic expansion ------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticTerm:
    index: int
    gamma: float
    modulus: float
    phase: float


@dataclass(frozen=True)
class AsymptoticSpec:
    params: RieszParams
    n_terms: int = 5

    def __post_init__(self):
        if int(self.n_terms) != self.n_terms or self.n_terms < 1:
            raise InvalidArgumentError("n_terms must be a positive integer")

    @property
    def c0(self) -> float:
        return (self.params.p - 0.5) / self.params.m


def _reduce_phase(phi: float) -> float:
    phi = math.remainder(phi, 2 * math.pi)
    return math.pi if phi == -math.pi else phi


def asym_coeff(spec: AsymptoticSpec, zero: ZetaZero) -> AsymptoticTerm:
    if zero.zeta_prime == 0:
        raise DegenerateZeroError(f"zeta' vanishes at zero #{zero.index}; not a simple zero")
    m = spec.params.m
    A = gamma_complex(complex(spec.c0, -zero.gamma / m)) / zero.zeta_prime
    return AsymptoticTerm(zero.index, zero.gamma, abs(A), _reduce_phase(math.pi + cmath.phase(A)))


def asymptotic_terms(spec: AsymptoticSpec, zeros: list[ZetaZero] | None = None) -> list[AsymptoticTerm]:
    zeros = cached_zeros(spec.n_terms) if zeros is None else zeros
    if len(zeros) < spec.n_terms:
        raise InvalidArgumentError(f"{spec.n_terms} terms requested but only {len(zeros)} zeros available")
    return [asym_coeff(spec, z) for z in zeros[: spec.n_terms]]


def envelope(spec: AsymptoticSpec, x: float, terms: list[AsymptoticTerm] | None = None) -> float:
    """(2/m) x^-c0 sum_k |A_k|, the bound on the truncated expansion."""
    terms = terms or asymptotic_terms(spec)
    return 2.0 / spec.params.m * x**-spec.c0 * math.fsum(t.modulus for t in terms)


def eval_asymptotic(spec: AsymptoticSpec, x: float, terms: list[AsymptoticTerm] | None = None) -> float:
    if not x > 1.0:
        raise DomainError(f"eval_asymptotic needs x > 1, got {x}")
    terms = terms or asymptotic_terms(spec)
    if len(terms) < spec.n_terms:
        raise InvalidArgumentError("not enough asymptotic terms supplied")
    m = spec.params.m
    lx = math.log(x)
    osc = math.fsum(t.modulus * math.cos(t.gamma / m * lx + t.phase) for t in terms[: spec.n_terms])
    return 2.0 / m * x**-spec.c0 * osc
