"""Generalised Riesz function S_{m,p}(x): evaluation, extrema and asymptotics."""
from .analysis import (
    ExtremumRecord,
    SamplePoint,
    SlopeFit,
    find_extrema,
    find_first_zero,
    fit_slope,
    scan,
)
from .critzeta import (
    AsymptoticSpec,
    AsymptoticTerm,
    ZetaZero,
    asym_coeff,
    cached_zeros,
    eval_asymptotic,
    find_zero_ordinates,
    gamma_complex,
    zeta_complex,
)
from .errors import (
    CapacityError,
    DegenerateZeroError,
    DomainError,
    InvalidArgumentError,
    NotFoundError,
    RieszError,
)
from .kummer import Polynomial, delta_k, e_partial, f_kummer, g_poly
from .numtheory import (
    MobiusTable,
    mobius_sieve,
    mobius_weighted_partial,
    mobius_weighted_tail,
    zeta_real,
)
from .riesz import (
    EvalConfig,
    EvalResult,
    RieszParams,
    deriv,
    eval_accelerated,
    eval_moebius,
    eval_taylor,
    lambda_coeff,
)

__version__ = "0.1.0"
