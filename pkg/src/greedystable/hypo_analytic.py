"""Analytic evaluation of the limiting hypoexponential variable.

The limit variable H = Exp(2) + Exp(4) + Exp(8) + ... has density

    f(x) = (2/C) * sum_{i>=1} (-1)**(i-1) * exp(-2**i x) * prod_{r<i} 2/(2**r - 1)

with C = prod_{s>=1} (1 - 2**-s).  The alternating coefficients decay
superexponentially, so a couple of dozen terms exhaust double precision.
Interval probabilities Pr[x <= H < 2x] are evaluated with an expm1 pairing
that avoids the cancellation of differencing two CDF values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from math import fsum

import numpy as np

from .prob_core import DEFAULT_SERIES, SeriesConfig

__all__ = [
    "LimitTable",
    "euler_constant_C",
    "hypo_density",
    "hypo_cdf",
    "hypo_survival",
    "q_k",
    "interval_prob",
    "limit_table",
    "log_hypo_density",
    "hypo_density_max",
]

LOG2 = math.log(2.0)
# exp underflows to 0 below this magnitude of the (negative) argument
EXP_SATURATION = 745.0


def euler_constant_C(cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """The infinite product prod_{s>=1} (1 - 2**-s) ~ 0.2887880951.

    Partial products are monotonically decreasing; the tail after S factors
    perturbs the product by less than 2**(1-S).
    """
    prod = 1.0
    for s in range(1, cfg.max_terms + 1):
        prod *= 1.0 - 2.0 ** -s
        if 2.0 ** -s < cfg.abs_tol:
            break
    return prod


@lru_cache(maxsize=8)
def _series(max_terms: int, abs_tol: float) -> tuple[float, np.ndarray]:
    """(C, coefficients prod_{r<i} 2/(2**r - 1) for i = 1..) truncated per config."""
    cfg = SeriesConfig(max_terms, abs_tol)
    coeffs = []
    prod = 1.0
    for i in range(1, cfg.max_terms + 1):
        coeffs.append(prod)
        prod *= 2.0 / (2.0 ** i - 1.0)
        if prod < cfg.abs_tol:
            coeffs.append(prod)
            break
    c = euler_constant_C(cfg)
    arr = np.array(coeffs)
    # termwise-integrated series must telescope to F(inf) = 1
    signs = (-1.0) ** np.arange(arr.size)
    norm = 2.0 / c * float(np.sum(signs * arr * 2.0 ** -np.arange(1, arr.size + 1)))
    if abs(norm - 1.0) > 1e-12:
        raise ArithmeticError(f"series normalization check failed: F(inf) = {norm!r}")
    return c, arr


def _terms(x, cfg: SeriesConfig):
    """Signed density terms (-1)**(i-1) coeff_i exp(-2**i x) as an (i, x) array."""
    c, coeffs = _series(cfg.max_terms, cfg.abs_tol)
    x = np.asarray(x, dtype=float)
    i = np.arange(1, coeffs.size + 1)
    args = np.multiply.outer(2.0 ** i, x)
    ex = np.exp(-np.minimum(args, EXP_SATURATION))
    ex[args >= EXP_SATURATION] = 0.0
    signs = ((-1.0) ** (i - 1))
    return c, (signs * coeffs).reshape((-1,) + (1,) * x.ndim) * ex


def hypo_density(x, cfg: SeriesConfig = DEFAULT_SERIES):
    """Density f(x) of the limit variable; accepts scalars or arrays, x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("density is defined on x >= 0")
    c, terms = _terms(arr, cfg)
    if arr.ndim == 0:
        return 2.0 / c * fsum(terms.ravel().tolist())
    return 2.0 / c * terms.sum(axis=0)


def hypo_cdf(x, cfg: SeriesConfig = DEFAULT_SERIES):
    """CDF F(x) by termwise integration of the density series; x >= 0."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("CDF is defined on x >= 0")
    c, coeffs = _series(cfg.max_terms, cfg.abs_tol)
    i = np.arange(1, coeffs.size + 1)
    args = np.multiply.outer(2.0 ** i, arr)
    grown = -np.expm1(-np.minimum(args, EXP_SATURATION))
    grown[args >= EXP_SATURATION] = 1.0
    w = ((-1.0) ** (i - 1)) * coeffs * 2.0 ** -i.astype(float)
    terms = w.reshape((-1,) + (1,) * arr.ndim) * grown
    if arr.ndim == 0:
        return min(1.0, max(0.0, 2.0 / c * fsum(terms.ravel().tolist())))
    return np.clip(2.0 / c * terms.sum(axis=0), 0.0, 1.0)


def hypo_survival(x, cfg: SeriesConfig = DEFAULT_SERIES):
    """1 - F(x) evaluated directly (no cancellation for large x)."""
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("survival is defined on x >= 0")
    c, terms = _terms(arr, cfg)
    i = np.arange(1, terms.shape[0] + 1)
    weighted = terms * (2.0 ** -i).reshape((-1,) + (1,) * arr.ndim)
    if arr.ndim == 0:
        return min(1.0, max(0.0, 2.0 / c * fsum(weighted.ravel().tolist())))
    return np.clip(2.0 / c * weighted.sum(axis=0), 0.0, 1.0)


def interval_prob(x, cfg: SeriesConfig = DEFAULT_SERIES):
    """Pr[x <= H < 2x], the probability of one octave starting at x.

    Evaluated as (2/C) sum (-1)**(i-1) coeff_i 2**-i (exp(-a) - exp(-2a)) with
    a = 2**i x and exp(-a) - exp(-2a) = -exp(-a) expm1(-a); pairing the two
    exponentials keeps the small entries accurate to ~1e-17 absolute.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < 0):
        raise ValueError("interval start must be nonnegative")
    c, coeffs = _series(cfg.max_terms, cfg.abs_tol)
    i = np.arange(1, coeffs.size + 1)
    args = np.multiply.outer(2.0 ** i, arr)
    capped = np.minimum(args, EXP_SATURATION)
    diff = -np.exp(-capped) * np.expm1(-capped)
    diff[args >= EXP_SATURATION] = 0.0
    w = ((-1.0) ** (i - 1)) * coeffs * 2.0 ** -i.astype(float)
    terms = w.reshape((-1,) + (1,) * arr.ndim) * diff
    # cancellation can leave a ~1e-17 negative residue at extreme arguments
    if arr.ndim == 0:
        return max(0.0, 2.0 / c * fsum(terms.ravel().tolist()))
    return np.maximum(0.0, 2.0 / c * terms.sum(axis=0))


def q_k(n: int, k: int, cfg: SeriesConfig = DEFAULT_SERIES) -> float:
    """Pr[n/2**(k+1) <= H < n/2**k], the analytic approximation to the size pmf."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    return float(interval_prob(n / 2.0 ** (k + 1), cfg))


@dataclass
class LimitTable:
    """Limiting offset distribution of (size - log2 n) at fixed fractional part theta.

    ``std_dev`` is the spread statistic of the offset law reported as the
    second central moment (no square root), matching the reference
    tabulation this table is checked against.
    """

    theta: float
    entries: dict[int, float]
    mean_dev: float
    std_dev: float


def limit_table(theta: float, cfg: SeriesConfig = DEFAULT_SERIES,
                c_range: tuple[int, int] = (-8, 12)) -> LimitTable:
    """Offset-probability table Pr[offset = c] = Pr[2**(theta-c-1) <= H < 2**(theta-c)]."""
    if not 0.0 <= theta < 1.0:
        raise ValueError(f"theta must lie in [0,1), got {theta}")
    lo, hi = c_range
    if lo > -8 or hi < 12:
        raise ValueError(f"c_range must cover [-8, 12], got {c_range}")
    entries = {c: float(interval_prob(2.0 ** (theta - c - 1), cfg))
               for c in range(lo, hi + 1)}
    mean = fsum(c * p for c, p in entries.items())
    second = fsum(c * c * p for c, p in entries.items())
    return LimitTable(theta=theta, entries=entries, mean_dev=mean,
                      std_dev=second - mean * mean)


def log_hypo_density(y, cfg: SeriesConfig = DEFAULT_SERIES):
    """Density g(y) of log2(1/H): g(y) = ln2 * 2**-y * f(2**-y), via its own series."""
    arr = np.asarray(y, dtype=float)
    c, coeffs = _series(cfg.max_terms, cfg.abs_tol)
    i = np.arange(1, coeffs.size + 1)
    args = np.power(2.0, np.subtract.outer(i.astype(float), arr))
    ex = np.exp(-np.minimum(args, EXP_SATURATION))
    ex[args >= EXP_SATURATION] = 0.0
    signs = (-1.0) ** (i - 1)
    terms = (signs * coeffs).reshape((-1,) + (1,) * arr.ndim) * ex
    pref = 2.0 / c * LOG2 * 2.0 ** -arr
    if arr.ndim == 0:
        return float(pref) * fsum(terms.ravel().tolist())
    return pref * terms.sum(axis=0)


def hypo_density_max(cfg: SeriesConfig = DEFAULT_SERIES, hi: float = 8.0,
                     points: int = 80001) -> float:
    """Numerical maximum of the density on [0, hi] (the mode sits well below 1)."""
    grid = np.linspace(0.0, hi, points)
    return float(hypo_density(grid, cfg).max())
