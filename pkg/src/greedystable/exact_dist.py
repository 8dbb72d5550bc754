"""Exact size distribution of the greedy heuristic via geometric convolutions.

The size S after k acceptances satisfies Pr[size < k] = Pr[G_1 + ... + G_k > n]
with G_j ~ Geom(2**(1-j)).  Convolving one geometric law at a time with an
overflow bucket at the cutoff keeps every survival probability exact to double
precision in O(n) per convolution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

__all__ = [
    "DiscretePMF",
    "convolve_geometric",
    "exact_pk",
    "size_survival",
    "default_k_max",
    "gap_sum_pmf",
    "scaled_gap_sum_atoms",
    "scaled_gap_sum_cdf",
]

# masses below this are flushed to zero; the deficit lands in the overflow bucket
MASS_FLOOR = 1e-300


@dataclass
class DiscretePMF:
    """PMF over consecutive nonnegative integers with an explicit overflow bucket.

    ``mass[i]`` is the probability of ``offset + i``; ``overflow`` is the total
    mass at values past the end of ``mass``.
    """

    offset: int
    mass: np.ndarray
    overflow: float

    @classmethod
    def point(cls, value: int) -> "DiscretePMF":
        return cls(offset=value, mass=np.ones(1), overflow=0.0)

    @property
    def cutoff(self) -> int:
        return self.offset + len(self.mass) - 1

    def total(self) -> float:
        return float(self.mass.sum()) + self.overflow

    def prob(self, value: int) -> float:
        if self.offset <= value <= self.cutoff:
            return float(self.mass[value - self.offset])
        return 0.0


def convolve_geometric(base: DiscretePMF, q: float, cutoff: int) -> DiscretePMF:
    """Law of base + Geom(q), truncated at cutoff with an overflow bucket.

    Running-accumulator recurrence a_t = (1-q) a_{t-1} + q b_{t-1}, realized
    as a first-order IIR filter.  Truncation is exact: the overflow bucket
    carries precisely Pr[sum > cutoff].
    """
    if not (0.0 < q <= 1.0):
        raise ValueError(f"geometric parameter must be in (0,1], got {q}")
    if cutoff < 0:
        raise ValueError(f"cutoff must be nonnegative, got {cutoff}")
    b = np.zeros(cutoff + 1)
    hi = min(base.cutoff, cutoff) + 1
    if base.offset < hi:
        b[base.offset:hi] = base.mass[: hi - base.offset]
    a = lfilter([0.0, q], [1.0, -(1.0 - q)], b)
    a[a < MASS_FLOOR] = 0.0
    overflow = max(0.0, base.total() - float(a.sum()))
    first = int(np.argmax(a > 0)) if a.any() else 0
    return DiscretePMF(offset=first, mass=a[first:], overflow=overflow)


def default_k_max(n: int) -> int:
    # past ~2 log2 n even the maximum stable set is absent w.h.p.
    return math.ceil(2 * math.log2(max(n, 2))) + 8


def size_survival(n: int, k: int, include_unit_gap: bool = True) -> float:
    """Pr[size < k], i.e. the truncated geometric sum overshoots n.

    The first gap is Geom(1) == 1, so the sum of k gaps exceeding n is the
    same event as the remaining k-1 gaps reaching n; both phrasings are
    implemented and must agree.
    """
    if k < 1:
        return 0.0
    if include_unit_gap:
        pmf = DiscretePMF.point(0)
        for j in range(k):
            pmf = convolve_geometric(pmf, 2.0 ** -j, n)
        return pmf.overflow
    pmf = DiscretePMF.point(0)
    for j in range(1, k):
        pmf = convolve_geometric(pmf, 2.0 ** -j, n - 1)
    return pmf.overflow


def exact_pk(n: int, k_max: int | None = None) -> np.ndarray:
    """Pr[size = k] for k = 0..k_max (index = k; the k=0 entry is 0 for n >= 1).

    One O(n) convolution per k; the whole curve at n = 2**20 takes well under
    a second.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if k_max is None:
        k_max = default_k_max(n)
    p = np.zeros(k_max + 1)
    pmf = DiscretePMF.point(0)
    prev_surv = 0.0
    for k in range(1, k_max + 2):
        pmf = convolve_geometric(pmf, 2.0 ** -(k - 1), n)
        surv = pmf.overflow  # Pr[size < k]
        if k >= 2:
            p[k - 1] = max(0.0, surv - prev_surv)
        prev_surv = surv
        if surv >= 1.0 - 1e-16 and k > k_max:
            break
    return p


def gap_sum_pmf(k: int, cutoff: int) -> DiscretePMF:
    """Law of the integer gap sum Geom(1/2) + ... + Geom(2**(1-k)), truncated.

    This is the sum without the deterministic unit gap; its support starts
    at k-1.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    pmf = DiscretePMF.point(0)
    for j in range(1, k):
        pmf = convolve_geometric(pmf, 2.0 ** -j, cutoff)
    return pmf


def scaled_gap_sum_atoms(k: int, t_max: float) -> tuple[np.ndarray, np.ndarray]:
    """(positions, masses) of the gap sum rescaled by 2**-k, truncated at t_max."""
    scale = 2.0 ** k
    cutoff = max(1, int(math.floor(t_max * scale)))
    pmf = gap_sum_pmf(k, cutoff)
    values = np.arange(pmf.offset, pmf.offset + len(pmf.mass)) / scale
    return values, pmf.mass


def scaled_gap_sum_cdf(n: int, k: int, grid) -> np.ndarray:
    """CDF of the gap sum rescaled by 2**-k, evaluated at the grid points.

    The variable is (n/2**k) * (gap sum)/n = (gap sum)/2**k, so the CDF at t
    is Pr[sum <= floor(t * 2**k)].
    """
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or np.any(np.diff(grid) < 0):
        raise ValueError("grid must be a sorted 1-d sequence")
    if np.any(grid < 0):
        raise ValueError("grid points must be nonnegative")
    scale = 2.0 ** k
    cutoff = int(math.floor(float(grid[-1]) * scale)) if grid.size else 0
    pmf = gap_sum_pmf(k, max(cutoff, 1))
    full = np.zeros(cutoff + 1)
    full[pmf.offset: pmf.offset + len(pmf.mass)] = pmf.mass
    cum = np.cumsum(full)
    idx = np.floor(grid * scale).astype(np.int64)
    out = np.where(idx < 0, 0.0, cum[np.minimum(idx, cutoff)])
    return out
