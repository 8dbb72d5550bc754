"""Seeded sampling primitives: geometric, exponential, and truncated hypoexponential draws.

All randomness flows through :class:`RngStream`, which is keyed by a 64-bit
seed plus a substream index, so every stochastic result in the package is
reproducible from a single seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "RngStream",
    "SeriesConfig",
    "geometric_from_uniform",
    "exponential_from_uniform",
    "sample_geometric",
    "sample_exponential",
    "sample_hypo",
    "hypo_truncation_depth",
]


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation controls shared by all series, products, and truncated sums.

    Evaluation stops at the first term below ``abs_tol`` in absolute value,
    or after ``max_terms`` terms, whichever comes first.
    """

    max_terms: int = 64
    abs_tol: float = 1e-15

    def __post_init__(self) -> None:
        if self.max_terms < 1:
            raise ValueError(f"max_terms must be positive, got {self.max_terms}")
        if not (self.abs_tol >= 0):
            raise ValueError(f"abs_tol must be >= 0, got {self.abs_tol}")


DEFAULT_SERIES = SeriesConfig()


class RngStream:
    """Deterministic substream of uniform randomness.

    Two streams constructed with the same ``(seed, stream_id)`` produce
    bit-identical variate sequences; distinct ``stream_id`` values give
    statistically independent-looking sequences (PCG64 seeded through
    ``SeedSequence``).
    """

    __slots__ = ("seed", "stream_id", "_gen")

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        ss = np.random.SeedSequence((self.seed & 0xFFFFFFFFFFFFFFFF,
                                     self.stream_id & 0xFFFFFFFFFFFFFFFF))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    @property
    def generator(self) -> np.random.Generator:
        return self._gen

    def uniform_open(self, size=None):
        """Uniform draws on (0, 1]; safe to pass to log."""
        return 1.0 - self._gen.random(size)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_id={self.stream_id})"


def geometric_from_uniform(u, p: float):
    """Invert a uniform draw u in (0,1] into a Geom(p) variate on {1,2,...}.

    Uses ceil(log(u)/log1p(-p)); log1p keeps the denominator accurate for
    p as small as 2**-60.
    """
    if not (0.0 < p <= 1.0):
        raise ValueError(f"geometric success probability must be in (0,1], got {p}")
    u = np.asarray(u, dtype=float)
    if p == 1.0:
        out = np.ones_like(u)
    else:
        out = np.ceil(np.log(u) / math.log1p(-p))
        out = np.maximum(out, 1.0)
    if out.ndim == 0:
        return int(out)
    return out.astype(np.int64)


def exponential_from_uniform(u, rate: float):
    """Invert a uniform draw u in (0,1] into an Exp(rate) variate (mean 1/rate)."""
    if not rate > 0:
        raise ValueError(f"exponential rate must be positive, got {rate}")
    u = np.asarray(u, dtype=float)
    out = -np.log(u) / rate
    if out.ndim == 0:
        return float(out)
    return out


def sample_geometric(p: float, stream: RngStream, size=None):
    """Draw Geom(p) variates, Pr[X = t] = p(1-p)**(t-1) on {1,2,...}."""
    return geometric_from_uniform(stream.uniform_open(size), p)


def sample_exponential(rate: float, stream: RngStream, size=None):
    """Draw Exp(rate) variates with mean 1/rate."""
    return exponential_from_uniform(stream.uniform_open(size), rate)


def hypo_truncation_depth(cfg: SeriesConfig = DEFAULT_SERIES) -> int:
    """Number of exponential phases kept when sampling the hypoexponential limit.

    The omitted tail has mean 2**(1-L), so L is the smallest depth with
    2**(1-L) < cfg.abs_tol, capped at cfg.max_terms.
    """
    if cfg.abs_tol > 0:
        needed = math.ceil(1 - math.log2(cfg.abs_tol))
        return max(1, min(needed, cfg.max_terms))
    return cfg.max_terms


def sample_hypo(cfg: SeriesConfig = DEFAULT_SERIES, stream: RngStream = None, size=None):
    """Draw from the truncated hypoexponential sum Exp(2) + Exp(4) + ... + Exp(2**L).

    Truncation bias is at most the omitted tail mean 2**(1-L); see
    :func:`hypo_truncation_depth`.
    """
    if stream is None:
        raise ValueError("an RngStream is required")
    depth = hypo_truncation_depth(cfg)
    shape = (depth,) if size is None else (depth,) + tuple(np.atleast_1d(size))
    u = stream.uniform_open(shape)
    rates = 2.0 ** np.arange(1, depth + 1)
    draws = -np.log(u) / rates.reshape((depth,) + (1,) * (u.ndim - 1))
    total = draws.sum(axis=0)
    if size is None:
        return float(total)
    return total
