"""Simulation of the greedy stable-set heuristic on G(n,1/2).

Three routes are provided: a lazy graph scan that flips adjacency coins only
when the algorithm would inspect them, an equivalent process that jumps
between accepted vertices with geometric increments, and exhaustive rational
enumeration for tiny n (the oracle the other two are validated against).
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .prob_core import RngStream, geometric_from_uniform, sample_geometric

__all__ = [
    "RunRecord",
    "EmpiricalPMF",
    "greedy_run_graph",
    "greedy_run_geometric",
    "enumerate_exact",
    "collect_empirical",
]

ENUMERATION_LIMIT = 5


@dataclass
class RunRecord:
    """One greedy execution: stable-set size plus optional survivor counts.

    ``survivors[k]`` is the number of not-yet-scanned vertices non-adjacent
    to the first k selected vertices (``survivors[0] == n``).
    """

    n: int
    seed: int
    stream_id: int
    bk: int
    survivors: list[int] | None = None


@dataclass
class EmpiricalPMF:
    """Empirical size distribution aggregated over independent trials."""

    n: int
    trials: int
    counts: dict[int, int]

    def frequencies(self) -> dict[int, float]:
        return {k: c / self.trials for k, c in sorted(self.counts.items())}

    def as_array(self, k_max: int) -> np.ndarray:
        """Frequencies on k = 0..k_max; counts beyond k_max are dropped."""
        out = np.zeros(k_max + 1)
        for k, c in self.counts.items():
            if k <= k_max:
                out[k] = c / self.trials
        return out


def greedy_run_graph(n: int, stream: RngStream, record_survivors: bool = False) -> RunRecord:
    """Scan the vertices of a lazily sampled G(n,1/2) graph in order.

    A vertex joins the stable set iff every adjacency coin against the
    current members is 0.  Coins are flipped member-major: when a vertex is
    accepted, one coin is drawn against each later vertex still compatible
    with all previous members.  Each vertex pair is examined at most once,
    so the output law matches the plain vertex-major scan.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    gen = stream.generator
    compat = np.ones(n, dtype=bool)
    survivors = [n]
    bk = 0
    for v in range(n):
        if not compat[v]:
            continue
        bk += 1
        later = np.nonzero(compat[v + 1:])[0]
        if later.size:
            bits = gen.integers(0, 2, size=later.size)
            knocked = later[bits == 1] + v + 1
            compat[knocked] = False
        survivors.append(int(compat[v + 1:].sum()))
    return RunRecord(n=n, seed=stream.seed, stream_id=stream.stream_id, bk=bk,
                     survivors=survivors if record_survivors else None)


def _round_cap(n: int) -> int:
    # beyond ~2 log2 n the acceptance probability has underflowed double precision
    return math.ceil(2 * math.log2(max(n, 2))) + 64


def greedy_run_geometric(n: int, stream: RngStream) -> RunRecord:
    """Jump between accepted vertices: the gap after the k-th acceptance is Geom(2**-k).

    The size is the largest k whose cumulative position stays within n.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    pos = 0
    k = 0
    cap = _round_cap(n)
    while k < cap:
        pos += sample_geometric(2.0 ** -k, stream)
        if pos > n:
            break
        k += 1
    return RunRecord(n=n, seed=stream.seed, stream_id=stream.stream_id, bk=k)


def enumerate_exact(n: int) -> dict[int, Fraction]:
    """Exact size distribution by enumerating every graph and scan order.

    Rational arithmetic throughout; restricted to n <= 5 because the cost is
    2**C(n,2) * n! greedy runs.
    """
    if not 1 <= n <= ENUMERATION_LIMIT:
        raise ValueError(f"enumeration supports 1 <= n <= {ENUMERATION_LIMIT}, got {n}")
    pairs = list(itertools.combinations(range(n), 2))
    counts: Counter[int] = Counter()
    for gmask in range(1 << len(pairs)):
        adj = [0] * n
        for e, (i, j) in enumerate(pairs):
            if gmask >> e & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        for order in itertools.permutations(range(n)):
            chosen = 0
            bk = 0
            for v in order:
                if adj[v] & chosen == 0:
                    chosen |= 1 << v
                    bk += 1
            counts[bk] += 1
    total = (1 << len(pairs)) * math.factorial(n)
    return {k: Fraction(c, total) for k, c in sorted(counts.items())}


def _batch_graph(n: int, trials: int, gen: np.random.Generator) -> np.ndarray:
    """Vectorized graph scan over trials: one 63-bit word per (vertex, trial).

    The low k bits of the word are the adjacency coins against the k current
    members; the vertex joins iff they are all zero.  k is capped at 62 when
    masking, which over-accepts with probability < 2**-62 per vertex.
    """
    k = np.zeros(trials, dtype=np.uint64)
    one = np.uint64(1)
    cap = np.uint64(62)
    for _ in range(n):
        words = gen.integers(0, 1 << 63, size=trials, dtype=np.uint64)
        mask = (one << np.minimum(k, cap)) - one
        k += (words & mask) == 0
    return k.astype(np.int64)


def _batch_geometric(n: int, trials: int, gen: np.random.Generator) -> np.ndarray:
    """Vectorized geometric-increment process over trials."""
    pos = np.ones(trials, dtype=np.int64)
    bk = np.zeros(trials, dtype=np.int64)
    alive = pos <= n
    k = 1
    cap = _round_cap(n)
    while alive.any() and k <= cap:
        bk[alive] = k
        u = 1.0 - gen.random(int(alive.sum()))
        pos[alive] += geometric_from_uniform(u, 2.0 ** -k)
        alive &= pos <= n
        k += 1
    return bk


_METHODS = {"graph": (_batch_graph, 0), "geometric": (_batch_geometric, 1)}


def collect_empirical(n: int, trials: int, seed: int, method: str = "graph") -> EmpiricalPMF:
    """Aggregate the empirical size pmf over independent trials.

    Trials are vectorized in one batch drawing from a substream derived from
    (seed, n, method), so results are deterministic given the seed and
    independent across (n, method) combinations.
    """
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    try:
        kernel, code = _METHODS[method]
    except KeyError:
        raise ValueError(f"method must be one of {sorted(_METHODS)}, got {method!r}") from None
    stream = RngStream(seed, stream_id=(n << 1) | code)
    sizes = kernel(n, trials, stream.generator)
    counts = Counter(sizes.tolist())
    return EmpiricalPMF(n=n, trials=trials, counts=dict(counts))
