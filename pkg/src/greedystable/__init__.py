"""Greedy stable-set heuristic on G(n,1/2): simulation, exact size law, and its hypoexponential limit."""

__version__ = "0.1.0"

from .exact_dist import DiscretePMF, convolve_geometric, exact_pk, scaled_gap_sum_cdf
from .greedy_sim import (
    EmpiricalPMF,
    RunRecord,
    collect_empirical,
    enumerate_exact,
    greedy_run_geometric,
    greedy_run_graph,
)
from .hypo_analytic import (
    LimitTable,
    euler_constant_C,
    hypo_cdf,
    hypo_density,
    limit_table,
    log_hypo_density,
    q_k,
)
from .metrics import DistanceReport, StepCDF, ks_distance, l1_discrete, w1_distance, w1_geom_exp
from .prob_core import (
    RngStream,
    SeriesConfig,
    sample_exponential,
    sample_geometric,
    sample_hypo,
)

__all__ = [
    "DiscretePMF",
    "DistanceReport",
    "EmpiricalPMF",
    "LimitTable",
    "RngStream",
    "RunRecord",
    "SeriesConfig",
    "StepCDF",
    "collect_empirical",
    "convolve_geometric",
    "enumerate_exact",
    "euler_constant_C",
    "exact_pk",
    "greedy_run_geometric",
    "greedy_run_graph",
    "scaled_gap_sum_cdf",
    "hypo_cdf",
    "hypo_density",
    "ks_distance",
    "l1_discrete",
    "limit_table",
    "log_hypo_density",
    "q_k",
    "sample_exponential",
    "sample_geometric",
    "sample_hypo",
    "w1_distance",
    "w1_geom_exp",
]
