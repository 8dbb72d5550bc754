"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -s`` to see the per-criterion
summary lines.  Criterion 5's ratio-band clause is expected to fail: the
measured L1 gap decays like 1/n, far faster than the sqrt(log n)/n**(1/3)
envelope it is normalized by, so the ratio cannot stay in a factor-10 band.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest
from scipy.integrate import quad

from greedystable.cli import compare_one, main
from greedystable.exact_dist import exact_pk, scaled_gap_sum_atoms
from greedystable.greedy_sim import collect_empirical, enumerate_exact
from greedystable.hypo_analytic import (
    euler_constant_C,
    hypo_cdf,
    hypo_density,
    hypo_density_max,
    limit_table,
    log_hypo_density,
)
from greedystable.metrics import StepCDF, w1_distance, w1_geom_exp
from greedystable.prob_core import SeriesConfig

TABLE_THETA0 = {
    -4: 0.000000389680708123307,
    -3: 0.00116084271918975,
    -2: 0.0610996920580558,
    -1: 0.343335642221465,
    0: 0.420730421531672,
    1: 0.153255882765631,
    2: 0.0194547690538043,
    3: 0.000943671851018291,
    4: 0.0000185343323798604,
    5: 0.000000153237063593714,
}


def report(num, label, ok):
    print(f"ACCEPTANCE {num} ({label}): {'PASS' if ok else 'FAIL'}")


def test_criterion_1_limit_table_reproduction():
    t0 = time.perf_counter()
    table = limit_table(0.0)
    elapsed = time.perf_counter() - t0
    rows_ok = all(abs(table.entries[c] - ref) <= 1e-12 for c, ref in TABLE_THETA0.items())
    mean_ok = abs(table.mean_dev - (-0.273947769982407)) <= 1e-10
    spread_ok = abs(table.std_dev - 0.763009254799132) <= 1e-10
    ok = rows_ok and mean_ok and spread_ok and elapsed < 1.0
    report(1, "limit-table reproduction", ok)
    assert rows_ok
    assert mean_ok
    assert spread_ok
    assert elapsed < 1.0


def test_criterion_2_euler_constant():
    exact = Fraction(1)
    for s in range(1, 21):
        exact *= 1 - Fraction(1, 2 ** s)
    value = euler_constant_C()
    near_rational = abs(value - float(exact)) <= 2 * 2.0 ** -20
    stable = abs(euler_constant_C(SeriesConfig(max_terms=60))
                 - euler_constant_C(SeriesConfig(max_terms=64))) <= 1e-14
    ok = near_rational and stable
    report(2, "infinite-product constant", ok)
    assert near_rational
    assert stable


def test_criterion_3_convolution_vs_enumeration():
    t0 = time.perf_counter()
    ok = True
    for n in (1, 2, 3, 4, 5):
        p = exact_pk(n)
        exact = enumerate_exact(n)
        for k in range(len(p)):
            ok &= abs(p[k] - float(exact.get(k, 0))) <= 1e-12
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    report(3, "convolution formula exactness", ok)
    assert ok, f"elapsed={elapsed:.2f}s"


def test_criterion_4_simulators_match_oracle():
    t0 = time.perf_counter()
    trials = 10 ** 6
    failures = []
    for n in (3, 2 ** 8, 2 ** 12):
        p = exact_pk(n)
        k_max = len(p) - 1
        emp = {}
        for method in ("graph", "geometric"):
            pmf = collect_empirical(n, trials, seed=31337, method=method)
            emp[method] = pmf.as_array(k_max)
            se = np.sqrt(np.maximum(p * (1 - p), 1e-12) / trials)
            bad = np.abs(emp[method] - p) > 5 * se + 1e-9
            if bad.any():
                failures.append((n, method, np.nonzero(bad)[0].tolist()))
        se_pair = np.sqrt(np.maximum(p * (1 - p), 1e-12) * 2 / trials)
        bad = np.abs(emp["graph"] - emp["geometric"]) > 5 * se_pair + 1e-9
        if bad.any():
            failures.append((n, "graph-vs-geometric", np.nonzero(bad)[0].tolist()))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 120.0
    report(4, "simulators vs exact distribution", ok)
    assert not failures, failures
    assert elapsed < 120.0


def test_criterion_5_l1_convergence_sweep():
    t0 = time.perf_counter()
    cfg = SeriesConfig()
    results = [compare_one(2 ** e, 0, 0, cfg) for e in range(8, 21, 2)]
    elapsed = time.perf_counter() - t0
    l1 = [r["l1_pk_qk"] for r in results]
    ratios = [r["bound_ratio"] for r in results]
    positive = all(v > 0 for v in l1)
    violations = sum(1 for a, b in zip(l1, l1[1:]) if b >= a)
    soft_violations = sum(1 for a, b in zip(l1, l1[1:]) if b >= 1.1 * a)
    decreasing = soft_violations == 0 and violations <= 1
    band = max(ratios) / min(ratios) < 10.0
    ok = positive and decreasing and band and elapsed < 60.0
    report(5, "L1 convergence sweep", ok)
    assert positive
    assert decreasing, l1
    assert elapsed < 60.0
    # the measured gap decays ~1/n; normalized by the looser sqrt(log n)/n**(1/3)
    # envelope the ratio falls by ~n**(-2/3), so a factor-10 band is unattainable
    assert band, f"bound_ratio span {max(ratios) / min(ratios):.1f}x: {ratios}"


def test_criterion_6_density_integrity():
    t0 = time.perf_counter()
    mass, _ = quad(lambda x: hypo_density(x), 0.0, 40.0, limit=200)
    mean, _ = quad(lambda x: x * hypo_density(x), 0.0, 40.0, limit=200)
    second, _ = quad(lambda x: x * x * hypo_density(x), 0.0, 40.0, limit=200)
    checks = {
        "mass": abs(mass - 1.0) <= 1e-8,
        "origin": abs(hypo_density(0.0)) <= 1e-9,
        "mean": abs(mean - 1.0) <= 1e-8,
        "variance": abs((second - mean * mean) - 1.0 / 3.0) <= 1e-7,
    }
    xs = np.linspace(0.05, 4.0, 20)
    for x in xs:
        val, _ = quad(lambda s: hypo_density(s), 0.0, x, limit=400,
                      epsabs=1e-12, epsrel=1e-12)
        checks[f"cdf@{x:.2f}"] = abs(hypo_cdf(float(x)) - val) <= 1e-9
    for y in (-1.0, 0.0, 1.0):
        x = 2.0 ** -y
        ident = hypo_density(x) * x * math.log(2.0)
        checks[f"logdensity@{y}"] = abs(log_hypo_density(y) - ident) <= 1e-10
    elapsed = time.perf_counter() - t0
    ok = all(checks.values()) and elapsed < 5.0
    report(6, "density integrity", ok)
    assert all(checks.values()), {k: v for k, v in checks.items() if not v}
    assert elapsed < 5.0


def test_criterion_7_wasserstein_scaling():
    t0 = time.perf_counter()
    scaled = [n * w1_geom_exp(0.5, n) for n in (2 ** e for e in range(4, 15))]
    elapsed = time.perf_counter() - t0
    band = max(scaled) / min(scaled) < 4.0
    ok = band and elapsed < 10.0
    report(7, "geometric-vs-exponential W1 scaling", ok)
    assert band, scaled
    assert elapsed < 10.0


def _ks_step_vs_cdf(atoms, masses, cdf, chunk=1 << 18):
    """sup |step CDF - cdf| for a lattice law vs a continuous CDF.

    The supremum of a step-vs-monotone difference is attained at the atoms'
    one-sided limits.
    """
    cum = np.cumsum(masses)
    left = np.concatenate(([0.0], cum[:-1]))
    best = 0.0
    for a in range(0, atoms.size, chunk):
        fv = cdf(atoms[a:a + chunk])
        best = max(best,
                   float(np.max(np.abs(left[a:a + chunk] - fv))),
                   float(np.max(np.abs(cum[a:a + chunk] - fv))))
    return best


def test_criterion_8_ks_scaling():
    t0 = time.perf_counter()
    ks_values = []
    bounds = []
    for e in (10, 12, 14, 16):
        n, k = 2 ** e, e
        atoms, masses = scaled_gap_sum_atoms(k, 40.0)
        keep = masses > 1e-18
        ks = _ks_step_vs_cdf(atoms[keep], masses[keep] / masses[keep].sum(),
                             lambda t: hypo_cdf(t))
        ks_values.append(ks)
        bounds.append(3.0 * math.sqrt(k / 2.0 ** k))
    within = all(v <= b for v, b in zip(ks_values, bounds))
    decreasing = all(b < a for a, b in zip(ks_values, ks_values[1:]))
    # the W1-based envelope, checked at the two cheaper sizes
    fmax = hypo_density_max()
    w1_ok = True
    for e in (10, 12):
        n, k = 2 ** e, e
        atoms, masses = scaled_gap_sum_atoms(k, 40.0)
        step = StepCDF.from_pmf(atoms, masses, mass_floor=1e-18)
        w1 = w1_distance(step, lambda t: hypo_cdf(np.asarray(t)), 0.0, 40.0,
                         resolution=1e-3)
        w1_ok &= ks_values[(e - 10) // 2] <= 2.0 * math.sqrt(fmax * w1) + 1e-6
    elapsed = time.perf_counter() - t0
    ok = within and decreasing and w1_ok and elapsed < 60.0
    report(8, "KS scaling of the rescaled gap sum", ok)
    assert within, list(zip(ks_values, bounds))
    assert decreasing, ks_values
    assert w1_ok
    assert elapsed < 60.0


def test_criterion_9_reproducible_artifacts(tmp_path):
    pairs = []
    for name, args in {
        "simulate": ["simulate", "--n", "50", "--trials", "20000", "--seed", "8"],
        "compare": ["compare", "--n-list", "64", "256", "--trials", "5000", "--seed", "8"],
    }.items():
        a, b = tmp_path / f"{name}_a.csv", tmp_path / f"{name}_b.csv"
        assert main([*args, "--out", str(a)]) == 0
        assert main([*args, "--out", str(b)]) == 0
        pairs.append((name, a.read_bytes() == b.read_bytes()))
    ok = all(same for _, same in pairs)
    report(9, "byte-identical reruns", ok)
    assert ok, pairs
