import numpy as np
import pytest

from greedystable.exact_dist import (
    DiscretePMF,
    convolve_geometric,
    default_k_max,
    exact_pk,
    scaled_gap_sum_cdf,
    size_survival,
)
from greedystable.greedy_sim import enumerate_exact
from greedystable.hypo_analytic import hypo_cdf


def test_convolve_with_unit_geometric_shifts():
    out = convolve_geometric(DiscretePMF.point(1), 1.0, 5)
    assert out.prob(2) == pytest.approx(1.0)
    assert out.overflow == pytest.approx(0.0)


def test_convolve_half_truncation():
    out = convolve_geometric(DiscretePMF.point(1), 0.5, 3)
    assert out.prob(2) == pytest.approx(0.5)
    assert out.prob(3) == pytest.approx(0.25)
    assert out.overflow == pytest.approx(0.25)


def test_convolution_order_irrelevant():
    cutoff = 200
    qs = [0.5, 0.25, 0.125]
    results = []
    for order in ([0, 1, 2], [2, 0, 1], [1, 2, 0]):
        pmf = DiscretePMF.point(0)
        for i in order:
            pmf = convolve_geometric(pmf, qs[i], cutoff)
        full = np.zeros(cutoff + 1)
        full[pmf.offset: pmf.offset + len(pmf.mass)] = pmf.mass
        results.append((full, pmf.overflow))
    for full, overflow in results[1:]:
        assert np.allclose(full, results[0][0], atol=1e-14, rtol=0)
        assert overflow == pytest.approx(results[0][1], abs=1e-14)


def test_convolve_rejects_bad_q():
    with pytest.raises(ValueError):
        convolve_geometric(DiscretePMF.point(0), 0.0, 5)
    with pytest.raises(ValueError):
        convolve_geometric(DiscretePMF.point(0), 1.5, 5)


def test_mass_conservation():
    pmf = DiscretePMF.point(0)
    for j in range(6):
        pmf = convolve_geometric(pmf, 2.0 ** -j, 50)
        assert pmf.total() == pytest.approx(1.0, abs=1e-12)


def test_exact_pk_trivial():
    p = exact_pk(1)
    assert p[1] == pytest.approx(1.0, abs=1e-15)


def test_exact_pk_n2():
    p = exact_pk(2)
    assert p[1] == pytest.approx(0.5, abs=1e-15)
    assert p[2] == pytest.approx(0.5, abs=1e-15)


def test_exact_pk_n3():
    p = exact_pk(3)
    assert p[1] == pytest.approx(0.25, abs=1e-15)
    assert p[2] == pytest.approx(0.625, abs=1e-15)
    assert p[3] == pytest.approx(0.125, abs=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_exact_pk_matches_enumeration(n):
    p = exact_pk(n)
    exact = enumerate_exact(n)
    for k in range(len(p)):
        assert p[k] == pytest.approx(float(exact.get(k, 0)), abs=1e-12)


@pytest.mark.parametrize("n", [2 ** 8, 2 ** 12, 2 ** 20])
def test_exact_pk_sums_to_one(n):
    assert exact_pk(n).sum() == pytest.approx(1.0, abs=1e-10)


def test_survival_phrasings_agree():
    # Geom(1) is identically 1, so including it and shifting the cutoff coincide
    for n in (1, 2, 5, 37, 256):
        for k in (1, 2, 5, 9):
            with_unit = size_survival(n, k, include_unit_gap=True)
            without = size_survival(n, k, include_unit_gap=False)
            assert with_unit == pytest.approx(without, abs=1e-13)


def test_stochastic_monotonicity_in_n():
    ks = [3, 6, 9]
    prev = {k: 0.0 for k in ks}
    for n in [8, 16, 32, 64, 128, 256, 512]:
        p = exact_pk(n)
        for k in ks:
            tail = p[k:].sum()
            assert tail >= prev[k] - 1e-12
            prev[k] = tail


def test_default_k_max_covers_support():
    for n in (4, 256, 2 ** 12):
        p = exact_pk(n, default_k_max(n))
        assert p[-1] < 1e-12


def test_scaled_gap_sum_cdf_endpoints():
    vals = scaled_gap_sum_cdf(2 ** 8, 8, [0.0, 100.0])
    assert vals[0] == pytest.approx(0.0, abs=1e-15)
    assert vals[1] == pytest.approx(1.0, abs=1e-10)


def test_scaled_gap_sum_cdf_monotone():
    grid = np.linspace(0.0, 10.0, 101)
    vals = scaled_gap_sum_cdf(2 ** 10, 10, grid)
    assert np.all(np.diff(vals) >= -1e-15)


def test_scaled_gap_sum_cdf_near_limit():
    # at n = 2**12, k = 12 the scaled CDF at 1 is close to the limiting CDF
    val = scaled_gap_sum_cdf(2 ** 12, 12, [1.0])[0]
    assert abs(val - hypo_cdf(1.0)) < 0.05


def test_scaled_gap_sum_cdf_rejects_bad_grid():
    with pytest.raises(ValueError):
        scaled_gap_sum_cdf(16, 4, [1.0, 0.5])
    with pytest.raises(ValueError):
        scaled_gap_sum_cdf(16, 4, [-1.0, 0.5])
