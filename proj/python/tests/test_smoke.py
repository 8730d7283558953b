import math

import pytest

import ustatboot as ub


def test_variance_kernel_matches_sample_variance():
    xs = [1.0, 4.0, 2.0, 8.0, 5.0]
    mean = sum(xs) / len(xs)
    expected = sum((x - mean) ** 2 for x in xs) / (len(xs) - 1)
    assert ub.u_statistic(ub.variance_kernel(), xs) == pytest.approx(expected, rel=1e-12)


def test_hoeffding_parts_add_up():
    xs = [0.3, -1.2, 2.5, 0.7, 1.1, -0.4]
    parts = ub.hoeffding_decompose(ub.indicator_kernel(1.0), xs)
    assert parts.theta_hat + parts.linear + parts.degenerate == pytest.approx(parts.u, abs=1e-12)


def test_rng_is_reproducible():
    a = ub.RngStream(7, [1, 2])
    b = ub.RngStream(7, [1, 2])
    assert [a.uniform01() for _ in range(5)] == [b.uniform01() for _ in range(5)]


def test_bootstrap_and_exact_center():
    rng = ub.RngStream(3)
    xs = ub.simulate_ar1(60, 0.5, 1.0, rng.child(1))
    k = ub.variance_kernel()
    dist = ub.bootstrap_distribution(k, xs, ub.BlockKind.circular, 4, 200, rng.child(2), ub.CenterMode.exact)
    assert len(dist.replicates) == 200
    assert dist.variance() > 0
    exact = ub.exact_bootstrap_expectation(k, xs, 1)
    assert exact == pytest.approx(ub.v_statistic(k, xs), rel=1e-12)


def test_lrv_and_ks():
    assert ub.normal_cdf(0.0) == pytest.approx(0.5)
    assert ub.ks_distance([0.0], [1.0]) == 1.0
    assert ub.ks_distance_vs_normal([0.0], 1.0) == pytest.approx(0.5)
    assert ub.autocovariance([1.0, 2.0, 3.0], 2) == pytest.approx(-1.0 / 3.0)
    assert ub.delta_method_var_hat([0.0, 1.0, 2.0], 0) == pytest.approx(1.0 / 6.0)


def test_oracle_and_cell():
    theta, clt = ub.ar1_variance_oracle(0.5, 1.0)
    assert theta == pytest.approx(4.0 / 3.0)
    assert clt == pytest.approx(160.0 / 27.0)
    cell = ub.run_cell(24, 3, 5, 100, 200, ub.BlockKind.circular, 0.5, 1)
    assert 0.0 <= cell.mean_d_boot <= 1.0
    assert 0.0 <= cell.mean_d_norm <= 1.0


def test_block_selection():
    xs = ub.simulate_ar1(200, 0.5, 1.0, ub.RngStream(5))
    res = ub.select_block_length(xs, ub.variance_kernel(), 3, 40, 0.25, 20, ub.RngStream(6))
    assert 1 <= res.l_hat <= 200


def test_errors_map_to_value_error():
    with pytest.raises(ValueError, match="invalid-block-length"):
        ub.bootstrap_distribution(ub.variance_kernel(), [1.0, 2.0, 3.0], ub.BlockKind.circular, 5, 10,
                                  ub.RngStream(1), ub.CenterMode.exact)
    with pytest.raises(ub.Error):
        ub.indicator_kernel(-1.0)
    with pytest.raises(ValueError):
        ub.u_statistic(ub.variance_kernel(), [1.0, math.nan])
