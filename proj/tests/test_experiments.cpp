#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ustatboot/error.hpp"
#include "ustatboot/experiments.hpp"
#include "ustatboot/lrv.hpp"

using namespace ustatboot;

namespace {

double mean_of(const std::vector<double>& v) {
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double acc = 0.0;
    for (double x : v) acc += (x - m) * (x - m);
    return acc / static_cast<double>(v.size() - 1);
}

// Brute-force sup over a fine grid plus both sides of every data point.
double ks_grid_oracle(const Ecdf& a, const Ecdf& b) {
    std::vector<double> probes;
    for (const auto* e : {&a, &b}) {
        for (double x : e->sorted_values()) {
            probes.push_back(x);
            probes.push_back(std::nextafter(x, -INFINITY));
        }
    }
    double sup = 0.0;
    for (double x : probes) sup = std::max(sup, std::abs(a(x) - b(x)));
    return sup;
}

}  // namespace

TEST_CASE("Ecdf") {
    const Ecdf e({3.0, 1.0, 2.0, 2.0});
    CHECK(e.n_points() == 4);
    CHECK(e(0.5) == 0.0);
    CHECK(e(2.0) == 0.75);
    CHECK(e.left_limit(2.0) == 0.25);
    CHECK(e(3.0) == 1.0);
    CHECK_THROWS_AS(Ecdf(std::vector<double>{}), Error);
}

TEST_CASE("ks_distance") {
    CHECK(ks_distance(Ecdf({1.0, 2.0, 3.0}), Ecdf({3.0, 2.0, 1.0})) == 0.0);
    CHECK(ks_distance(Ecdf({0.0}), Ecdf({1.0})) == 1.0);
    CHECK(ks_distance(Ecdf({0.0, 1.0}), Ecdf({0.5})) == 0.5);

    RngStream rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> a(1 + rng.uniform_index(30));
        std::vector<double> b(1 + rng.uniform_index(30));
        // Coarse values force ties inside and across the samples.
        for (auto& x : a) x = static_cast<double>(rng.uniform_index(8));
        for (auto& x : b) x = static_cast<double>(rng.uniform_index(8)) + (trial % 2 ? 0.5 : 0.0);
        const Ecdf ea(a), eb(b);
        const double d = ks_distance(ea, eb);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
        CHECK(d == doctest::Approx(ks_grid_oracle(ea, eb)).epsilon(1e-15));
        CHECK(d == ks_distance(eb, ea));
    }
}

TEST_CASE("ks_distance_vs_normal") {
    CHECK(ks_distance_vs_normal(Ecdf({0.0}), 1.0) == doctest::Approx(0.5).epsilon(1e-15));

    RngStream rng(10);
    std::vector<double> z(1000000);
    for (auto& x : z) x = rng.normal();
    CHECK(ks_distance_vs_normal(Ecdf(z), 1.0) < 0.005);

    const double d = ks_distance_vs_normal(Ecdf({-100.0, 100.0, 3.0}), 0.01);
    CHECK(d >= 0.0);
    CHECK(d <= 1.0);
    try {
        (void)ks_distance_vs_normal(Ecdf({0.0}), 0.0);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidScale);
    }
}

TEST_CASE("boxplot_summary") {
    const std::vector<double> five{1, 2, 3, 4, 5};
    const auto s = boxplot_summary(five);
    CHECK(s.median == 3.0);
    CHECK(s.q1 == 2.0);
    CHECK(s.q3 == 4.0);
    CHECK(s.outliers.empty());
    CHECK(s.lower_whisker == 1.0);
    CHECK(s.upper_whisker == 5.0);
    CHECK(s.mean == 3.0);

    const std::vector<double> flat(10, 0.3);
    const auto f = boxplot_summary(flat);
    CHECK(f.q3 - f.q1 == 0.0);
    CHECK(f.outliers.empty());

    std::vector<double> spiky;
    for (int i = 0; i <= 20; ++i) spiky.push_back(i / 20.0);
    spiky.push_back(100.0);
    CHECK(boxplot_summary(spiky).outliers.size() == 1);

    CHECK_THROWS_AS((void)boxplot_summary(std::vector<double>{}), Error);
}

TEST_CASE("AR(1) oracles") {
    const auto o = oracles_for(ProcessSpec::ar1(0.5, 1.0), variance_kernel());
    CHECK(o.theta_true == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    REQUIRE(o.clt_var.has_value());
    CHECK(*o.clt_var == doctest::Approx(160.0 / 27.0).epsilon(1e-14));

    const auto iid = oracles_for(ProcessSpec::iid_normal(2.0), variance_kernel());
    CHECK(iid.theta_true == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(*iid.clt_var == doctest::Approx(32.0).epsilon(1e-14));

    CHECK_FALSE(oracles_for(ProcessSpec::ar1(0.5), indicator_kernel(1.0)).clt_var.has_value());
}

TEST_CASE("CLT variance oracle confirmed by simulation at n = 10^4") {
    const auto process = ProcessSpec::ar1(0.5, 1.0);
    const Ecdf draws = reference_distribution(10000, process, variance_kernel(), 4.0 / 3.0, 2000, RngStream(31337));
    const double v = var_of(draws.sorted_values());
    MESSAGE("simulated " << v << " vs 160/27 = " << 160.0 / 27.0);
    // Sampling error of a variance from 2000 near-normal draws is about 3%.
    CHECK(v == doctest::Approx(160.0 / 27.0).epsilon(0.10));
}

TEST_CASE("Gaussian centering of the indicator kernel") {
    const Kernel k = indicator_kernel(0.8);
    const auto c = gaussian_centering(k, 0.0, 4.0 / 3.0);
    // theta by simulation
    RngStream rng(6);
    const double sd = std::sqrt(4.0 / 3.0);
    double hits = 0.0;
    const int n = 400000;
    for (int i = 0; i < n; ++i) hits += std::abs(sd * rng.normal() - sd * rng.normal()) < 0.8;
    CHECK(hits / n == doctest::Approx(c.theta).epsilon(0.01));
    // E h1(X) = 0 by trapezoidal quadrature
    double integral = 0.0;
    const double step = 1e-3;
    for (double x = -12.0; x <= 12.0; x += step) {
        const double density = std::exp(-x * x / (2.0 * 4.0 / 3.0)) / std::sqrt(2.0 * M_PI * 4.0 / 3.0);
        integral += c.h1(x) * density * step;
    }
    CHECK(std::abs(integral) < 1e-8);
}

TEST_CASE("two-state chain CLT oracle against simulation") {
    const auto process = ProcessSpec::discrete_markov({{0.7, 0.3}, {0.4, 0.6}}, {4.0 / 7.0, 3.0 / 7.0});
    const auto o = oracles_for(process, variance_kernel());
    REQUIRE(o.clt_var.has_value());
    const Ecdf draws = reference_distribution(2000, process, variance_kernel(), o.theta_true, 2000, RngStream(8));
    CHECK(var_of(draws.sorted_values()) == doctest::Approx(*o.clt_var).epsilon(0.12));
}

TEST_CASE("reference distribution") {
    SUBCASE("constant process gives a point mass") {
        const auto constant = ProcessSpec::discrete_markov({{1.0}}, {1.0});
        const Ecdf e = reference_distribution(16, constant, variance_kernel(), 0.5, 50, RngStream(1));
        for (double v : e.sorted_values()) CHECK(v == doctest::Approx(-4.0 * 0.5).epsilon(1e-15));
    }
    SUBCASE("mean matches the finite-n bias of the sample variance at n = 500") {
        // E s^2 = n / (n - 1) (gamma_0 - Var(mean)), gamma_k = phi^k / (1 - phi^2)
        const std::size_t n = 500;
        const double phi = 0.5;
        const double g0 = 1.0 / (1.0 - phi * phi);
        double var_mean = g0 / n;
        for (std::size_t k = 1; k < n; ++k) var_mean += 2.0 * (n - k) * g0 * std::pow(phi, k) / (double(n) * n);
        const double expected = std::sqrt(double(n)) * (n / (n - 1.0) * (g0 - var_mean) - g0);
        const Ecdf e = reference_distribution(n, ProcessSpec::ar1(phi), variance_kernel(), g0, 4000, RngStream(2));
        const auto& v = e.sorted_values();
        CHECK(std::abs(mean_of(v) - expected) <= 3.0 * std::sqrt(var_of(v) / static_cast<double>(v.size())));
    }
    SUBCASE("variance at n = 2000") {
        const Ecdf e = reference_distribution(2000, ProcessSpec::ar1(0.5), variance_kernel(), 4.0 / 3.0, 4000, RngStream(3));
        CHECK(var_of(e.sorted_values()) == doctest::Approx(160.0 / 27.0).epsilon(0.15));
    }
}

TEST_CASE("run_cell: bounded, reproducible") {
    CellConfig cfg;
    cfg.n = 24;
    cfg.l = 3;
    cfg.reps = 40;
    cfg.boot_reps = 400;
    cfg.ref_reps = 1000;
    const auto a = run_cell(cfg, variance_kernel(), RngStream(1));
    const auto b = run_cell(cfg, variance_kernel(), RngStream(1));
    REQUIRE(a.d_boot.size() == 40);
    for (std::size_t i = 0; i < a.d_boot.size(); ++i) {
        CHECK(a.d_boot[i] >= 0.0);
        CHECK(a.d_boot[i] <= 1.0);
        CHECK(a.d_norm[i] >= 0.0);
        CHECK(a.d_norm[i] <= 1.0);
    }
    CHECK(a.d_boot == b.d_boot);
    CHECK(a.d_norm == b.d_norm);
    CHECK(a.boot_summary.mean == doctest::Approx(mean_of(a.d_boot)).epsilon(1e-14));

    cfg.scheme = BlockKind::Moving;
    const auto m = run_cell(cfg, indicator_kernel(1.0), RngStream(1));
    for (double d : m.d_boot) CHECK((d >= 0.0 && d <= 1.0));
}

TEST_CASE("run_table subset and default block length") {
    CHECK(default_block_length(24) == 3);
    CHECK(default_block_length(48) == 4);
    CHECK(default_block_length(100) == 5);
    CHECK(default_block_length(200) == 6);
    CHECK(default_block_length(500) == 8);

    TableConfig cfg;
    cfg.reps = 10;
    cfg.boot_reps = 200;
    cfg.ref_reps = 500;
    const auto t = run_table(cfg, 1);
    REQUIRE(t.cells.size() == 1);
    CHECK(t.cells[0].n == 24);
    CHECK(t.cells[0].l == 3);
}

TEST_CASE("decay_study is paired and decreasing for AR(1)") {
    const std::vector<std::size_t> ns{50, 400};
    const auto pts = decay_study(variance_kernel(), ProcessSpec::ar1(0.5), ns, 500, RngStream(9));
    REQUIRE(pts.size() == 2);
    CHECK(pts[1].estimate.mean < pts[0].estimate.mean);
}

TEST_CASE("doubling the reference size barely moves the cell means") {
    CellConfig cfg;
    cfg.n = 100;
    cfg.l = 5;
    cfg.reps = 200;
    cfg.boot_reps = 5000;
    cfg.ref_reps = 10000;
    const auto base = run_cell(cfg, variance_kernel(), RngStream(12));
    cfg.ref_reps = 20000;
    const auto doubled = run_cell(cfg, variance_kernel(), RngStream(12));
    CHECK(std::abs(base.boot_summary.mean - doubled.boot_summary.mean) < 0.01);
    CHECK(std::abs(base.norm_summary.mean - doubled.norm_summary.mean) < 0.01);
}
