#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "ustatboot/error.hpp"
#include "ustatboot/experiments.hpp"
#include "ustatboot/ustat.hpp"

using namespace ustatboot;

namespace {

template <class Fn>
ErrorKind kind_of(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Config;
}

std::vector<double> random_values(RngStream& rng, std::size_t n, double shift = 0.0) {
    std::vector<double> xs(n);
    for (auto& x : xs) x = shift + 3.0 * rng.normal();
    return xs;
}

// Exact E[n U_n(h2)^2] for a stationary finite chain by summing over the
// joint law of every pair of index pairs.
double exact_degenerate_moment(const Matrix& p, const std::vector<double>& pi, const PopulationComponents& pc,
                               std::size_t n) {
    const std::size_t s = pi.size();
    std::vector<Matrix> powers(n, Matrix(s, std::vector<double>(s, 0.0)));
    for (std::size_t i = 0; i < s; ++i) powers[0][i][i] = 1.0;
    for (std::size_t k = 1; k < n; ++k) {
        for (std::size_t i = 0; i < s; ++i) {
            for (std::size_t j = 0; j < s; ++j) {
                double acc = 0.0;
                for (std::size_t m = 0; m < s; ++m) acc += powers[k - 1][i][m] * p[m][j];
                powers[k][i][j] = acc;
            }
        }
    }

    double total = 0.0;
    std::vector<std::size_t> times;
    std::vector<std::size_t> state_of_time;
    for (std::size_t a1 = 0; a1 < n; ++a1) {
        for (std::size_t a2 = a1 + 1; a2 < n; ++a2) {
            for (std::size_t b1 = 0; b1 < n; ++b1) {
                for (std::size_t b2 = b1 + 1; b2 < n; ++b2) {
                    times = {a1, a2, b1, b2};
                    std::sort(times.begin(), times.end());
                    times.erase(std::unique(times.begin(), times.end()), times.end());
                    const std::size_t d = times.size();
                    std::size_t assignments = 1;
                    for (std::size_t i = 0; i < d; ++i) assignments *= s;
                    state_of_time.assign(d, 0);
                    for (std::size_t code = 0; code < assignments; ++code) {
                        std::size_t c = code;
                        for (std::size_t i = 0; i < d; ++i) {
                            state_of_time[i] = c % s;
                            c /= s;
                        }
                        double prob = pi[state_of_time[0]];
                        for (std::size_t i = 1; i < d; ++i) {
                            prob *= powers[times[i] - times[i - 1]][state_of_time[i - 1]][state_of_time[i]];
                        }
                        auto state = [&](std::size_t t) {
                            return state_of_time[static_cast<std::size_t>(
                                std::find(times.begin(), times.end(), t) - times.begin())];
                        };
                        total += prob * pc.h2_at(state(a1), state(a2)) * pc.h2_at(state(b1), state(b2));
                    }
                }
            }
        }
    }
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return static_cast<double>(n) * total / (pairs * pairs);
}

}  // namespace

TEST_CASE("u_statistic: worked examples") {
    CHECK(u_statistic(variance_kernel(), Sample({1.0, 2.0, 3.0})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(u_statistic(variance_kernel(), Sample({4.2, 4.2, 4.2, 4.2})) == 0.0);
    CHECK(u_statistic(indicator_kernel(1.0), Sample({0.0, 0.5, 10.0})) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("u_statistic: errors") {
    CHECK(kind_of([] { (void)u_statistic(variance_kernel(), Sample({1.0})); }) == ErrorKind::InsufficientData);
    CHECK(kind_of([] { (void)u_statistic(variance_kernel(), Sample({1.0, std::nan("")})); }) ==
          ErrorKind::InvalidInput);
    CHECK(kind_of([] { (void)v_statistic(variance_kernel(), Sample(std::vector<double>{})); }) ==
          ErrorKind::InsufficientData);
}

TEST_CASE("v_statistic: worked examples") {
    const Sample s({1.0, 2.0, 3.0});
    CHECK(v_statistic(variance_kernel(), s) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(v_statistic(variance_kernel(), Sample({5.0})) == 0.0);
    const double n = 3.0;
    CHECK(v_statistic(variance_kernel(), s) ==
          doctest::Approx((n - 1.0) / n * u_statistic(variance_kernel(), s)).epsilon(1e-15));
}

TEST_CASE("V = (n-1)/n U + diagonal / n^2 on random data") {
    RngStream rng(5);
    const Kernel k = custom_kernel("smooth", [](double x, double y) { return std::exp(-(x - y) * (x - y)) + x * y; });
    for (int trial = 0; trial < 20; ++trial) {
        const Sample s(random_values(rng, 3 + static_cast<std::size_t>(trial)));
        const double n = static_cast<double>(s.size());
        double diag = 0.0;
        for (double x : s) diag += k(x, x);
        CHECK(v_statistic(k, s) == doctest::Approx((n - 1.0) / n * u_statistic(k, s) + diag / (n * n)).epsilon(1e-12));
    }
}

TEST_CASE("hoeffding_decompose: worked example") {
    const auto parts = hoeffding_decompose(variance_kernel(), Sample({1.0, 2.0, 3.0}));
    CHECK(parts.theta_hat == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(parts.h1_hat.size() == 3);
    CHECK(parts.h1_hat[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(parts.h1_hat[1] == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(parts.h1_hat[2] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(parts.theta_hat + parts.linear + parts.degenerate - 1.0) < 1e-15);

    const auto flat = hoeffding_decompose(variance_kernel(), Sample({2.0, 2.0, 2.0, 2.0}));
    CHECK(flat.theta_hat == 0.0);
    CHECK(flat.linear == 0.0);
    CHECK(flat.degenerate == 0.0);
    for (double g : flat.h1_hat) CHECK(g == 0.0);
}

TEST_CASE("properties on random samples") {
    RngStream rng(99);
    const std::vector<Kernel> kernels{variance_kernel(), indicator_kernel(1.5),
                                      custom_kernel("abs", [](double x, double y) { return std::abs(x - y); })};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + rng.uniform_index(60);
        auto xs = random_values(rng, n, 10.0 * rng.normal());
        const Sample s(xs);
        const Kernel& k = kernels[static_cast<std::size_t>(trial) % kernels.size()];
        const double u = u_statistic(k, s);

        // Permutation invariance.
        for (std::size_t i = n - 1; i > 0; --i) std::swap(xs[i], xs[rng.uniform_index(i + 1)]);
        CHECK(std::abs(u_statistic(k, Sample(xs)) - u) <= 1e-12 * std::max(1.0, std::abs(u)));

        // Exact decomposition and vanishing empirical linear part.
        const auto parts = hoeffding_decompose(k, s);
        CHECK(std::abs(parts.u - u) <= 1e-12 * std::max(1.0, std::abs(u)));
        CHECK(std::abs(u - parts.theta_hat - parts.linear - parts.degenerate) <= 1e-12 * std::max(1.0, std::abs(u)));
        CHECK(std::abs(parts.linear) <= 1e-12 * std::max(1.0, std::abs(u)));

        // The variance kernel reproduces the unbiased sample variance.
        const double mean = [&] {
            double acc = 0.0;
            for (double x : s) acc += x;
            return acc / static_cast<double>(n);
        }();
        double ss = 0.0;
        for (double x : s) ss += (x - mean) * (x - mean);
        const double var = ss / static_cast<double>(n - 1);
        CHECK(u_statistic(variance_kernel(), s) == doctest::Approx(var).epsilon(1e-12));
        CHECK(sample_variance(s.values()) == doctest::Approx(var).epsilon(1e-12));
    }
}

TEST_CASE("degenerate_second_moment: iid baseline is positive and finite") {
    const auto est = degenerate_second_moment(variance_kernel(), ProcessSpec::iid_normal(1.0), 20, 2000, RngStream(1),
                                              population_centering(ProcessSpec::iid_normal(1.0), variance_kernel()));
    CHECK(est.mean > 0.0);
    CHECK(std::isfinite(est.mean));
    // h2(x, y) = -x y for N(0, 1), so E[n U_n(h2)^2] = n / (n (n - 1) / 2) = 2 / (n - 1).
    CHECK(std::abs(est.mean - 2.0 / 19.0) < 4.0 * est.std_error);
}

TEST_CASE("degenerate_second_moment: empirical centring leaves only rounding") {
    const auto est = degenerate_second_moment(variance_kernel(), ProcessSpec::ar1(0.5), 30, 50, RngStream(1), std::nullopt);
    CHECK(est.mean < 1e-20);
}

TEST_CASE("degenerate_second_moment decays with n") {
    const auto process = ProcessSpec::ar1(0.5);
    const auto centering = population_centering(process, variance_kernel());
    const RngStream rng(2718);
    const auto small = degenerate_second_moment(variance_kernel(), process, 50, 2000, rng, centering);
    const auto large = degenerate_second_moment(variance_kernel(), process, 400, 2000, rng, centering);
    CHECK(large.mean < small.mean);
}

TEST_CASE("degenerate_second_moment matches exact enumeration on a two-state chain") {
    const Matrix p{{0.7, 0.3}, {0.4, 0.6}};
    const std::vector<double> pi{4.0 / 7.0, 3.0 / 7.0};
    const auto process = ProcessSpec::discrete_markov(p, pi);
    const Kernel k = variance_kernel();
    const auto pc = population_components(k, DiscreteDistribution({0.0, 1.0}, pi));
    const double exact = exact_degenerate_moment(p, pi, pc, 10);
    const auto est = degenerate_second_moment(k, process, 10, 2000, RngStream(77), centering_from(pc));
    MESSAGE("exact " << exact << " estimate " << est.mean << " +- " << est.std_error);
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);
}

TEST_CASE("degenerate_second_moment is reproducible") {
    const auto process = ProcessSpec::ar1(0.3);
    const auto centering = population_centering(process, indicator_kernel(1.0));
    const auto a = degenerate_second_moment(indicator_kernel(1.0), process, 40, 100, RngStream(8), centering);
    const auto b = degenerate_second_moment(indicator_kernel(1.0), process, 40, 100, RngStream(8), centering);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
}
