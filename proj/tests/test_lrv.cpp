#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "ustatboot/error.hpp"
#include "ustatboot/lrv.hpp"
#include "ustatboot/procgen.hpp"

using namespace ustatboot;

namespace {

// Literal double loop over |i - j| <= L.
double delta_method_oracle(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    double m1 = 0.0, m2 = 0.0;
    for (double v : x) {
        m1 += v;
        m2 += v * v;
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    double a = 0.0, b = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap > lag) continue;
            a += (x[i] * x[i] - m2) * (x[j] * x[j] - m2);
            b += (x[i] * x[i] - m2) * (x[j] - m1);
            c += (x[i] - m1) * (x[j] - m1);
        }
    }
    const double nm1 = static_cast<double>(n - 1);
    return std::max(0.0, (a - 4.0 * m1 * b + 4.0 * m1 * m1 * c) / (nm1 * nm1));
}

double lrv_oracle(const std::vector<double>& x, std::size_t lag) {
    const std::size_t n = x.size();
    double m = 0.0;
    for (double v : x) m += v;
    m /= static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t gap = i > j ? i - j : j - i;
            if (gap <= lag) acc += (x[i] - m) * (x[j] - m);
        }
    }
    return std::max(0.0, acc / static_cast<double>(n));
}

}  // namespace

TEST_CASE("autocovariance") {
    CHECK(autocovariance(Sample({1.0, 2.0, 3.0}), 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    for (std::size_t k = 0; k < 4; ++k) CHECK(autocovariance(Sample({5.0, 5.0, 5.0, 5.0}), k) == 0.0);
    // k = n - 1: (1 - 2)(3 - 2) / 3
    CHECK(autocovariance(Sample({1.0, 2.0, 3.0}), 2) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    try {
        (void)autocovariance(Sample({1.0, 2.0, 3.0}), 3);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::InvalidLag);
    }
}

TEST_CASE("lrv_truncated") {
    const Sample s({1.0, 4.0, 2.0, 2.5, 7.0});
    CHECK(lrv_truncated(s, 0).value == autocovariance(s, 0));

    RngStream rng(17);
    const Sample iid = simulate_iid_normal(5000, 1.0, rng);
    CHECK(lrv_truncated(iid, 8).value == doctest::Approx(1.0).epsilon(0.10));

    // sigma^2 / (1 - phi)^2 = 4
    const Sample ar = simulate_ar1(5000, 0.5, 1.0, rng);
    CHECK(lrv_truncated(ar, 20).value == doctest::Approx(4.0).epsilon(0.10));

    CHECK_THROWS_AS((void)lrv_truncated(s, 5), Error);
}

TEST_CASE("lrv_truncated equals the double-loop definition") {
    RngStream rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 5 + rng.uniform_index(80);
        const Sample s = simulate_ar1(n, 0.6 * rng.uniform01(), 1.0, rng);
        const std::size_t lag = rng.uniform_index(n);
        const auto est = lrv_truncated(s, lag);
        CHECK(est.value >= 0.0);
        CHECK(std::abs(est.value - lrv_oracle(s.vector(), lag)) <= 1e-12 * std::max(1.0, est.value));
    }
}

TEST_CASE("delta_method_var_hat") {
    CHECK(delta_method_var_hat(Sample({3.0, 3.0, 3.0, 3.0}), 1).value == 0.0);
    // [0, 1, 2], L = 0: m1 = 1, m2 = 5/3, diagonal sums a = 26/3, b = 4, c = 2,
    // so (26/3 - 16 + 8) / 4 = 1/6.
    CHECK(delta_method_var_hat(Sample({0.0, 1.0, 2.0}), 0).value == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK(delta_method_oracle({0.0, 1.0, 2.0}, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)delta_method_var_hat(Sample({0.0, 1.0, 2.0}), 3), Error);
}

TEST_CASE("delta_method_var_hat equals the naive double loop") {
    RngStream rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + rng.uniform_index(120);
        auto xs = simulate_ar1(n, 0.5, 1.0, rng).vector();
        for (auto& x : xs) x += 2.0;  // non-zero mean exercises the cross terms
        const std::size_t lag = rng.uniform_index(std::min<std::size_t>(n, 12));
        const double fast = delta_method_var_hat(Sample(xs), lag).value;
        const double slow = delta_method_oracle(xs, lag);
        CHECK(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)));
    }
}

TEST_CASE("n times delta-method variance approaches 4 sigma_inf^2 for AR(1)") {
    RngStream rng(44);
    const double target = 160.0 / 27.0;
    std::vector<double> estimates;
    for (int r = 0; r < 40; ++r) {
        const Sample s = simulate_ar1(500, 0.5, 1.0, rng);
        estimates.push_back(500.0 * delta_method_var_hat(s, 8).value);
    }
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(estimates.size());
    CHECK(mean == doctest::Approx(target).epsilon(0.25));
}

TEST_CASE("normal_cdf") {
    CHECK(normal_cdf(0.0) == 0.5);
    for (double x = 0.0; x < 8.0; x += 0.173) CHECK(std::abs(normal_cdf(-x) - (1.0 - normal_cdf(x))) <= 1e-12);
    CHECK(std::abs(normal_cdf(1.959963985) - 0.975) <= 1e-9);
    double previous = 0.0;
    for (int i = 0; i <= 10000; ++i) {
        const double v = normal_cdf(-10.0 + 20.0 * i / 10000.0);
        CHECK(v >= previous);
        previous = v;
    }
}
