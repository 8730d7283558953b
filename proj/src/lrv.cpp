#include "ustatboot/lrv.hpp"

#include <cmath>
#include <span>
#include <vector>

#include "ustatboot/error.hpp"
#include "ustatboot/summation.hpp"

namespace ustatboot {

namespace {

void check_lag(std::size_t lag, std::size_t n) {
    if (lag >= n) {
        fail(ErrorKind::InvalidLag, "lag " + std::to_string(lag) + " must be below n = " + std::to_string(n));
    }
}

// sum over |i - j| <= L of a_i b_j
double banded_cross_sum(std::span<const double> a, std::span<const double> b, std::size_t lag_cutoff) {
    const std::size_t n = a.size();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    for (std::size_t k = 1; k <= lag_cutoff; ++k) {
        double lag = 0.0;
        for (std::size_t i = 0; i + k < n; ++i) lag += a[i] * b[i + k] + a[i + k] * b[i];
        acc += lag;
    }
    return acc.value();
}

}  // namespace

double autocovariance(const Sample& series, std::size_t k) {
    const std::size_t n = series.size();
    check_lag(k, n);
    const double mean = compensated_mean(series.values());
    CompensatedSum acc;
    for (std::size_t i = 0; i + k < n; ++i) acc += (series[i] - mean) * (series[i + k] - mean);
    return acc.value() / static_cast<double>(n);
}

LrvEstimate lrv_truncated(const Sample& series, std::size_t lag_cutoff) {
    check_lag(lag_cutoff, series.size());
    CompensatedSum acc;
    acc += autocovariance(series, 0);
    for (std::size_t k = 1; k <= lag_cutoff; ++k) acc += 2.0 * autocovariance(series, k);
    LrvEstimate est{acc.value(), lag_cutoff, LrvEstimator::TruncatedSum, false};
    if (est.value < 0.0) {
        est.value = 0.0;
        est.floored = true;
    }
    return est;
}

LrvEstimate delta_method_var_hat(const Sample& s, std::size_t lag_cutoff) {
    const std::size_t n = s.size();
    check_lag(lag_cutoff, n);
    if (n < 2) fail(ErrorKind::InsufficientData, "delta-method variance needs n >= 2");

    const double mean = compensated_mean(s.values());
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) sq[i] = s[i] * s[i];
    const double mean_sq = compensated_mean(sq);

    std::vector<double> dx(n);
    std::vector<double> dsq(n);
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = s[i] - mean;
        dsq[i] = sq[i] - mean_sq;
    }

    const double s_qq = banded_cross_sum(dsq, dsq, lag_cutoff);
    const double s_qx = banded_cross_sum(dsq, dx, lag_cutoff);
    const double s_xx = banded_cross_sum(dx, dx, lag_cutoff);
    const double nm1 = static_cast<double>(n - 1);
    const double value = (s_qq - 4.0 * mean * s_qx + 4.0 * mean * mean * s_xx) / (nm1 * nm1);

    LrvEstimate est{value, lag_cutoff, LrvEstimator::DeltaMethod, false};
    if (est.value < 0.0) {
        est.value = 0.0;
        est.floored = true;
    }
    return est;
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace ustatboot
