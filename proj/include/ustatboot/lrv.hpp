#pragma once

#include <cstddef>

#include "ustatboot/sample.hpp"

namespace ustatboot {

enum class LrvEstimator { TruncatedSum, DeltaMethod };

struct LrvEstimate {
    double value = 0.0;
    std::size_t lag_cutoff = 0;
    LrvEstimator estimator = LrvEstimator::TruncatedSum;
    bool floored = false;  // raw estimate was negative and was set to 0
};

/// gamma_k = (1/n) sum_{i < n-k} (Y_i - Ybar)(Y_{i+k} - Ybar); requires k < n.
[[nodiscard]] double autocovariance(const Sample& series, std::size_t k);

/// gamma_0 + 2 sum_{k=1}^{L} gamma_k, floored at zero; requires L < n.
[[nodiscard]] LrvEstimate lrv_truncated(const Sample& series, std::size_t lag_cutoff);

/**
 * Delta-method variance of the sample variance, with the covariance matrix
 * of (mean X, mean X^2) estimated from autocovariances up to lag L:
 *
 *   1/(n-1)^2 * [ S(X^2 - m2, X^2 - m2) - 4 Xbar S(X^2 - m2, X - Xbar)
 *                 + 4 Xbar^2 S(X - Xbar, X - Xbar) ]
 *
 * where S(a, b) = sum over |i - j| <= L of a_i b_j. Floored at zero.
 * The O(nL) evaluation sums by lag.
 */
[[nodiscard]] LrvEstimate delta_method_var_hat(const Sample& s, std::size_t lag_cutoff);

/// Standard normal distribution function.
[[nodiscard]] double normal_cdf(double x) noexcept;

}  // namespace ustatboot
