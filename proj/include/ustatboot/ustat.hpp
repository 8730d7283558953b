#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ustatboot/kernels.hpp"
#include "ustatboot/procgen.hpp"
#include "ustatboot/rng.hpp"
#include "ustatboot/sample.hpp"

namespace ustatboot {

/// Empirical Hoeffding decomposition, centred at theta_hat = U_n(h).
///   h1_hat[i]  = (1 / (n - 1)) sum_{j != i} h(X_i, X_j) - theta_hat
///   linear     = (2 / n) sum_i h1_hat[i]
///   degenerate = U_n(h2_hat), h2_hat(x_i, x_j) = h - h1_hat[i] - h1_hat[j] - theta_hat
struct HoeffdingParts {
    double u = 0.0;
    double theta_hat = 0.0;
    std::vector<double> h1_hat;
    double linear = 0.0;
    double degenerate = 0.0;
};

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t reps = 0;
};

/// Mean of h over all unordered pairs i < j. Requires n >= 2.
[[nodiscard]] double u_statistic(const Kernel& k, const Sample& s);

/// Mean of h over all n^2 ordered pairs, diagonal included. Requires n >= 1.
[[nodiscard]] double v_statistic(const Kernel& k, const Sample& s);

[[nodiscard]] HoeffdingParts hoeffding_decompose(const Kernel& k, const Sample& s);

/// Unbiased sample variance in one pass over the data. Equals u_statistic
/// with the variance kernel up to rounding.
[[nodiscard]] double sample_variance(std::span<const double> xs);

/// U_n(h2) with h2 formed from a population centering model.
[[nodiscard]] double degenerate_u_statistic(const Kernel& k, const Sample& s,
                                            const CenteringModel& centering);

/**
 * Monte Carlo estimate of E[n U_n(h2)^2] over `reps` simulated series of
 * length n. Replication r draws its series from rng.child(r).
 *
 * With a population centering model h2 is the population degenerate kernel.
 * Without one the empirical decomposition is used; centred at U_n(h), that
 * remainder vanishes identically and the estimate is pure rounding noise.
 */
[[nodiscard]] MonteCarloEstimate degenerate_second_moment(
    const Kernel& k, const ProcessSpec& process, std::size_t n, std::size_t reps,
    const RngStream& rng, const std::optional<CenteringModel>& centering);

namespace detail {
// Unchecked span variants for already validated data.
double u_statistic(const Kernel& k, std::span<const double> xs);
double v_statistic(const Kernel& k, std::span<const double> xs);
}  // namespace detail

}  // namespace ustatboot
